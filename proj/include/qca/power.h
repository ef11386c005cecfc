// Copyright 2026 The QCA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCA_POWER_H
#define QCA_POWER_H

#include <cstdint>

#include "qca/analysis.h"
#include "qca/four_square.h"
#include "qca/machine.h"

namespace qca {

/// Tuning parameter k of the {a^n b^(2^n)} recognizer together with the
/// integers k1..k4 that complete its end-marker operator.
struct PowerParams {
    std::int64_t k = 1;
    FourSquare ks;  // k1^2 + k2^2 + k3^2 + k4^2 == 4k^2 - 1

    /// Uses the canonical decomposition of 4k^2 - 1.
    static PowerParams make(std::int64_t k);
    /// Any valid decomposition; the order of k1..k4 is (a, b, c, d).
    static PowerParams with(std::int64_t k, FourSquare ks);
};

/// The register is three-dimensional: q1, q2, q3.
inline constexpr std::size_t kPowerDim = 3;

Superoperator power_left_end_op();
Superoperator power_a_op();
Superoperator power_b_op();
Superoperator power_right_end_op(const PowerParams &params);

/// Restarting realtime QCFA for {a^m b^n : n = 2^m, m >= 1}. Each round reads
/// the whole tape left to right while classical states check the a+b+ shape;
/// inputs of any other shape are rejected the first time the violation is
/// read. Undecided rounds finish the sweep silently and restart at $.
MachineSpec build_power(const PowerParams &params);

struct RoundProbabilities {
    Rat p_accept;
    Rat p_reject;
};

/// Exact single-round probabilities for a^m b^n:
///   accept = (1/4)^(m+n+2) / k^2,  reject = (1/4)^(m+n+2) * 2 (2^m - n)^2.
RoundProbabilities round_closed_form(std::uint64_t m, std::uint64_t n, const PowerParams &params);

/// The frequently quoted variant (1/4)^(m+n) / k^2 and (1/4)^(m+n) * 2 (2^m - n)^2.
/// It has the same accept/reject ratio but overstates both values by 16;
/// kept for comparison with published figures.
RoundProbabilities published_round_closed_form(std::uint64_t m, std::uint64_t n, const PowerParams &params);

/// Lower bound on the rejection probability of non-members: 2k^2 / (2k^2 + 1).
Rat error_bound(std::int64_t k);

/// Overall halting behaviour of POWER on a^m b^n.
RestartSolution power_overall(std::uint64_t m, std::uint64_t n, const PowerParams &params);

}  // namespace qca

#endif
