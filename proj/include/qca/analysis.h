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

#ifndef QCA_ANALYSIS_H
#define QCA_ANALYSIS_H

#include <cstddef>
#include <cstdint>
#include <optional>

#include "qca/rat.h"

namespace qca {

/// Halting behaviour of a procedure repeated until it decides.
struct RestartSolution {
    Rat overall_accept;
    Rat overall_reject;
    Rat expected_rounds;
};

/// Given the per-round decision probabilities of a procedure that restarts
/// on every undecided round: overall_accept = p_accept / (p_accept +
/// p_reject), expected_rounds = 1 / (p_accept + p_reject).
RestartSolution solve_restart(const Rat &p_accept, const Rat &p_reject);

/// Exact probabilities of one round (or one pass of a looping machine).
struct RoundAnalysis {
    Rat p_accept;
    Rat p_reject;
    Rat p_restart;
    /// Present whenever p_accept + p_reject > 0.
    std::optional<RestartSolution> overall;
    /// Largest counter value on any positive-probability branch of the round.
    std::int64_t max_counter = 0;
    /// Number of distinct branch configurations explored.
    std::size_t configurations = 0;

    static RoundAnalysis from_round(Rat p_accept, Rat p_reject, Rat p_restart);
};

}  // namespace qca

#endif
