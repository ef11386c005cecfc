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

#ifndef QCA_UPOWER_H
#define QCA_UPOWER_H

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qca/analysis.h"
#include "qca/power.h"

namespace qca {

struct UpowerOptions {
    /// Treat a^1 = a^(2^0) as a member (accepted before the loop starts).
    /// When false the language is {a^(2^n) : n >= 1}.
    bool exponent_from_zero = true;
};

/// Coin flipped once per input cell after the loop: outcome "success" has
/// probability exactly 1/(2k^2+1) from |q1>, and leaves the register in |q1>.
Superoperator accept_coin(const PowerParams &params);

/// Two-way counter machine with a 3-dimensional register for {a^(2^n)}.
///
/// For i = 1, 2, ... the counter holds i at the left end-marker and each
/// inner round feeds the virtual word a^i b^m to the POWER operators:
///  - at ¢, reinitialize the register and apply the ¢ operator;
///  - walk right decrementing until the counter is empty (reaching cell i+1,
///    which is $ exactly when i = m);
///  - walk left over cells i..1 applying the a operator, incrementing;
///  - walk right over all m cells applying the b operator;
///  - apply the $ operator.
/// An undecided inner round walks back to ¢ and repeats with the same i. A
/// rejection moves on to i+1, or rejects the input when i = m. An acceptance
/// ends the loop: the register is reinitialized and the coin is flipped on
/// every cell while walking back to ¢; all successes accept, any failure
/// empties the counter and restarts the machine.
MachineSpec build_upower(const PowerParams &params, const UpowerOptions &options = {});

struct UpowerAnalysis {
    std::uint64_t m = 0;
    bool member = false;
    /// Overall acceptance probability of the inner recognizer on a^i b^m,
    /// for every loop index the loop can reach.
    std::vector<Rat> loop_accept;
    Rat pass_accept;
    Rat pass_reject;
    Rat pass_restart;
    std::optional<RestartSolution> overall;
};

/// Exact per-pass and overall probabilities of the UPOWER machine on a^m,
/// composed from the inner recognizer's closed forms. The reduced rejection
/// product of a non-member has about m^2 bits; ErrorKind::Budget is raised
/// once it would exceed kUpowerExactBitLimit.
inline constexpr std::uint64_t kUpowerExactBitLimit = std::uint64_t{1} << 24;
UpowerAnalysis analyze_upower(std::uint64_t m, const PowerParams &params, const UpowerOptions &options = {});

/// Largest counter value over every reachable configuration of the UPOWER
/// machine on a^m (log2 m for members, m for non-members).
std::int64_t profile_member_space(std::uint64_t m, const PowerParams &params, const UpowerOptions &options = {});

/// The same quantity read off the loop schedule without running the machine.
std::int64_t predicted_max_counter(std::uint64_t m, const UpowerOptions &options = {});

bool is_upower_member(std::uint64_t m, const UpowerOptions &options = {});

// ---------------------------------------------------------------------------
// Unary language families

enum class FamilyTag { UPower, Poly, PowerBase, PolyPower, Iter };

struct FamilySpec {
    FamilyTag tag = FamilyTag::UPower;
    /// Polynomial coefficients, constant term first (Poly, PolyPower).
    std::vector<std::int64_t> coefficients;
    /// Base of the exponential (PowerBase, PolyPower), or the geometric
    /// marking base (Iter).
    std::uint64_t base = 0;
    /// Family whose index n is replaced by base^n (Iter).
    std::shared_ptr<const FamilySpec> inner;
    bool exponent_from_zero = true;  // UPower only
};

/// Parses "upower", "poly:<c0,c1,...>", "powerbase:<m>",
/// "polypower:<c0,c1,...>:<m>", or "iter:<base>:<family>".
FamilySpec parse_family(std::string_view text);
std::string describe(const FamilySpec &family);

/// Brute-force membership of a^length.
bool is_member(std::uint64_t length, const FamilySpec &family);
/// Same for a string, which must be unary.
bool is_member(std::string_view w, const FamilySpec &family);

struct FamilyBounds {
    std::string language;
    /// How the counter marks the input: "linear" (1, 2, 3, ...) or
    /// "geometric" (1, b, b^2, ...).
    std::string marking;
    /// Counter space used on members, as a function of |w|.
    std::string member_space;
    Rat error_bound;
    /// For a given member length: its index n and the counter value reached.
    std::optional<std::uint64_t> witness;
    std::optional<BigInt> member_counter;
};

FamilyBounds family_bounds(const FamilySpec &family, const PowerParams &params,
                           std::optional<std::uint64_t> length = std::nullopt);

}  // namespace qca

#endif
