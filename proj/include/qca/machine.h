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

#ifndef QCA_MACHINE_H
#define QCA_MACHINE_H

#include <cstdint>
#include <compare>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qca/superop.h"

namespace qca {

enum class MachineKind {
    DeterministicCounter,
    RestartingRealtimeQcfa,
    TwoWayQcfa,
    TwoWayQcca,
};

std::string_view to_string(MachineKind kind);
MachineKind parse_machine_kind(std::string_view text);
bool has_counter(MachineKind kind);
bool has_register(MachineKind kind);

enum class Move : std::int8_t { Left = -1, Stay = 0, Right = 1 };
std::string_view to_string(Move move);
Move parse_move(std::string_view text);

/// The only observable of the counter.
enum class CounterStatus : std::uint8_t { Zero = 0, Nonzero = 1 };
std::string_view to_string(CounterStatus status);
CounterStatus parse_counter_status(std::string_view text);

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;

/// Symbol ids: end-markers first, then the alphabet in the order given.
inline constexpr SymbolId kLeftEnd = 0;
inline constexpr SymbolId kRightEnd = 1;
inline constexpr std::string_view kLeftEndName = "¢";
inline constexpr std::string_view kRightEndName = "$";

/// Label carried by the implicit single-element superoperator of
/// deterministic machines.
inline constexpr std::string_view kDeterministicOutcome = "-";

struct Transition {
    StateId target = 0;
    Move move = Move::Right;
    int counter_update = 0;
    /// Resets the whole configuration to the initial one (restarting machines).
    /// The head move and counter update are not applied.
    bool restart = false;

    friend bool operator==(const Transition &, const Transition &) = default;
};

struct QuantumKey {
    StateId state;
    SymbolId symbol;
    CounterStatus status;
    friend auto operator<=>(const QuantumKey &, const QuantumKey &) = default;
};

struct ClassicalKey {
    StateId state;
    SymbolId symbol;
    CounterStatus status;
    OutcomeLabel outcome;
    friend auto operator<=>(const ClassicalKey &, const ClassicalKey &) = default;
};

class MachineBuilder;

/// Immutable machine description. Lookups used by the engines are compiled
/// into flat tables at construction.
class MachineSpec {
   public:
    const std::string &name() const noexcept {
        return name_;
    }
    MachineKind kind() const noexcept {
        return kind_;
    }
    const std::string &alphabet() const noexcept {
        return alphabet_;
    }
    const std::vector<std::string> &states() const noexcept {
        return states_;
    }
    StateId start() const noexcept {
        return start_;
    }
    StateId accept() const noexcept {
        return accept_;
    }
    StateId reject() const noexcept {
        return reject_;
    }
    const std::vector<std::string> &basis() const noexcept {
        return basis_;
    }
    std::size_t initial_basis() const noexcept {
        return initial_basis_;
    }
    std::size_t dim() const noexcept {
        return basis_.size();
    }
    const std::map<QuantumKey, Superoperator> &delta_q() const noexcept {
        return delta_q_;
    }
    const std::map<ClassicalKey, Transition> &delta_c() const noexcept {
        return delta_c_;
    }

    std::size_t num_symbols() const noexcept {
        return alphabet_.size() + 2;
    }
    std::string symbol_name(SymbolId id) const;
    std::optional<SymbolId> symbol_of(char letter) const;
    std::optional<StateId> state_of(std::string_view name) const;
    bool is_halting(StateId s) const noexcept {
        return s == accept_ || s == reject_;
    }

    /// Compiled lookup: index of the superoperator for (state, symbol, status),
    /// or -1 when delta_q has no entry.
    int op_index(StateId state, SymbolId symbol, CounterStatus status) const noexcept {
        return op_table_[(static_cast<std::size_t>(state) * num_symbols() + symbol) * 2 +
                         static_cast<std::size_t>(status)];
    }
    const Superoperator &op(int index) const {
        return ops_[index];
    }
    std::size_t num_ops() const noexcept {
        return ops_.size();
    }
    /// Transition for element `element` of superoperator `index`, or nullptr
    /// when delta_c misses that outcome.
    const Transition *transition(int index, std::size_t element) const noexcept {
        const auto &slot = element_transitions_[index][element];
        return slot ? &*slot : nullptr;
    }
    const QuantumKey &op_key(int index) const {
        return op_keys_[index];
    }

   private:
    friend class MachineBuilder;
    MachineSpec() = default;
    void compile();

    std::string name_;
    MachineKind kind_ = MachineKind::TwoWayQcfa;
    std::string alphabet_;
    std::vector<std::string> states_;
    StateId start_ = 0, accept_ = 0, reject_ = 0;
    std::vector<std::string> basis_;
    std::size_t initial_basis_ = 0;
    std::map<QuantumKey, Superoperator> delta_q_;
    std::map<ClassicalKey, Transition> delta_c_;

    std::vector<Superoperator> ops_;
    std::vector<QuantumKey> op_keys_;
    std::vector<int> op_table_;
    std::vector<std::vector<std::optional<Transition>>> element_transitions_;
};

class MachineBuilder {
   public:
    MachineBuilder(std::string name, MachineKind kind, std::string alphabet);

    /// Returns the id of the named state, adding it on first use.
    StateId state(const std::string &name);
    SymbolId symbol(char letter) const;

    MachineBuilder &set_start(StateId s);
    MachineBuilder &set_accept(StateId s);
    MachineBuilder &set_reject(StateId s);
    MachineBuilder &set_basis(std::vector<std::string> basis, std::size_t initial);

    MachineBuilder &quantum(StateId s, SymbolId sym, CounterStatus status, Superoperator op);
    /// Same superoperator for both counter statuses.
    MachineBuilder &quantum(StateId s, SymbolId sym, Superoperator op);
    MachineBuilder &classical(StateId s, SymbolId sym, CounterStatus status, OutcomeLabel outcome, Transition t);
    MachineBuilder &classical(StateId s, SymbolId sym, OutcomeLabel outcome, Transition t);
    /// Deterministic machines only: no register, one implicit outcome.
    MachineBuilder &deterministic(StateId s, SymbolId sym, CounterStatus status, Transition t);

    MachineSpec build() const;

   private:
    MachineSpec spec_;
    bool start_set_ = false, accept_set_ = false, reject_set_ = false;
};

struct MachineIssue {
    std::string where;
    std::string message;
};

/// Structural checks a machine file must pass before it is run: operation
/// element completeness, transition totality, end-marker safety, realtime
/// motion, and counter underflow.
struct MachineValidation {
    std::vector<MachineIssue> issues;
    bool ok() const noexcept {
        return issues.empty();
    }
};

MachineValidation validate_machine(const MachineSpec &spec);

/// Input of the form ¢w$, stored as runs so that long unary blocks are never
/// materialized. Positions are 1-based; 1 is ¢ and size() is $.
class Tape {
   public:
    static Tape literal(const MachineSpec &spec, std::string_view w);
    static Tape from_runs(const MachineSpec &spec, const std::vector<std::pair<char, std::uint64_t>> &runs);

    std::int64_t size() const noexcept {
        return input_length_ + 2;
    }
    std::int64_t input_length() const noexcept {
        return input_length_;
    }
    SymbolId at(std::int64_t pos) const;

   private:
    std::vector<SymbolId> run_symbols_;
    std::vector<std::int64_t> run_ends_;  // cumulative, exclusive, 0-based input index
    std::int64_t input_length_ = 0;
};

/// Parses "a3b5" (run-length form, used whenever a digit is present) or a
/// literal string into (letter, count) runs.
std::vector<std::pair<char, std::uint64_t>> parse_input_runs(std::string_view text);

enum class Verdict { Accept, Reject, Running };
std::string_view to_string(Verdict v);

struct Configuration {
    StateId state = 0;
    std::int64_t head = 1;
    std::int64_t counter = 0;
    QuantumState quantum{RVec(1)};

    CounterStatus status() const noexcept {
        return counter == 0 ? CounterStatus::Zero : CounterStatus::Nonzero;
    }
};

/// Uniform random bits from a seeded 64-bit Mersenne Twister.
class RandomSource {
   public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {
    }
    std::uint64_t seed() const noexcept {
        return seed_;
    }
    std::uint64_t bits() {
        return engine_();
    }
    std::uint64_t draws() const noexcept {
        return draws_;
    }
    /// Exactly uniform on [0, bound) by rejection on masked bits.
    std::uint64_t uniform_below(std::uint64_t bound);
    BigInt uniform_below(const BigInt &bound);

   private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::uint64_t draws_ = 0;
};

/// Picks an index with probability weight[i] / sum(weight). Consumes no
/// randomness when only one weight is positive.
std::size_t sample_weighted(const std::vector<BigInt> &weights, RandomSource &rng);

/// Smallest integer vector proportional to the given nonnegative rationals.
std::vector<BigInt> integer_weights(const std::vector<Rat> &weights);

Configuration init(const MachineSpec &spec, const Tape &tape);

struct StepResult {
    Configuration next;
    std::optional<Verdict> verdict;
    OutcomeLabel outcome;
    bool restarted = false;
};

/// One step: apply the superoperator selected by (state, symbol, counter
/// status), sample an operation element with its exact probability, then
/// follow delta_c. The returned quantum state is unconditional.
StepResult step(const MachineSpec &spec, const Tape &tape, const Configuration &cfg, RandomSource &rng);

}  // namespace qca

#endif
