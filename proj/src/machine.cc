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

#include "qca/machine.h"

#include <algorithm>
#include <bit>

#include "qca/errors.h"

namespace qca {

std::string_view to_string(MachineKind kind) {
    switch (kind) {
        case MachineKind::DeterministicCounter:
            return "deterministic-counter";
        case MachineKind::RestartingRealtimeQcfa:
            return "restarting-realtime-qcfa";
        case MachineKind::TwoWayQcfa:
            return "two-way-qcfa";
        case MachineKind::TwoWayQcca:
            return "two-way-qcca";
    }
    return "?";
}

MachineKind parse_machine_kind(std::string_view text) {
    for (auto k : {MachineKind::DeterministicCounter, MachineKind::RestartingRealtimeQcfa, MachineKind::TwoWayQcfa,
                   MachineKind::TwoWayQcca}) {
        if (to_string(k) == text) {
            return k;
        }
    }
    fail(ErrorKind::Parse, "unknown machine kind '" + std::string(text) + "'");
}

bool has_counter(MachineKind kind) {
    return kind == MachineKind::DeterministicCounter || kind == MachineKind::TwoWayQcca;
}

bool has_register(MachineKind kind) {
    return kind != MachineKind::DeterministicCounter;
}

std::string_view to_string(Move move) {
    switch (move) {
        case Move::Left:
            return "left";
        case Move::Stay:
            return "stay";
        case Move::Right:
            return "right";
    }
    return "?";
}

Move parse_move(std::string_view text) {
    if (text == "left") {
        return Move::Left;
    }
    if (text == "stay") {
        return Move::Stay;
    }
    if (text == "right") {
        return Move::Right;
    }
    fail(ErrorKind::Parse, "unknown head move '" + std::string(text) + "'");
}

std::string_view to_string(CounterStatus status) {
    return status == CounterStatus::Zero ? "zero" : "nonzero";
}

CounterStatus parse_counter_status(std::string_view text) {
    if (text == "zero") {
        return CounterStatus::Zero;
    }
    if (text == "nonzero") {
        return CounterStatus::Nonzero;
    }
    fail(ErrorKind::Parse, "unknown counter status '" + std::string(text) + "'");
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Accept:
            return "accept";
        case Verdict::Reject:
            return "reject";
        case Verdict::Running:
            return "running";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// MachineSpec

std::string MachineSpec::symbol_name(SymbolId id) const {
    if (id == kLeftEnd) {
        return std::string(kLeftEndName);
    }
    if (id == kRightEnd) {
        return std::string(kRightEndName);
    }
    return std::string(1, alphabet_.at(id - 2));
}

std::optional<SymbolId> MachineSpec::symbol_of(char letter) const {
    auto pos = alphabet_.find(letter);
    if (pos == std::string::npos) {
        return std::nullopt;
    }
    return static_cast<SymbolId>(pos + 2);
}

std::optional<StateId> MachineSpec::state_of(std::string_view name) const {
    auto it = std::find(states_.begin(), states_.end(), name);
    if (it == states_.end()) {
        return std::nullopt;
    }
    return static_cast<StateId>(it - states_.begin());
}

void MachineSpec::compile() {
    ops_.clear();
    op_keys_.clear();
    element_transitions_.clear();
    op_table_.assign(states_.size() * num_symbols() * 2, -1);
    for (const auto &[key, op] : delta_q_) {
        const int index = static_cast<int>(ops_.size());
        ops_.push_back(op);
        op_keys_.push_back(key);
        op_table_[(static_cast<std::size_t>(key.state) * num_symbols() + key.symbol) * 2 +
                  static_cast<std::size_t>(key.status)] = index;
        std::vector<std::optional<Transition>> slots;
        for (const auto &e : op.elements()) {
            auto it = delta_c_.find(ClassicalKey{key.state, key.symbol, key.status, e.outcome});
            if (it != delta_c_.end()) {
                slots.emplace_back(it->second);
            } else {
                slots.emplace_back(std::nullopt);
            }
        }
        element_transitions_.push_back(std::move(slots));
    }
}

// ---------------------------------------------------------------------------
// MachineBuilder

MachineBuilder::MachineBuilder(std::string name, MachineKind kind, std::string alphabet) {
    for (char c : alphabet) {
        const auto uc = static_cast<unsigned char>(c);
        if (c == '$' || (c >= '0' && c <= '9') || uc <= ' ' || uc >= 0x7f) {
            fail(ErrorKind::Structural, std::string("symbol '") + c + "' cannot be used in an input alphabet");
        }
        if (std::count(alphabet.begin(), alphabet.end(), c) != 1) {
            fail(ErrorKind::Structural, std::string("duplicate alphabet symbol '") + c + "'");
        }
    }
    spec_.name_ = std::move(name);
    spec_.kind_ = kind;
    spec_.alphabet_ = std::move(alphabet);
    if (!has_register(kind)) {
        spec_.basis_ = {"q0"};
    }
}

StateId MachineBuilder::state(const std::string &name) {
    if (auto s = spec_.state_of(name)) {
        return *s;
    }
    spec_.states_.push_back(name);
    return static_cast<StateId>(spec_.states_.size() - 1);
}

SymbolId MachineBuilder::symbol(char letter) const {
    auto s = spec_.symbol_of(letter);
    if (!s) {
        fail(ErrorKind::Structural, std::string("symbol '") + letter + "' is not in the alphabet");
    }
    return *s;
}

MachineBuilder &MachineBuilder::set_start(StateId s) {
    spec_.start_ = s;
    start_set_ = true;
    return *this;
}

MachineBuilder &MachineBuilder::set_accept(StateId s) {
    spec_.accept_ = s;
    accept_set_ = true;
    return *this;
}

MachineBuilder &MachineBuilder::set_reject(StateId s) {
    spec_.reject_ = s;
    reject_set_ = true;
    return *this;
}

MachineBuilder &MachineBuilder::set_basis(std::vector<std::string> basis, std::size_t initial) {
    if (!has_register(spec_.kind_)) {
        fail(ErrorKind::Structural, "deterministic machines have no quantum register");
    }
    if (basis.empty() || initial >= basis.size()) {
        fail(ErrorKind::Structural, "quantum basis must be nonempty and contain the initial state");
    }
    spec_.basis_ = std::move(basis);
    spec_.initial_basis_ = initial;
    return *this;
}

MachineBuilder &MachineBuilder::quantum(StateId s, SymbolId sym, CounterStatus status, Superoperator op) {
    spec_.delta_q_.insert_or_assign(QuantumKey{s, sym, status}, std::move(op));
    return *this;
}

MachineBuilder &MachineBuilder::quantum(StateId s, SymbolId sym, Superoperator op) {
    quantum(s, sym, CounterStatus::Zero, op);
    return quantum(s, sym, CounterStatus::Nonzero, std::move(op));
}

MachineBuilder &MachineBuilder::classical(StateId s, SymbolId sym, CounterStatus status, OutcomeLabel outcome,
                                          Transition t) {
    spec_.delta_c_.insert_or_assign(ClassicalKey{s, sym, status, std::move(outcome)}, t);
    return *this;
}

MachineBuilder &MachineBuilder::classical(StateId s, SymbolId sym, OutcomeLabel outcome, Transition t) {
    classical(s, sym, CounterStatus::Zero, outcome, t);
    return classical(s, sym, CounterStatus::Nonzero, std::move(outcome), t);
}

MachineBuilder &MachineBuilder::deterministic(StateId s, SymbolId sym, CounterStatus status, Transition t) {
    if (has_register(spec_.kind_)) {
        fail(ErrorKind::Structural, "deterministic transitions need a deterministic-counter machine");
    }
    quantum(s, sym, status, Superoperator::identity(1, std::string(kDeterministicOutcome)));
    return classical(s, sym, status, std::string(kDeterministicOutcome), t);
}

MachineSpec MachineBuilder::build() const {
    if (!start_set_ || !accept_set_ || !reject_set_) {
        fail(ErrorKind::Structural, "machine needs start, accept, and reject states");
    }
    if (spec_.basis_.empty()) {
        fail(ErrorKind::Structural, "machine with a quantum register needs a basis");
    }
    const auto n_states = spec_.states_.size();
    for (const auto &[key, op] : spec_.delta_q_) {
        if (key.state >= n_states || key.symbol >= spec_.num_symbols()) {
            fail(ErrorKind::Structural, "delta_q refers to an unknown state or symbol");
        }
        if (op.dim() != spec_.dim()) {
            fail(ErrorKind::Structural, "superoperator for state '" + spec_.states_[key.state] + "' has dimension " +
                                            std::to_string(op.dim()) + ", register has " +
                                            std::to_string(spec_.dim()));
        }
    }
    for (const auto &[key, t] : spec_.delta_c_) {
        if (key.state >= n_states || key.symbol >= spec_.num_symbols() || t.target >= n_states) {
            fail(ErrorKind::Structural, "delta_c refers to an unknown state or symbol");
        }
        if (t.counter_update < -1 || t.counter_update > 1) {
            fail(ErrorKind::Structural, "counter updates must lie in {-1, 0, 1}");
        }
    }
    MachineSpec out = spec_;
    out.compile();
    return out;
}

// ---------------------------------------------------------------------------
// Validation

MachineValidation validate_machine(const MachineSpec &spec) {
    MachineValidation v;
    auto where = [&](StateId s, SymbolId sym, CounterStatus st) {
        std::string w = "(" + spec.states()[s] + ", " + spec.symbol_name(sym);
        if (has_counter(spec.kind())) {
            w += ", " + std::string(to_string(st));
        }
        return w + ")";
    };
    auto issue = [&](std::string w, std::string m) { v.issues.push_back({std::move(w), std::move(m)}); };

    if (spec.accept() == spec.reject()) {
        issue("states", "accepting and rejecting states coincide");
    }
    if (spec.is_halting(spec.start())) {
        issue("states", "initial state is a halting state");
    }
    for (const auto &[key, op] : spec.delta_q()) {
        const auto w = where(key.state, key.symbol, key.status);
        if (spec.is_halting(key.state)) {
            issue(w, "halting state has a superoperator");
        }
        if (!has_counter(spec.kind()) && key.status == CounterStatus::Nonzero) {
            issue(w, "counter status used by a machine without a counter");
        }
        if (!has_register(spec.kind())) {
            if (op.size() != 1 || op.elements()[0].matrix != RMat::identity(1)) {
                issue(w, "deterministic machine with a nontrivial quantum operation");
            }
        }
        auto report = validate(op);
        if (!report.ok) {
            issue(w, report.str());
        }
        for (const auto &label : op.labels()) {
            if (!spec.delta_c().contains(ClassicalKey{key.state, key.symbol, key.status, label})) {
                issue(w, "no classical transition for outcome '" + label + "'");
            }
        }
    }
    for (const auto &[key, t] : spec.delta_c()) {
        const auto w = where(key.state, key.symbol, key.status) + " -" + key.outcome + "->";
        auto q = spec.delta_q().find(QuantumKey{key.state, key.symbol, key.status});
        if (q == spec.delta_q().end()) {
            issue(w, "transition without a superoperator");
        } else {
            const auto labels = q->second.labels();
            if (!std::binary_search(labels.begin(), labels.end(), key.outcome)) {
                issue(w, "transition for an outcome the superoperator never emits");
            }
        }
        const bool terminal = t.restart || spec.is_halting(t.target);
        if (!has_counter(spec.kind()) && t.counter_update != 0) {
            issue(w, "counter update on a machine without a counter");
        }
        if (terminal) {
            continue;
        }
        if (key.status == CounterStatus::Zero && t.counter_update < 0) {
            issue(w, "decrements an empty counter");
        }
        if (key.symbol == kLeftEnd && t.move == Move::Left) {
            issue(w, "moves left off the left end-marker");
        }
        if (key.symbol == kRightEnd && t.move == Move::Right) {
            issue(w, "moves right off the right end-marker");
        }
        if (spec.kind() == MachineKind::RestartingRealtimeQcfa && t.move != Move::Right) {
            issue(w, "realtime machine must move right on every non-terminal step");
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Tape

std::vector<std::pair<char, std::uint64_t>> parse_input_runs(std::string_view text) {
    std::vector<std::pair<char, std::uint64_t>> runs;
    const bool run_length = std::any_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (!run_length) {
        for (char c : text) {
            if (!runs.empty() && runs.back().first == c) {
                ++runs.back().second;
            } else {
                runs.emplace_back(c, 1);
            }
        }
        return runs;
    }
    std::size_t i = 0;
    while (i < text.size()) {
        const char letter = text[i++];
        if (letter >= '0' && letter <= '9') {
            fail(ErrorKind::Input, "malformed run-length input '" + std::string(text) + "'");
        }
        std::size_t j = i;
        while (j < text.size() && text[j] >= '0' && text[j] <= '9') {
            ++j;
        }
        if (j == i || j - i > 18) {
            fail(ErrorKind::Input, "malformed run-length input '" + std::string(text) + "'");
        }
        runs.emplace_back(letter, std::stoull(std::string(text.substr(i, j - i))));
        i = j;
    }
    return runs;
}

Tape Tape::from_runs(const MachineSpec &spec, const std::vector<std::pair<char, std::uint64_t>> &runs) {
    Tape t;
    for (const auto &[letter, count] : runs) {
        auto sym = spec.symbol_of(letter);
        if (!sym) {
            fail(ErrorKind::Input, std::string("symbol '") + letter + "' is not in the input alphabet of " +
                                       spec.name());
        }
        if (count == 0) {
            continue;
        }
        t.input_length_ += static_cast<std::int64_t>(count);
        if (!t.run_symbols_.empty() && t.run_symbols_.back() == *sym) {
            t.run_ends_.back() = t.input_length_;
        } else {
            t.run_symbols_.push_back(*sym);
            t.run_ends_.push_back(t.input_length_);
        }
    }
    return t;
}

Tape Tape::literal(const MachineSpec &spec, std::string_view w) {
    std::vector<std::pair<char, std::uint64_t>> runs;
    for (char c : w) {
        runs.emplace_back(c, 1);
    }
    return from_runs(spec, runs);
}

SymbolId Tape::at(std::int64_t pos) const {
    if (pos == 1) {
        return kLeftEnd;
    }
    if (pos == size()) {
        return kRightEnd;
    }
    if (pos < 1 || pos > size()) {
        fail(ErrorKind::Specification, "head position " + std::to_string(pos) + " is off the tape");
    }
    const std::int64_t index = pos - 2;
    auto it = std::upper_bound(run_ends_.begin(), run_ends_.end(), index);
    return run_symbols_[it - run_ends_.begin()];
}

// ---------------------------------------------------------------------------
// Randomness

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
    if (bound == 0) {
        fail(ErrorKind::Structural, "uniform_below(0)");
    }
    if (bound == 1) {
        return 0;
    }
    const std::uint64_t mask =
        bound > (std::uint64_t{1} << 63) ? ~std::uint64_t{0} : std::bit_ceil(bound) - 1;
    for (;;) {
        ++draws_;
        const std::uint64_t r = engine_() & mask;
        if (r < bound) {
            return r;
        }
    }
}

BigInt RandomSource::uniform_below(const BigInt &bound) {
    if (bound <= 0) {
        fail(ErrorKind::Structural, "uniform_below of a nonpositive bound");
    }
    const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    for (;;) {
        BigInt r = 0;
        std::size_t remaining = bits;
        while (remaining > 0) {
            const std::size_t take = std::min<std::size_t>(remaining, 64);
            ++draws_;
            std::uint64_t chunk = engine_();
            if (take < 64) {
                chunk &= (std::uint64_t{1} << take) - 1;
            }
            r <<= take;
            BigInt c;
            mpz_import(c.get_mpz_t(), 1, 1, sizeof(chunk), 0, 0, &chunk);
            r += c;
            remaining -= take;
        }
        if (r < bound) {
            return r;
        }
    }
}

std::size_t sample_weighted(const std::vector<BigInt> &weights, RandomSource &rng) {
    std::size_t positive = 0, last = 0;
    BigInt total = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < 0) {
            fail(ErrorKind::Structural, "negative sampling weight");
        }
        if (weights[i] > 0) {
            ++positive;
            last = i;
            total += weights[i];
        }
    }
    if (positive == 0) {
        fail(ErrorKind::Degenerate, "no outcome has positive probability");
    }
    if (positive == 1) {
        return last;
    }
    BigInt r;
    if (total.fits_ulong_p()) {
        r = static_cast<unsigned long>(rng.uniform_below(static_cast<std::uint64_t>(total.get_ui())));
    } else {
        r = rng.uniform_below(total);
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (r < weights[i]) {
            return i;
        }
        r -= weights[i];
    }
    return last;
}

std::vector<BigInt> integer_weights(const std::vector<Rat> &weights) {
    BigInt l = 1;
    for (const auto &w : weights) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), w.mpq().get_den_mpz_t());
    }
    std::vector<BigInt> out;
    out.reserve(weights.size());
    BigInt g = 0;
    for (const auto &w : weights) {
        BigInt x = w.num() * (l / w.den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        out.push_back(std::move(x));
    }
    if (g > 1) {
        for (auto &x : out) {
            x /= g;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Step semantics

Configuration init(const MachineSpec &spec, const Tape &tape) {
    (void)tape;
    Configuration cfg;
    cfg.state = spec.start();
    cfg.head = 1;
    cfg.counter = 0;
    cfg.quantum = initialize(spec.initial_basis(), spec.dim());
    return cfg;
}

StepResult step(const MachineSpec &spec, const Tape &tape, const Configuration &cfg, RandomSource &rng) {
    if (spec.is_halting(cfg.state)) {
        fail(ErrorKind::Specification, "step from a halted configuration");
    }
    const SymbolId sym = tape.at(cfg.head);
    const int index = spec.op_index(cfg.state, sym, cfg.status());
    if (index < 0) {
        fail(ErrorKind::Specification, "no superoperator for (" + spec.states()[cfg.state] + ", " +
                                           spec.symbol_name(sym) + ", " + std::string(to_string(cfg.status())) +
                                           ")");
    }
    auto dist = apply(spec.op(index), cfg.quantum);
    std::vector<Rat> probs;
    probs.reserve(dist.outcomes.size());
    for (const auto &o : dist.outcomes) {
        probs.push_back(o.probability);
    }
    const std::size_t chosen = sample_weighted(integer_weights(probs), rng);
    const Transition *t = spec.transition(index, chosen);
    auto &outcome = dist.outcomes[chosen];
    if (t == nullptr) {
        fail(ErrorKind::Specification, "no classical transition for outcome '" + outcome.label + "' in state " +
                                           spec.states()[cfg.state]);
    }

    StepResult result;
    result.outcome = outcome.label;
    if (t->restart) {
        result.next = init(spec, tape);
        result.restarted = true;
        return result;
    }
    result.next = cfg;
    result.next.state = t->target;
    result.next.quantum = std::move(outcome.state);
    if (t->target == spec.accept()) {
        result.verdict = Verdict::Accept;
        return result;
    }
    if (t->target == spec.reject()) {
        result.verdict = Verdict::Reject;
        return result;
    }
    result.next.head += static_cast<int>(t->move);
    if (result.next.head < 1 || result.next.head > tape.size()) {
        fail(ErrorKind::Specification, "head leaves the tape from state " + spec.states()[cfg.state]);
    }
    result.next.counter += t->counter_update;
    if (result.next.counter < 0) {
        fail(ErrorKind::Specification, "counter decremented below zero in state " + spec.states()[cfg.state]);
    }
    return result;
}

}  // namespace qca
