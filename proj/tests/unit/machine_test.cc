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

#include <algorithm>
#include <map>

#include "doctest.h"
#include "qca/errors.h"
#include "qca/machine.h"
#include "qca/power.h"
#include "qca/trajectory.h"
#include "qca/upower.h"

using namespace qca;

namespace {

// Deterministic one-counter machine for {a^n b^n : n >= 0}.
MachineSpec anbn() {
    MachineBuilder b("anbn", MachineKind::DeterministicCounter, "ab");
    const auto a = b.symbol('a'), bb = b.symbol('b');
    const auto start = b.state("start"), as = b.state("as"), bs = b.state("bs");
    const auto acc = b.state("accept"), rej = b.state("reject");
    b.set_start(start).set_accept(acc).set_reject(rej);
    constexpr auto Z = CounterStatus::Zero;
    constexpr auto N = CounterStatus::Nonzero;
    const Transition accept{acc, Move::Stay, 0, false};
    const Transition reject{rej, Move::Stay, 0, false};
    b.deterministic(start, kLeftEnd, Z, {as, Move::Right, 0, false});
    for (auto st : {Z, N}) {
        b.deterministic(as, a, st, {as, Move::Right, +1, false});
        b.deterministic(bs, a, st, reject);
    }
    b.deterministic(as, bb, N, {bs, Move::Right, -1, false});
    b.deterministic(as, bb, Z, reject);
    b.deterministic(as, kRightEnd, Z, accept);
    b.deterministic(as, kRightEnd, N, reject);
    b.deterministic(bs, bb, N, {bs, Move::Right, -1, false});
    b.deterministic(bs, bb, Z, reject);
    b.deterministic(bs, kRightEnd, Z, accept);
    b.deterministic(bs, kRightEnd, N, reject);
    return b.build();
}

Verdict run_to_end(const MachineSpec &spec, const Tape &tape, std::uint64_t seed, std::uint64_t *steps = nullptr) {
    RandomSource rng(seed);
    Configuration cfg = init(spec, tape);
    for (std::uint64_t i = 1; i < 100000; ++i) {
        auto r = step(spec, tape, cfg, rng);
        if (r.verdict) {
            if (steps) {
                *steps = i;
            }
            return *r.verdict;
        }
        cfg = std::move(r.next);
    }
    return Verdict::Running;
}

bool has_issue(const MachineValidation &v, std::string_view text) {
    return std::any_of(v.issues.begin(), v.issues.end(),
                       [&](const MachineIssue &i) { return i.message.find(text) != std::string::npos; });
}

}  // namespace

TEST_CASE("deterministic counter machine decides a^n b^n") {
    const auto spec = anbn();
    CHECK(validate_machine(spec).ok());
    for (int n = 0; n < 6; ++n) {
        for (int m = 0; m < 6; ++m) {
            const auto tape = Tape::from_runs(spec, {{'a', n}, {'b', m}});
            const auto want = n == m ? Verdict::Accept : Verdict::Reject;
            CHECK(run_to_end(spec, tape, 1) == want);
            CHECK(run_to_end(spec, tape, 99) == want);
        }
    }
    CHECK(run_to_end(spec, Tape::literal(spec, "abab"), 0) == Verdict::Reject);
}

TEST_CASE("deterministic machines consume no randomness") {
    const auto spec = anbn();
    const auto tape = Tape::literal(spec, "aaabbb");
    RandomSource rng(4);
    Configuration cfg = init(spec, tape);
    for (;;) {
        auto r = step(spec, tape, cfg, rng);
        if (r.verdict) {
            break;
        }
        cfg = r.next;
    }
    CHECK(rng.draws() == 0);
}

TEST_CASE("built-in machines validate") {
    for (std::int64_t k = 1; k <= 4; ++k) {
        CHECK(validate_machine(build_power(PowerParams::make(k))).ok());
        CHECK(validate_machine(build_upower(PowerParams::make(k))).ok());
        CHECK(validate_machine(build_upower(PowerParams::make(k), UpowerOptions{false})).ok());
    }
}

TEST_CASE("validation finds structural defects") {
    MachineBuilder b("bad", MachineKind::TwoWayQcca, "a");
    b.set_basis({"q0", "q1"}, 0);
    const auto a = b.symbol('a');
    const auto s = b.state("s"), t = b.state("t"), acc = b.state("acc"), rej = b.state("rej");
    b.set_start(s).set_accept(acc).set_reject(rej);
    const auto id = Superoperator::identity(2, "-");
    b.quantum(s, kLeftEnd, CounterStatus::Zero, id);
    b.classical(s, kLeftEnd, CounterStatus::Zero, "-", {t, Move::Left, 0, false});
    b.quantum(t, a, CounterStatus::Zero, id);
    b.classical(t, a, CounterStatus::Zero, "-", {t, Move::Right, -1, false});
    b.quantum(t, kRightEnd, CounterStatus::Nonzero, Superoperator({{"x", RMat{{1, 0}, {0, 0}}}}));
    b.classical(t, kRightEnd, CounterStatus::Nonzero, "y", {t, Move::Right, 0, false});
    b.quantum(acc, a, CounterStatus::Zero, id);
    b.classical(acc, a, CounterStatus::Zero, "-", {acc, Move::Right, 0, false});
    const auto v = validate_machine(b.build());
    CHECK_FALSE(v.ok());
    CHECK(has_issue(v, "left end-marker"));
    CHECK(has_issue(v, "decrements an empty counter"));
    CHECK(has_issue(v, "sum E^T E"));
    CHECK(has_issue(v, "no classical transition for outcome 'x'"));
    CHECK(has_issue(v, "never emits"));
    CHECK(has_issue(v, "right end-marker"));
    CHECK(has_issue(v, "halting state"));
}

TEST_CASE("realtime machines must move right") {
    MachineBuilder b("rt", MachineKind::RestartingRealtimeQcfa, "a");
    b.set_basis({"q"}, 0);
    const auto s = b.state("s"), acc = b.state("acc"), rej = b.state("rej");
    b.set_start(s).set_accept(acc).set_reject(rej);
    b.quantum(s, kLeftEnd, CounterStatus::Zero, Superoperator::identity(1, "-"));
    b.classical(s, kLeftEnd, CounterStatus::Zero, "-", {s, Move::Stay, 0, false});
    const auto v = validate_machine(b.build());
    CHECK(has_issue(v, "realtime"));
}

TEST_CASE("builder rejects malformed machines") {
    CHECK_THROWS_AS(MachineBuilder("x", MachineKind::TwoWayQcfa, "a$"), Error);
    CHECK_THROWS_AS(MachineBuilder("x", MachineKind::TwoWayQcfa, "aa"), Error);
    CHECK_THROWS_AS(MachineBuilder("x", MachineKind::TwoWayQcfa, "a1"), Error);
    MachineBuilder b("x", MachineKind::TwoWayQcfa, "a");
    CHECK_THROWS_AS(b.symbol('b'), Error);
    CHECK_THROWS_AS(b.build(), Error);
    MachineBuilder d("d", MachineKind::DeterministicCounter, "a");
    CHECK_THROWS_AS(d.set_basis({"q0", "q1"}, 0), Error);
    const auto s = d.state("s");
    d.set_start(s).set_accept(d.state("y")).set_reject(d.state("n"));
    CHECK_THROWS_AS(d.deterministic(s, kLeftEnd, CounterStatus::Zero, {s, Move::Right, 2, false}).build(), Error);
}

TEST_CASE("tapes and input grammar") {
    const auto spec = build_power(PowerParams::make(1));
    CHECK(parse_input_runs("a2b3") == std::vector<std::pair<char, std::uint64_t>>{{'a', 2}, {'b', 3}});
    CHECK(parse_input_runs("aabbb") == std::vector<std::pair<char, std::uint64_t>>{{'a', 2}, {'b', 3}});
    CHECK(parse_input_runs("").empty());
    CHECK(parse_input_runs("a1000000") == std::vector<std::pair<char, std::uint64_t>>{{'a', 1000000}});
    for (const char *bad : {"2a", "a", "ab2", "a2b", "a-1"}) {
        if (std::string_view(bad) == "a") {
            continue;  // literal
        }
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_input_runs(bad), Error);
    }
    const auto tape = Tape::from_runs(spec, {{'a', 2}, {'b', 3}});
    CHECK(tape.size() == 7);
    CHECK(tape.at(1) == kLeftEnd);
    CHECK(tape.at(2) == *spec.symbol_of('a'));
    CHECK(tape.at(3) == *spec.symbol_of('a'));
    CHECK(tape.at(4) == *spec.symbol_of('b'));
    CHECK(tape.at(6) == *spec.symbol_of('b'));
    CHECK(tape.at(7) == kRightEnd);
    CHECK_THROWS_AS(tape.at(0), Error);
    CHECK_THROWS_AS(tape.at(8), Error);
    CHECK_THROWS_AS(Tape::literal(spec, "abc"), Error);
    const auto huge = Tape::from_runs(spec, {{'a', 1000000000000}});
    CHECK(huge.at(1000000000001) == *spec.symbol_of('a'));
    CHECK(huge.at(1000000000002) == kRightEnd);
}

TEST_CASE("exact uniform draws") {
    RandomSource rng(8);
    std::map<std::uint64_t, int> counts;
    for (int i = 0; i < 6000; ++i) {
        const auto v = rng.uniform_below(6);
        REQUIRE(v < 6);
        ++counts[v];
    }
    for (const auto &[v, c] : counts) {
        CHECK(c > 850);
        CHECK(c < 1150);
    }
    const std::uint64_t big = (std::uint64_t{1} << 63) + 12345;
    for (int i = 0; i < 100; ++i) {
        CHECK(rng.uniform_below(big) < big);
    }
    BigInt huge;
    mpz_ui_pow_ui(huge.get_mpz_t(), 3, 200);
    for (int i = 0; i < 100; ++i) {
        const BigInt v = rng.uniform_below(huge);
        CHECK(v >= 0);
        CHECK(v < huge);
    }
    CHECK(rng.uniform_below(1) == 0);
}

TEST_CASE("weighted sampling and integer weights") {
    CHECK(integer_weights({Rat(1, 6), Rat(1, 3), Rat(0)}) == std::vector<BigInt>{1, 2, 0});
    CHECK(integer_weights({Rat(4), Rat(6)}) == std::vector<BigInt>{2, 3});
    RandomSource rng(2);
    int hits = 0;
    for (int i = 0; i < 3000; ++i) {
        hits += sample_weighted({1, 2}, rng) == 1 ? 1 : 0;
    }
    CHECK(hits > 1850);
    CHECK(hits < 2150);
    RandomSource quiet(2);
    CHECK(sample_weighted({0, 5, 0}, quiet) == 1);
    CHECK(quiet.draws() == 0);
}

TEST_CASE("step and the trajectory sampler make identical draws") {
    const auto params = PowerParams::make(1);
    constexpr std::uint64_t kSteps = 3000;
    for (const auto &[spec, input] : {std::pair{build_power(params), "a1b3"}, std::pair{build_power(params), "ab"},
                                      std::pair{build_upower(params), "a3"}, std::pair{build_upower(params), "a4"}}) {
        const auto tape = Tape::from_runs(spec, parse_input_runs(input));
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            RandomSource a(seed), b(seed);
            Configuration cfg = init(spec, tape);
            std::uint64_t steps = 0, restarts = 0;
            std::int64_t max_counter = 0;
            Verdict verdict = Verdict::Running;
            while (verdict == Verdict::Running && steps < kSteps) {
                auto r = step(spec, tape, cfg, a);
                ++steps;
                restarts += r.restarted ? 1 : 0;
                verdict = r.verdict.value_or(Verdict::Running);
                cfg = std::move(r.next);
                max_counter = std::max(max_counter, cfg.counter);
            }
            const auto stats = run_trajectory(spec, tape, b, kSteps);
            CAPTURE(input);
            CAPTURE(seed);
            CHECK(stats.verdict == verdict);
            CHECK(stats.steps == steps);
            CHECK(stats.rounds == restarts);
            CHECK(stats.max_counter == max_counter);
            CHECK(a.draws() == b.draws());
        }
    }
}

TEST_CASE("step reports specification errors") {
    MachineBuilder b("partial", MachineKind::TwoWayQcca, "a");
    b.set_basis({"q"}, 0);
    const auto s = b.state("s"), t = b.state("t");
    b.set_start(s).set_accept(b.state("y")).set_reject(b.state("n"));
    b.quantum(s, kLeftEnd, CounterStatus::Zero, Superoperator::identity(1, "-"));
    b.classical(s, kLeftEnd, CounterStatus::Zero, "-", {t, Move::Right, 0, false});
    const auto spec = b.build();
    const auto tape = Tape::literal(spec, "a");
    RandomSource rng(0);
    auto r = step(spec, tape, init(spec, tape), rng);
    CHECK_FALSE(r.verdict);
    CHECK_THROWS_AS(step(spec, tape, r.next, rng), Error);
}
