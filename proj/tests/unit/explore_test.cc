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

#include <functional>

#include "doctest.h"
#include "qca/errors.h"
#include "qca/explore.h"
#include "qca/power.h"
#include "qca/upower.h"

using namespace qca;

namespace {

struct Totals {
    Rat accept, reject, restart;
};

// Follows every operation element separately, without merging branches.
// Only usable for machines whose rounds are finite trees (no inner loops).
Totals raw_tree(const MachineSpec &spec, const Tape &tape) {
    Totals t;
    std::function<void(const Configuration &)> visit = [&](const Configuration &cfg) {
        const int index = spec.op_index(cfg.state, tape.at(cfg.head), cfg.status());
        REQUIRE(index >= 0);
        const auto dist = apply(spec.op(index), cfg.quantum);
        for (const auto &o : dist.outcomes) {
            if (o.probability.is_zero()) {
                continue;
            }
            const Transition *tr = spec.transition(index, o.element);
            REQUIRE(tr != nullptr);
            if (tr->restart) {
                t.restart += o.probability;
            } else if (tr->target == spec.accept()) {
                t.accept += o.probability;
            } else if (tr->target == spec.reject()) {
                t.reject += o.probability;
            } else {
                Configuration next{tr->target, cfg.head + static_cast<int>(tr->move), cfg.counter + tr->counter_update,
                                   o.state};
                visit(next);
            }
        }
    };
    visit(init(spec, tape));
    return t;
}

}  // namespace

TEST_CASE("enumeration matches an unmerged branch tree") {
    for (std::int64_t k = 1; k <= 2; ++k) {
        const auto spec = build_power(PowerParams::make(k));
        for (const char *input : {"ab", "abb", "aabbbb", "aabbb", "aaab", "ba", "", "a", "b", "abab", "aab"}) {
            const auto tape = Tape::literal(spec, input);
            const auto r = enumerate_round(spec, tape);
            const auto t = raw_tree(spec, tape);
            CAPTURE(input);
            CHECK(r.p_accept == t.accept);
            CHECK(r.p_reject == t.reject);
            CHECK(r.p_restart == t.restart);
            CHECK(r.p_accept + r.p_reject + r.p_restart == Rat(1));
        }
    }
}

TEST_CASE("enumeration reproduces the single-round closed form") {
    for (std::int64_t k = 1; k <= 3; ++k) {
        const auto params = PowerParams::make(k);
        const auto spec = build_power(params);
        for (std::uint64_t m = 1; m <= 5; ++m) {
            for (std::uint64_t n = 1; n <= 10; ++n) {
                const auto r = enumerate_round(spec, Tape::from_runs(spec, {{'a', m}, {'b', n}}));
                const auto c = round_closed_form(m, n, params);
                CHECK(r.p_accept == c.p_accept);
                CHECK(r.p_reject == c.p_reject);
            }
        }
    }
}

TEST_CASE("enumeration sums inner loops of the counter machine") {
    const auto params = PowerParams::make(1);
    const auto spec = build_upower(params);
    for (std::uint64_t m = 0; m <= 9; ++m) {
        const auto r = enumerate_round(spec, Tape::from_runs(spec, {{'a', m}}));
        const auto a = analyze_upower(m, params);
        CAPTURE(m);
        CHECK(r.p_accept == a.pass_accept);
        CHECK(r.p_reject == a.pass_reject);
        CHECK(r.p_restart == a.pass_restart);
    }
}

TEST_CASE("enumeration limits and non-halting loops") {
    const auto spec = build_upower(PowerParams::make(1));
    CHECK_THROWS_AS(enumerate_round(spec, Tape::from_runs(spec, {{'a', 8}}), ExploreLimits{20}), Error);

    // A deterministic machine bouncing between the end-markers forever.
    MachineBuilder b("bounce", MachineKind::DeterministicCounter, "a");
    const auto l = b.state("l"), r = b.state("r");
    b.set_start(r).set_accept(b.state("y")).set_reject(b.state("n"));
    b.deterministic(r, kLeftEnd, CounterStatus::Zero, {r, Move::Right, 0, false});
    b.deterministic(r, kRightEnd, CounterStatus::Zero, {l, Move::Left, 0, false});
    b.deterministic(l, kLeftEnd, CounterStatus::Zero, {r, Move::Right, 0, false});
    const auto bounce = b.build();
    try {
        enumerate_round(bounce, Tape::literal(bounce, ""));
        FAIL("expected a non-halting error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::NonHalting);
    }
}

TEST_CASE("space profile") {
    const auto params = PowerParams::make(1);
    const auto spec = build_upower(params);
    RandomSource rng(1);
    for (std::uint64_t m = 0; m <= 20; ++m) {
        const auto tape = Tape::from_runs(spec, {{'a', m}});
        CAPTURE(m);
        CHECK(profile_space(spec, tape, ProfileMode::ExactSchedule, rng) == predicted_max_counter(m));
        CHECK(profile_space(spec, tape, ProfileMode::Sampled, rng) <= predicted_max_counter(m));
    }
    const auto power = build_power(params);
    CHECK_THROWS_AS(profile_space(power, Tape::literal(power, "ab"), ProfileMode::ExactSchedule, rng), Error);
}
