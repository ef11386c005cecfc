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

#include "doctest.h"
#include "qca/errors.h"
#include "qca/explore.h"
#include "qca/upower.h"

using namespace qca;

TEST_CASE("accept coin") {
    for (std::int64_t k = 1; k <= 8; ++k) {
        const auto params = PowerParams::make(k);
        const auto coin = accept_coin(params);
        CAPTURE(k);
        CHECK(validate(coin).ok);
        const auto from_q1 = apply(coin, initialize(0, 3));
        CHECK(from_q1.probability_of("success") == Rat(BigInt(1), BigInt(2 * k * k + 1)));
        CHECK(apply(coin, initialize(1, 3)).probability_of("success") == Rat(0));
        for (const auto &o : from_q1.outcomes) {
            if (o.label == "success") {
                CHECK(o.state.vector[1] == Rat(0));
                CHECK(o.state.vector[2] == Rat(0));
            }
        }
    }
}

TEST_CASE("pass probabilities against frozen oracle values") {
    const auto k1 = PowerParams::make(1), k2 = PowerParams::make(2);
    auto a = analyze_upower(3, k1);
    CHECK(a.pass_accept == Rat::parse("259/12393"));
    CHECK(a.pass_reject == Rat::parse("200/459"));
    a = analyze_upower(3, k2);
    CHECK(a.pass_accept == Rat::parse("3481/11868849"));
    CHECK(a.pass_reject == Rat::parse("12800/16281"));
    a = analyze_upower(6, k1);
    CHECK(a.pass_accept == Rat::parse("1165687995401/3565914036237729"));
    CHECK(a.pass_reject == Rat::parse("3725826457600/4891514453001"));
    CHECK(analyze_upower(2, k1).pass_accept == Rat(1, 9));
    CHECK(analyze_upower(8, k2).pass_accept == Rat::parse("1/43046721"));
    CHECK(analyze_upower(0, k1).pass_reject == Rat(1));
    CHECK(analyze_upower(1, k1).pass_accept == Rat(1));
}

TEST_CASE("members accepted exactly, non-members rejected with the bound") {
    for (std::int64_t k = 1; k <= 3; ++k) {
        const auto params = PowerParams::make(k);
        for (std::uint64_t m = 1; m <= 40; ++m) {
            const auto a = analyze_upower(m, params);
            CAPTURE(k);
            CAPTURE(m);
            REQUIRE(a.overall.has_value());
            CHECK(a.pass_accept + a.pass_reject + a.pass_restart == Rat(1));
            if (a.member) {
                CHECK(a.overall->overall_accept == Rat(1));
                CHECK(a.pass_reject == Rat(0));
            } else {
                CHECK(a.overall->overall_reject >= error_bound(k));
                BigInt k2m;
                mpz_ui_pow_ui(k2m.get_mpz_t(), static_cast<unsigned long>(k), 2 * m);
                CHECK(a.pass_reject >= a.pass_accept * Rat(k2m));
            }
        }
    }
}

TEST_CASE("loop index schedule and counter use") {
    CHECK(is_upower_member(1));
    CHECK_FALSE(is_upower_member(1, UpowerOptions{false}));
    CHECK(is_upower_member(64));
    CHECK_FALSE(is_upower_member(0));
    CHECK_FALSE(is_upower_member(12));
    CHECK(predicted_max_counter(1024) == 10);
    CHECK(predicted_max_counter(1000) == 1000);
    CHECK(predicted_max_counter(1, UpowerOptions{false}) == 1);
    const auto params = PowerParams::make(1);
    for (std::uint64_t j = 0; j <= 5; ++j) {
        CHECK(profile_member_space(std::uint64_t{1} << j, params) == static_cast<std::int64_t>(j));
    }
    CHECK(profile_member_space(1, params, UpowerOptions{false}) == 1);
    CHECK(profile_member_space(7, params) == 7);
}

TEST_CASE("excluding a^1 from the language") {
    const auto params = PowerParams::make(1);
    const UpowerOptions from_one{false};
    const auto spec = build_upower(params, from_one);
    const auto one = enumerate_round(spec, Tape::from_runs(spec, {{'a', 1}}));
    CHECK(one.overall->overall_reject >= error_bound(1));
    CHECK(one.p_accept == analyze_upower(1, params, from_one).pass_accept);
    CHECK(one.p_reject == analyze_upower(1, params, from_one).pass_reject);
    const auto two = enumerate_round(spec, Tape::from_runs(spec, {{'a', 2}}));
    CHECK(two.overall->overall_accept == Rat(1));
}

TEST_CASE("exact analysis size limit") {
    const auto params = PowerParams::make(1);
    CHECK(analyze_upower(std::uint64_t{1} << 20, params).overall->overall_accept == Rat(1));
    try {
        analyze_upower(100000, params);
        FAIL("expected a budget error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::Budget);
    }
}
