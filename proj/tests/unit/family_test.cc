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

#include <set>

#include "doctest.h"
#include "qca/errors.h"
#include "qca/upower.h"

using namespace qca;

namespace {

// Members up to `limit` listed straight from the definition.
std::set<std::uint64_t> listed(std::uint64_t (*f)(std::uint64_t), std::uint64_t from, std::uint64_t limit) {
    std::set<std::uint64_t> out;
    for (std::uint64_t n = from; n < 6000; ++n) {
        const auto v = f(n);
        if (v <= limit) {
            out.insert(v);
        }
    }
    return out;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e-- > 0) {
        if (r > (std::uint64_t{1} << 40)) {
            return ~std::uint64_t{0};
        }
        r *= b;
    }
    return r;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    return (a != 0 && b > ~std::uint64_t{0} / a) ? ~std::uint64_t{0} : a * b;
}

void check_family(const char *text, std::uint64_t (*f)(std::uint64_t), std::uint64_t from) {
    const auto family = parse_family(text);
    const std::uint64_t limit = 5000;
    const auto want = listed(f, from, limit);
    for (std::uint64_t len = 0; len <= limit; ++len) {
        CAPTURE(std::string(text));
        CAPTURE(len);
        REQUIRE(is_member(len, family) == want.contains(len));
    }
}

}  // namespace

TEST_CASE("family membership agrees with listed members") {
    check_family("upower", [](std::uint64_t n) { return ipow(2, n); }, 0);
    check_family("poly:1,0,2", [](std::uint64_t n) { return 2 * n * n + 1; }, 1);
    check_family("poly:13,-7,1", [](std::uint64_t n) { return n * n - 7 * n + 13; }, 1);
    check_family("poly:3", [](std::uint64_t) { return std::uint64_t{3}; }, 1);
    check_family("powerbase:3", [](std::uint64_t n) { return ipow(3, n); }, 1);
    check_family("polypower:0,1:3", [](std::uint64_t n) { return sat_mul(n, ipow(3, n)); }, 1);
    check_family("iter:2:poly:0,0,1", [](std::uint64_t n) { return sat_mul(ipow(2, n), ipow(2, n)); }, 1);
    check_family("iter:3:poly:1,1", [](std::uint64_t n) { return ipow(3, n) == ~std::uint64_t{0} ? ipow(3, n) : ipow(3, n) + 1; }, 1);
}

TEST_CASE("poly:10,-7,1 takes value 0 at n = 2 and is rejected") {
    // n^2 - 7n + 10 vanishes at n = 2 and 5, so scanning it is a family error.
    CHECK_THROWS_AS(is_member(std::uint64_t{5}, parse_family("poly:10,-7,1")), Error);
}

TEST_CASE("family parsing errors") {
    for (const char *bad : {"", "square", "poly:", "poly:1,x", "poly:1,-2", "powerbase:1", "polypower:1,1:2",
                            "polypower:1,1", "iter:1:upower", "iter:2", "upower:3", "poly:0"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_family(bad), Error);
    }
    CHECK(is_member("aaaa", parse_family("upower")));
    CHECK_THROWS_AS(is_member("ab", parse_family("upower")), Error);
}

TEST_CASE("descriptions and bounds") {
    CHECK(describe(parse_family("upower")) == "{ a^(2^n) : n >= 0 }");
    CHECK(describe(parse_family("poly:1,0,2")) == "{ a^(2n^2 + 1) : n >= 1 }");
    CHECK(describe(parse_family("polypower:0,1:3")) == "{ a^((n)·3^n) : n >= 1 }");
    const auto params = PowerParams::make(2);
    auto b = family_bounds(parse_family("upower"), params, 64);
    CHECK(b.marking.rfind("linear", 0) == 0);
    CHECK(b.error_bound == Rat(8, 9));
    REQUIRE(b.witness.has_value());
    CHECK(*b.witness == 6);
    CHECK(*b.member_counter == 6);
    b = family_bounds(parse_family("iter:2:poly:0,0,1"), params, 256);
    CHECK(b.marking.rfind("geometric", 0) == 0);
    CHECK(*b.witness == 4);
    CHECK(*b.member_counter == 16);
    b = family_bounds(parse_family("upower"), params, 100);
    CHECK_FALSE(b.witness.has_value());
}
