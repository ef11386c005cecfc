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

#include <array>
#include <optional>

#include "doctest.h"
#include "qca/four_square.h"

using namespace qca;

namespace {

// Plain enumeration from the top; the first hit is the lexicographically
// largest non-increasing quadruple.
std::optional<std::array<std::uint64_t, 4>> brute(std::uint64_t n) {
    std::uint64_t top = 0;
    while ((top + 1) * (top + 1) <= n) {
        ++top;
    }
    for (std::uint64_t a = top + 1; a-- > 0;) {
        for (std::uint64_t b = a + 1; b-- > 0;) {
            for (std::uint64_t c = b + 1; c-- > 0;) {
                for (std::uint64_t d = c + 1; d-- > 0;) {
                    if (a * a + b * b + c * c + d * d == n) {
                        return std::array{a, b, c, d};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("four squares sum to n") {
    for (std::uint64_t n = 0; n <= 10000; ++n) {
        const auto f = four_square(n);
        REQUIRE(f.a * f.a + f.b * f.b + f.c * f.c + f.d * f.d == n);
        REQUIRE(f.a >= f.b);
        REQUIRE(f.b >= f.c);
        REQUIRE(f.c >= f.d);
        REQUIRE(f.target == n);
    }
}

TEST_CASE("four square choice is the lexicographically largest") {
    for (std::uint64_t n = 0; n <= 400; ++n) {
        const auto f = four_square(n);
        const auto want = brute(n);
        REQUIRE(want.has_value());
        CAPTURE(n);
        CHECK(std::array{f.a, f.b, f.c, f.d} == *want);
    }
    CHECK(four_square(3) == FourSquare{1, 1, 1, 0, 3});
    CHECK(four_square(15) == FourSquare{3, 2, 1, 1, 15});
    CHECK(four_square(63) == FourSquare{7, 3, 2, 1, 63});
}

TEST_CASE("four square is deterministic and handles large inputs") {
    for (std::uint64_t n : {std::uint64_t{4} * 268435456 * 268435456 - 1, std::uint64_t{999999999999}}) {
        const auto f = four_square(n);
        CHECK(f == four_square(n));
        CHECK(f.a * f.a + f.b * f.b + f.c * f.c + f.d * f.d == n);
    }
}

TEST_CASE("integer square root") {
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(15) == 3);
    CHECK(isqrt(16) == 4);
    CHECK(isqrt(~std::uint64_t{0}) == 4294967295u);
    CHECK(isqrt(std::uint64_t{4294967295} * 4294967295u) == 4294967295u);
}
