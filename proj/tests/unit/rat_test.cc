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

#include <random>

#include "doctest.h"
#include "qca/errors.h"
#include "qca/rat.h"

using namespace qca;

TEST_CASE("rat parses and prints canonical forms") {
    CHECK(Rat::parse("6/4").str() == "3/2");
    CHECK(Rat::parse("-6/4").str() == "-3/2");
    CHECK(Rat::parse("0/5").str() == "0");
    CHECK(Rat::parse("12").str() == "12");
    CHECK(Rat::parse("-7").str() == "-7");
    CHECK(Rat(BigInt(10), BigInt(-4)).str() == "-5/2");
    for (const char *bad : {"", "1/0", "1/-2", "abc", "1/", "/2", "1.5", "--1", " 1"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(Rat::parse(bad), Error);
    }
}

TEST_CASE("rat decimals show twelve significant digits") {
    CHECK(Rat(1, 3).decimal() == "0.333333333333");
    CHECK(Rat(2, 3).decimal() == "0.666666666667");
    CHECK(Rat(1).decimal() == "1");
    CHECK(Rat(0).decimal() == "0");
    CHECK(Rat(1, 1024).decimal() == "0.0009765625");
    CHECK(Rat(-4096, 3).decimal() == "-1365.33333333");
    const Rat tiny = pow(Rat(1, 4), 1000);
    CHECK(tiny.decimal() == "8.70980981622e-603");
}

TEST_CASE("rat arithmetic matches integer cross-multiplication") {
    std::mt19937_64 gen(11);
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
    for (int i = 0; i < 500; ++i) {
        const long an = num(gen), ad = den(gen), bn = num(gen), bd = den(gen);
        const Rat a{BigInt(an), BigInt(ad)}, b{BigInt(bn), BigInt(bd)};
        CHECK((a + b) - b == a);
        CHECK(a * b == Rat(BigInt(an * bn), BigInt(ad * bd)));
        if (!b.is_zero()) {
            CHECK((a / b) * b == a);
        }
        CHECK((a < b) == (an * bd < bn * ad));
        CHECK(Rat::parse(a.str()) == a);
    }
}

TEST_CASE("rat power and division by zero") {
    CHECK(pow(Rat(2, 3), 0) == Rat(1));
    CHECK(pow(Rat(2, 3), 3) == Rat(8, 27));
    CHECK(pow(Rat(-1, 2), 3) == Rat(-1, 8));
    CHECK_THROWS_AS(Rat(1) / Rat(0), Error);
}
