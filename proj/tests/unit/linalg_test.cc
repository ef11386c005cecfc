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
#include "qca/linalg.h"

using namespace qca;

TEST_CASE("matrix algebra") {
    const RMat a{{1, 2}, {3, 4}};
    const RMat b{{0, 1}, {1, 0}};
    CHECK(a * RMat::identity(2) == a);
    CHECK(a * b == RMat{{2, 1}, {4, 3}});
    CHECK(a.transpose() == RMat{{1, 3}, {2, 4}});
    CHECK(a + b == RMat{{1, 3}, {4, 4}});
    CHECK(a.scaled(Rat(1, 2)) == RMat{{Rat(1, 2), 1}, {Rat(3, 2), 2}});
    CHECK(RMat(2).is_zero());
    CHECK(mat_apply(a, RVec{1, 1}) == RVec{3, 7});
}

TEST_CASE("vectors") {
    const RVec v{Rat(1, 2), Rat(-1, 2), 0};
    CHECK(v.norm2() == Rat(1, 2));
    CHECK(v.scaled(2) == RVec{1, -1, 0});
    CHECK(RVec(3).is_zero());
    CHECK(v.str() == "(1/2, -1/2, 0)");
    CHECK_THROWS_AS(RVec(0), Error);
}

TEST_CASE("gram sums") {
    const std::vector<RMat> halves{RMat::identity(2).scaled(Rat(1, 2)), RMat{{0, Rat(1, 2)}, {Rat(1, 2), 0}},
                                   RMat{{Rat(1, 2), 0}, {0, Rat(-1, 2)}}, RMat{{0, Rat(1, 2)}, {Rat(-1, 2), 0}}};
    CHECK(gram_sum(halves) == RMat::identity(2));
    CHECK_THROWS_AS(gram_sum(std::vector<RMat>{}), Error);
    CHECK_THROWS_AS(gram_sum(std::vector<RMat>{RMat(2), RMat(3)}), Error);
    CHECK_THROWS_AS(mat_apply(RMat(2), RVec(3)), Error);
    CHECK_THROWS_AS(RMat(2) * RMat(3), Error);
}
