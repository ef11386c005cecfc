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

#ifndef QCA_FOUR_SQUARE_H
#define QCA_FOUR_SQUARE_H

#include <cstdint>

namespace qca {

/// a^2 + b^2 + c^2 + d^2 == target, with a >= b >= c >= d >= 0.
struct FourSquare {
    std::uint64_t a = 0, b = 0, c = 0, d = 0;
    std::uint64_t target = 0;

    friend bool operator==(const FourSquare &, const FourSquare &) = default;
};

/// Lexicographically largest decomposition (a, b, c, d), found by searching
/// each component downward from its largest admissible value.
FourSquare four_square(std::uint64_t n);

/// Floor of the square root, exact for all 64-bit inputs.
std::uint64_t isqrt(std::uint64_t n);

}  // namespace qca

#endif
