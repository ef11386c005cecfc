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

#include "qca/four_square.h"

#include <algorithm>
#include <cmath>

#include "qca/errors.h"

namespace qca {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r > n / r) {
        --r;
    }
    while ((r + 1) <= n / (r + 1)) {
        ++r;
    }
    return r;
}

FourSquare four_square(std::uint64_t n) {
    for (std::uint64_t a = isqrt(n);; --a) {
        const std::uint64_t ra = n - a * a;
        for (std::uint64_t b = std::min(a, isqrt(ra));; --b) {
            const std::uint64_t rb = ra - b * b;
            for (std::uint64_t c = std::min(b, isqrt(rb));; --c) {
                const std::uint64_t rc = rb - c * c;
                const std::uint64_t d = isqrt(rc);
                if (rc > c * c) {
                    break;  // d would exceed c, and only gets worse as c shrinks
                }
                if (d * d == rc) {
                    return FourSquare{a, b, c, d, n};
                }
                if (c == 0) {
                    break;
                }
            }
            if (b == 0) {
                break;
            }
        }
        if (a == 0) {
            break;
        }
    }
    fail(ErrorKind::Structural, "no four-square decomposition found for " + std::to_string(n));
}

}  // namespace qca
