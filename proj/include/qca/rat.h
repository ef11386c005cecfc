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

#ifndef QCA_RAT_H
#define QCA_RAT_H

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace qca {

using BigInt = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Serialized as "num/den", or just "num" for integers.
class Rat {
   public:
    Rat() = default;
    Rat(long value) : v_(value) {
    }
    Rat(int value) : v_(value) {
    }
    Rat(const BigInt &num) : v_(num) {
    }
    Rat(const BigInt &num, const BigInt &den);
    static Rat from_mpq(mpq_class v);

    /// Parses "n", "-n", "n/d" (d may be non-canonical; the result is reduced).
    static Rat parse(std::string_view text);

    const mpq_class &mpq() const noexcept {
        return v_;
    }
    BigInt num() const {
        return v_.get_num();
    }
    BigInt den() const {
        return v_.get_den();
    }
    bool is_zero() const noexcept {
        return sgn(v_) == 0;
    }
    int sign() const noexcept {
        return sgn(v_);
    }
    bool is_integer() const {
        return v_.get_den() == 1;
    }

    std::string str() const;
    /// Display-only decimal rendering with `digits` significant digits.
    std::string decimal(int digits = 12) const;
    double to_double() const {
        return v_.get_d();
    }

    Rat &operator+=(const Rat &o) {
        v_ += o.v_;
        return *this;
    }
    Rat &operator-=(const Rat &o) {
        v_ -= o.v_;
        return *this;
    }
    Rat &operator*=(const Rat &o) {
        v_ *= o.v_;
        return *this;
    }
    Rat &operator/=(const Rat &o);

    friend Rat operator+(Rat a, const Rat &b) {
        return a += b;
    }
    friend Rat operator-(Rat a, const Rat &b) {
        return a -= b;
    }
    friend Rat operator*(Rat a, const Rat &b) {
        return a *= b;
    }
    friend Rat operator/(Rat a, const Rat &b) {
        return a /= b;
    }
    friend Rat operator-(const Rat &a) {
        return from_mpq(-a.v_);
    }

    friend bool operator==(const Rat &a, const Rat &b) {
        return cmp(a.v_, b.v_) == 0;
    }
    friend std::strong_ordering operator<=>(const Rat &a, const Rat &b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream &operator<<(std::ostream &out, const Rat &r) {
        return out << r.str();
    }

   private:
    mpq_class v_;
};

Rat pow(const Rat &base, std::uint64_t exponent);

}  // namespace qca

#endif
