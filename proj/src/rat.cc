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

#include "qca/rat.h"

#include <gmp.h>

#include <vector>

#include "qca/errors.h"

namespace qca {

Rat::Rat(const BigInt &num, const BigInt &den) {
    if (den == 0) {
        fail(ErrorKind::Structural, "rational with zero denominator");
    }
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat Rat::from_mpq(mpq_class v) {
    v.canonicalize();
    Rat r;
    r.v_ = std::move(v);
    return r;
}

namespace {

BigInt parse_int(std::string_view text, std::string_view whole) {
    std::size_t i = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
        i = 1;
    }
    if (i == text.size()) {
        fail(ErrorKind::Parse, "malformed rational '" + std::string(whole) + "'");
    }
    for (std::size_t j = i; j < text.size(); ++j) {
        if (text[j] < '0' || text[j] > '9') {
            fail(ErrorKind::Parse, "malformed rational '" + std::string(whole) + "'");
        }
    }
    std::string digits(text[0] == '+' ? text.substr(1) : text);
    return BigInt(digits, 10);
}

}  // namespace

Rat Rat::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rat(parse_int(text, text));
    }
    auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
        fail(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
    }
    BigInt num = parse_int(text.substr(0, slash), text);
    BigInt den = parse_int(den_text, text);
    if (den == 0) {
        fail(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    }
    return Rat(num, den);
}

std::string Rat::str() const {
    if (is_integer()) {
        return v_.get_num().get_str();
    }
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rat::decimal(int digits) const {
    mpf_class f(v_, 512);
    std::vector<char> buf(64 + digits);
    int n = gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
    if (n >= static_cast<int>(buf.size())) {
        buf.resize(n + 1);
        gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
    }
    return std::string(buf.data());
}

Rat &Rat::operator/=(const Rat &o) {
    if (o.is_zero()) {
        fail(ErrorKind::Structural, "division by zero");
    }
    v_ /= o.v_;
    return *this;
}

Rat pow(const Rat &base, std::uint64_t exponent) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.mpq().get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.mpq().get_den_mpz_t(), exponent);
    return Rat(num, den);
}

}  // namespace qca
