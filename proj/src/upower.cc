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

#include "qca/upower.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>

#include "qca/errors.h"
#include "qca/explore.h"

namespace qca {

namespace {

RMat projector_q1(const Rat &amplitude) {
    RMat m(kPowerDim);
    m(0, 0) = amplitude;
    return m;
}

// Balanced product tree.
BigInt product(std::vector<BigInt> factors) {
    if (factors.empty()) {
        return BigInt(1);
    }
    while (factors.size() > 1) {
        std::size_t out = 0;
        for (std::size_t i = 0; i < factors.size(); i += 2) {
            factors[out++] = i + 1 < factors.size() ? BigInt(factors[i] * factors[i + 1]) : std::move(factors[i]);
        }
        factors.resize(out);
    }
    return std::move(factors[0]);
}

BigInt big(std::uint64_t v) {
    return BigInt(static_cast<unsigned long>(v));
}

}  // namespace

Superoperator accept_coin(const PowerParams &params) {
    const std::uint64_t k = static_cast<std::uint64_t>(params.k);
    const std::uint64_t odds = 2 * k * k + 1;
    const FourSquare success = four_square(odds);
    const FourSquare failure = four_square((odds - 1) * odds);
    std::vector<OperationElement> elements;
    for (auto c : {success.a, success.b, success.c, success.d}) {
        if (c != 0) {
            elements.push_back({"success", projector_q1(Rat(big(c), big(odds)))});
        }
    }
    for (auto c : {failure.a, failure.b, failure.c, failure.d}) {
        if (c != 0) {
            elements.push_back({"fail", projector_q1(Rat(big(c), big(odds)))});
        }
    }
    RMat rest(kPowerDim);
    rest(1, 1) = Rat(1);
    rest(2, 2) = Rat(1);
    elements.push_back({"fail", std::move(rest)});
    return Superoperator(std::move(elements));
}

MachineSpec build_upower(const PowerParams &params, const UpowerOptions &options) {
    MachineBuilder b("upower", MachineKind::TwoWayQcca, "a");
    b.set_basis({"q1", "q2", "q3"}, 0);
    const SymbolId a = b.symbol('a');
    constexpr auto Z = CounterStatus::Zero;
    constexpr auto N = CounterStatus::Nonzero;

    const StateId start = b.state("start");
    const StateId scan = b.state("scan");
    const StateId check_one = b.state("check-one");
    const StateId to_loop = b.state("to-loop");
    const StateId round = b.state("round");
    const StateId locate = b.state("locate");
    const StateId feed_a = b.state("feed-a");
    const StateId feed_a_last = b.state("feed-a-last");
    const StateId feed_b = b.state("feed-b");
    const StateId feed_b_last = b.state("feed-b-last");
    const StateId abort_a = b.state("abort-a");
    const StateId coin_first = b.state("coin-first");
    const StateId coin = b.state("coin");
    const StateId coin_fail = b.state("coin-fail");
    const StateId drain = b.state("drain");
    const StateId drain_back = b.state("drain-back");
    const StateId accept = b.state("accept");
    const StateId reject = b.state("reject");
    b.set_start(start).set_accept(accept).set_reject(reject);

    const auto silent = Superoperator::identity(kPowerDim, "-");
    const auto reset = Superoperator::initializer(kPowerDim, 0, "-");
    const auto round_start = compose(power_left_end_op(), reset);
    const auto coin_op = accept_coin(params);
    const auto coin_after_reset = compose(coin_op, reset);

    auto go = [](StateId s, Move mv, int dc = 0) { return Transition{s, mv, dc, false}; };
    const Transition halt_accept{accept, Move::Stay, 0, false};
    const Transition halt_reject{reject, Move::Stay, 0, false};
    const Transition restart{start, Move::Stay, 0, true};
    constexpr auto L = Move::Left;
    constexpr auto R = Move::Right;

    // One superoperator with a single silent outcome.
    auto single = [&](StateId s, SymbolId sym, std::initializer_list<CounterStatus> statuses, const Superoperator &op,
                      Transition t) {
        for (auto st : statuses) {
            b.quantum(s, sym, st, op);
            b.classical(s, sym, st, "-", t);
        }
    };

    // Shape and the a^1 special case; the loop starts with counter 1.
    single(start, kLeftEnd, {Z}, silent, go(scan, R));
    single(scan, a, {Z}, silent, go(check_one, R));
    single(scan, kRightEnd, {Z}, silent, halt_reject);
    single(check_one, a, {Z}, silent, go(to_loop, L));
    single(check_one, kRightEnd, {Z}, silent, options.exponent_from_zero ? halt_accept : go(to_loop, L));
    single(to_loop, a, {Z}, silent, go(to_loop, L));
    single(to_loop, kLeftEnd, {Z}, silent, go(round, R, +1));

    // Inner round start at ¢, shared by every state that ends a walk there.
    auto round_start_at = [&](StateId s) {
        b.quantum(s, kLeftEnd, N, round_start);
        b.classical(s, kLeftEnd, N, "1", go(locate, R));
        b.classical(s, kLeftEnd, N, "2", go(round, R));
    };

    single(round, a, {Z, N}, reset, go(round, L));
    round_start_at(round);

    single(locate, a, {N}, silent, go(locate, R, -1));
    single(locate, a, {Z}, silent, go(feed_a, L));
    single(locate, kRightEnd, {Z}, silent, go(feed_a_last, L));

    for (auto [fa, fb] : {std::pair{feed_a, feed_b}, std::pair{feed_a_last, feed_b_last}}) {
        for (auto st : {Z, N}) {
            b.quantum(fa, a, st, power_a_op());
            b.classical(fa, a, st, "1", go(fa, L, +1));
            b.classical(fa, a, st, "2", go(abort_a, L, +1));
        }
        single(fa, kLeftEnd, {N}, silent, go(fb, R));

        b.quantum(fb, a, N, power_b_op());
        b.classical(fb, a, N, "1", go(fb, R));
        b.classical(fb, a, N, "2", go(round, L));
        b.classical(fb, a, N, "3", go(round, L));

        b.quantum(fb, kRightEnd, N, power_right_end_op(params));
        b.classical(fb, kRightEnd, N, "1", go(coin_first, L));
        b.classical(fb, kRightEnd, N, "2", fb == feed_b_last ? halt_reject : go(round, L, +1));
        b.classical(fb, kRightEnd, N, "3", go(round, L));
        b.classical(fb, kRightEnd, N, "4", go(round, L));
    }

    single(abort_a, a, {Z, N}, reset, go(abort_a, L, +1));
    round_start_at(abort_a);

    // Accept-coin sweep from $ back to ¢.
    for (auto [s, op] : {std::pair{coin_first, &coin_after_reset}, std::pair{coin, &coin_op}}) {
        b.quantum(s, a, N, *op);
        b.classical(s, a, N, "success", go(coin, L));
        b.classical(s, a, N, "fail", go(coin_fail, L));
    }
    single(coin, kLeftEnd, {N}, silent, halt_accept);

    // Empty the counter, return to ¢, restart.
    single(coin_fail, a, {N}, reset, go(coin_fail, L));
    single(coin_fail, kLeftEnd, {N}, reset, go(drain, R, -1));
    single(drain, a, {N}, reset, go(drain, R, -1));
    single(drain, a, {Z}, reset, go(drain_back, L));
    single(drain_back, a, {Z}, reset, go(drain_back, L));
    single(drain_back, kLeftEnd, {Z}, reset, restart);

    return b.build();
}

bool is_upower_member(std::uint64_t m, const UpowerOptions &options) {
    if (m == 0) {
        return false;
    }
    if (m == 1) {
        return options.exponent_from_zero;
    }
    return std::has_single_bit(m);
}

UpowerAnalysis analyze_upower(std::uint64_t m, const PowerParams &params, const UpowerOptions &options) {
    UpowerAnalysis r;
    r.m = m;
    r.member = is_upower_member(m, options);
    if (m == 0) {
        r.pass_reject = Rat(1);
    } else if (m == 1 && options.exponent_from_zero) {
        r.pass_accept = Rat(1);
    } else {
        // Inner run i accepts with q_i = 1 / (1 + 2k^2 (2^i - m)^2), the
        // restart-free ratio of its round probabilities. The product of the
        // rejection factors is kept unreduced until the end.
        const std::uint64_t k = static_cast<std::uint64_t>(params.k);
        const BigInt two_k2 = big(2 * k * k);
        std::vector<BigInt> nums, dens;
        std::uint64_t bits = 0;
        for (std::uint64_t i = 1; i <= m; ++i) {
            BigInt gap;
            mpz_ui_pow_ui(gap.get_mpz_t(), 2, i);
            gap -= big(m);
            BigInt ratio = two_k2 * gap * gap;
            bits += mpz_sizeinbase(ratio.get_mpz_t(), 2);
            if (bits > kUpowerExactBitLimit) {
                fail(ErrorKind::Budget, "exact UPOWER analysis of a^" + std::to_string(m) +
                                            " needs more than 2^24 bits per rational; use sample mode");
            }
            r.loop_accept.push_back(Rat(BigInt(1), ratio + 1));
            dens.push_back(ratio + 1);
            nums.push_back(std::move(ratio));
            if (nums.back() == 0) {
                break;
            }
        }
        const BigInt rejected_num = product(std::move(nums));
        const BigInt rejected_den = product(std::move(dens));
        const Rat all_rejected(rejected_num, rejected_den);
        const Rat coin_all = pow(Rat(big(1), big(2 * k * k + 1)), m);
        const Rat exited = Rat(1) - all_rejected;
        r.pass_reject = all_rejected;
        r.pass_accept = exited * coin_all;
        r.pass_restart = exited - r.pass_accept;
    }
    r.overall = solve_restart(r.pass_accept, r.pass_reject);
    return r;
}

std::int64_t profile_member_space(std::uint64_t m, const PowerParams &params, const UpowerOptions &options) {
    const MachineSpec spec = build_upower(params, options);
    const Tape tape = Tape::from_runs(spec, {{'a', m}});
    RandomSource unused(0);
    return profile_space(spec, tape, ProfileMode::ExactSchedule, unused);
}

std::int64_t predicted_max_counter(std::uint64_t m, const UpowerOptions &options) {
    if (m == 0 || (m == 1 && options.exponent_from_zero)) {
        return 0;
    }
    if (m >= 2 && std::has_single_bit(m)) {
        return std::countr_zero(m);
    }
    return static_cast<std::int64_t>(m);
}

// ---------------------------------------------------------------------------
// Families

namespace {

std::uint64_t parse_u64(std::string_view text, std::string_view whole) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size()) {
        fail(ErrorKind::Family, "malformed number in family '" + std::string(whole) + "'");
    }
    return v;
}

std::vector<std::int64_t> parse_coefficients(std::string_view text, std::string_view whole) {
    std::vector<std::int64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
        if (piece.empty() || ec != std::errc() || p != piece.data() + piece.size()) {
            fail(ErrorKind::Family, "malformed polynomial in family '" + std::string(whole) + "'");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    while (out.size() > 1 && out.back() == 0) {
        out.pop_back();
    }
    if (out.back() <= 0) {
        fail(ErrorKind::Family, "polynomial must have a positive leading coefficient in '" + std::string(whole) +
                                    "'");
    }
    return out;
}

FamilySpec parse_family_impl(std::string_view text, std::string_view whole) {
    FamilySpec f;
    auto colon = text.find(':');
    const auto head = text.substr(0, colon);
    const auto rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    if (head == "upower" && colon == std::string_view::npos) {
        f.tag = FamilyTag::UPower;
    } else if (head == "poly" && !rest.empty()) {
        f.tag = FamilyTag::Poly;
        f.coefficients = parse_coefficients(rest, whole);
    } else if (head == "powerbase" && !rest.empty()) {
        f.tag = FamilyTag::PowerBase;
        f.base = parse_u64(rest, whole);
        if (f.base < 2) {
            fail(ErrorKind::Family, "powerbase needs a base of at least 2");
        }
    } else if (head == "polypower" && !rest.empty()) {
        f.tag = FamilyTag::PolyPower;
        auto last = rest.rfind(':');
        if (last == std::string_view::npos) {
            fail(ErrorKind::Family, "polypower needs coefficients and a base: '" + std::string(whole) + "'");
        }
        f.coefficients = parse_coefficients(rest.substr(0, last), whole);
        f.base = parse_u64(rest.substr(last + 1), whole);
        if (f.base <= 2) {
            fail(ErrorKind::Family, "polypower needs a base greater than 2");
        }
    } else if (head == "iter" && !rest.empty()) {
        f.tag = FamilyTag::Iter;
        auto next = rest.find(':');
        if (next == std::string_view::npos) {
            fail(ErrorKind::Family, "iter needs a base and an inner family: '" + std::string(whole) + "'");
        }
        f.base = parse_u64(rest.substr(0, next), whole);
        if (f.base < 2) {
            fail(ErrorKind::Family, "iter needs a base of at least 2");
        }
        f.inner = std::make_shared<const FamilySpec>(parse_family_impl(rest.substr(next + 1), whole));
    } else {
        fail(ErrorKind::Family, "unknown family '" + std::string(whole) + "'");
    }
    return f;
}

std::string poly_string(const std::vector<std::int64_t> &c, const std::string &var) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) {
            continue;
        }
        out << (first ? (c[i] < 0 ? "-" : "") : (c[i] < 0 ? " - " : " + "));
        const auto mag = c[i] < 0 ? -c[i] : c[i];
        if (mag != 1 || i == 0) {
            out << mag;
        }
        if (i >= 1) {
            out << var << (i > 1 ? "^" + std::to_string(i) : "");
        }
        first = false;
    }
    return out.str();
}

std::string exponent_string(const FamilySpec &f, const std::string &var) {
    switch (f.tag) {
        case FamilyTag::UPower:
            return "2^" + var;
        case FamilyTag::Poly:
            return poly_string(f.coefficients, var);
        case FamilyTag::PowerBase:
            return std::to_string(f.base) + "^" + var;
        case FamilyTag::PolyPower:
            return "(" + poly_string(f.coefficients, var) + ")·" + std::to_string(f.base) + "^" + var;
        case FamilyTag::Iter:
            return exponent_string(*f.inner, "(" + std::to_string(f.base) + "^" + var + ")");
    }
    return "?";
}

// Witness value f(n), or nullopt when it exceeds `cap`.
std::optional<BigInt> witness(const FamilySpec &f, const BigInt &n, const BigInt &cap) {
    const std::size_t cap_bits = mpz_sizeinbase(cap.get_mpz_t(), 2);
    auto power = [&](std::uint64_t base, const BigInt &e) -> std::optional<BigInt> {
        // base >= 2, so base^e > cap as soon as e exceeds cap's bit length.
        if (e > BigInt(static_cast<unsigned long>(cap_bits))) {
            return std::nullopt;
        }
        BigInt v;
        mpz_ui_pow_ui(v.get_mpz_t(), base, e.get_ui());
        if (v > cap) {
            return std::nullopt;
        }
        return v;
    };
    auto poly = [&](const std::vector<std::int64_t> &c) {
        BigInt v = 0;
        for (std::size_t i = c.size(); i-- > 0;) {
            v = v * n + BigInt(static_cast<long>(c[i]));
        }
        if (v <= 0) {
            fail(ErrorKind::Family, "polynomial " + poly_string(c, "n") + " is not positive at n = " + n.get_str());
        }
        return v;
    };
    switch (f.tag) {
        case FamilyTag::UPower:
            return power(2, n);
        case FamilyTag::Poly: {
            BigInt v = poly(f.coefficients);
            return v > cap ? std::nullopt : std::optional<BigInt>(v);
        }
        case FamilyTag::PowerBase:
            return power(f.base, n);
        case FamilyTag::PolyPower: {
            BigInt p = poly(f.coefficients);
            auto e = power(f.base, n);
            if (!e || p * *e > cap) {
                return std::nullopt;
            }
            return p * *e;
        }
        case FamilyTag::Iter: {
            auto arg = power(f.base, n);
            if (!arg) {
                return std::nullopt;
            }
            return witness(*f.inner, *arg, cap);
        }
    }
    return std::nullopt;
}

// Index beyond which the witness is strictly increasing in n.
std::uint64_t monotone_from(const FamilySpec &f) {
    if (f.tag == FamilyTag::Iter) {
        return monotone_from(*f.inner);
    }
    if (f.tag != FamilyTag::Poly && f.tag != FamilyTag::PolyPower) {
        return 0;
    }
    // Real roots of p' lie below 1 + max |i c_i| / (d c_d).
    const auto &c = f.coefficients;
    const std::size_t d = c.size() - 1;
    if (d == 0) {
        return 0;
    }
    BigInt worst = 0;
    for (std::size_t i = 1; i < d; ++i) {
        BigInt t = BigInt(static_cast<long>(c[i])) * static_cast<long>(i);
        if (t < 0) {
            t = -t;
        }
        worst = std::max(worst, t);
    }
    const BigInt lead = BigInt(static_cast<long>(c[d])) * static_cast<long>(d);
    const BigInt bound = (worst + lead - 1) / lead + 2;
    return bound.fits_ulong_p() ? bound.get_ui() : ~std::uint64_t{0};
}

bool constant_witness(const FamilySpec &f) {
    if (f.tag == FamilyTag::Iter) {
        return constant_witness(*f.inner);
    }
    return f.tag == FamilyTag::Poly && f.coefficients.size() == 1;
}

std::uint64_t first_index(const FamilySpec &f) {
    return f.tag == FamilyTag::UPower && f.exponent_from_zero ? 0 : 1;
}

std::optional<std::uint64_t> member_index(std::uint64_t length, const FamilySpec &f) {
    const BigInt cap = big(length);
    const std::uint64_t settle = monotone_from(f);
    for (std::uint64_t n = first_index(f);; ++n) {
        auto v = witness(f, big(n), cap);
        if (v && *v == cap) {
            return n;
        }
        if (constant_witness(f) || (!v && n >= settle)) {
            return std::nullopt;
        }
    }
}

}  // namespace

FamilySpec parse_family(std::string_view text) {
    return parse_family_impl(text, text);
}

std::string describe(const FamilySpec &family) {
    return "{ a^(" + exponent_string(family, "n") + ") : n >= " + std::to_string(first_index(family)) + " }";
}

bool is_member(std::uint64_t length, const FamilySpec &family) {
    return member_index(length, family).has_value();
}

bool is_member(std::string_view w, const FamilySpec &family) {
    if (!w.empty() && std::any_of(w.begin(), w.end(), [&](char c) { return c != w.front(); })) {
        fail(ErrorKind::Input, "membership needs a unary word");
    }
    return is_member(static_cast<std::uint64_t>(w.size()), family);
}

FamilyBounds family_bounds(const FamilySpec &family, const PowerParams &params, std::optional<std::uint64_t> length) {
    FamilyBounds out;
    out.language = describe(family);
    out.error_bound = error_bound(params.k);
    const bool geometric = family.tag == FamilyTag::Iter;
    out.marking = geometric ? "geometric (1, " + std::to_string(family.base) + ", " + std::to_string(family.base) +
                                  "^2, ...)"
                            : "linear (1, 2, 3, ...)";
    switch (family.tag) {
        case FamilyTag::UPower:
            out.member_space = "log2 |w|";
            break;
        case FamilyTag::Poly:
            out.member_space = "n with " + poly_string(family.coefficients, "n") + " = |w|";
            break;
        case FamilyTag::PowerBase:
            out.member_space = "log_" + std::to_string(family.base) + " |w|";
            break;
        case FamilyTag::PolyPower:
            out.member_space = "n with " + exponent_string(family, "n") + " = |w|";
            break;
        case FamilyTag::Iter:
            out.member_space = std::to_string(family.base) + "^n with " + exponent_string(family, "n") + " = |w|";
            break;
    }
    if (length) {
        if (auto n = member_index(*length, family)) {
            out.witness = *n;
            if (geometric) {
                BigInt c;
                mpz_ui_pow_ui(c.get_mpz_t(), family.base, *n);
                out.member_counter = c;
            } else {
                out.member_counter = big(*n);
            }
        }
    }
    return out;
}

}  // namespace qca
