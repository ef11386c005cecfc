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

#include "qca/power.h"

#include "qca/errors.h"

namespace qca {

namespace {

const Rat kHalf(1, 2);

std::uint64_t checked_k(std::int64_t k) {
    if (k < 1) {
        fail(ErrorKind::Parameter, "k must be at least 1, got " + std::to_string(k));
    }
    if (k > (std::int64_t{1} << 28)) {
        fail(ErrorKind::Parameter, "k is too large");
    }
    return static_cast<std::uint64_t>(k);
}

}  // namespace

PowerParams PowerParams::make(std::int64_t k) {
    const std::uint64_t uk = checked_k(k);
    return PowerParams{k, four_square(4 * uk * uk - 1)};
}

PowerParams PowerParams::with(std::int64_t k, FourSquare ks) {
    const std::uint64_t uk = checked_k(k);
    if (ks.a * ks.a + ks.b * ks.b + ks.c * ks.c + ks.d * ks.d != 4 * uk * uk - 1) {
        fail(ErrorKind::Parameter, "k1^2 + k2^2 + k3^2 + k4^2 must equal 4k^2 - 1");
    }
    ks.target = 4 * uk * uk - 1;
    return PowerParams{k, ks};
}

Superoperator power_left_end_op() {
    RMat e1{{1, 0, 0}, {1, 0, 0}, {0, 0, 2}};
    RMat e2{{1, 0, 0}, {1, 0, 0}, {0, 2, 0}};
    return Superoperator({{"1", e1.scaled(kHalf)}, {"2", e2.scaled(kHalf)}});
}

Superoperator power_a_op() {
    RMat e1{{1, 0, 0}, {0, 2, 0}, {0, 0, 2}};
    RMat e2{{1, 0, 0}, {1, 0, 0}, {1, 0, 0}};
    return Superoperator({{"1", e1.scaled(kHalf)}, {"2", e2.scaled(kHalf)}});
}

Superoperator power_b_op() {
    RMat e1{{1, 0, 0}, {0, 1, 0}, {1, 0, 1}};
    RMat e2{{1, 0, -1}, {1, 0, 0}, {0, 1, 1}};
    RMat e3{{0, 1, -1}, {0, 1, 0}, {0, 0, 0}};
    return Superoperator({{"1", e1.scaled(kHalf)}, {"2", e2.scaled(kHalf)}, {"3", e3.scaled(kHalf)}});
}

Superoperator power_right_end_op(const PowerParams &params) {
    const long k = static_cast<long>(params.k);
    const Rat scale(BigInt(1), BigInt(2 * k));
    const auto &ks = params.ks;
    auto L = [](std::uint64_t v) { return Rat(BigInt(static_cast<unsigned long>(v))); };
    RMat e1{{1, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    RMat e2{{0, 0, 0}, {0, k, -k}, {0, k, -k}};
    RMat e3{{L(ks.a), 0, 0}, {L(ks.b), 0, 0}, {L(ks.c), 0, 0}};
    RMat e4{{L(ks.d), 0, 0}, {0, k, k}, {0, k, k}};
    return Superoperator(
        {{"1", e1.scaled(scale)}, {"2", e2.scaled(scale)}, {"3", e3.scaled(scale)}, {"4", e4.scaled(scale)}});
}

MachineSpec build_power(const PowerParams &params) {
    MachineBuilder b("power", MachineKind::RestartingRealtimeQcfa, "ab");
    b.set_basis({"q1", "q2", "q3"}, 0);
    const SymbolId a = b.symbol('a'), bb = b.symbol('b');
    const StateId start = b.state("start");
    const StateId first_a = b.state("first-a");
    const StateId in_a = b.state("in-a");
    const StateId in_b = b.state("in-b");
    // Same shape checks after the round has ended without a decision.
    const StateId skip_first_a = b.state("skip-first-a");
    const StateId skip_in_a = b.state("skip-in-a");
    const StateId skip_in_b = b.state("skip-in-b");
    const StateId accept = b.state("accept");
    const StateId reject = b.state("reject");
    b.set_start(start).set_accept(accept).set_reject(reject);

    const auto silent = Superoperator::identity(kPowerDim, "-");
    const Transition to_reject{reject, Move::Stay, 0, false};
    const Transition restart{start, Move::Stay, 0, true};
    auto right = [](StateId s) { return Transition{s, Move::Right, 0, false}; };
    auto reject_on = [&](StateId s, SymbolId sym) {
        b.quantum(s, sym, CounterStatus::Zero, silent);
        b.classical(s, sym, CounterStatus::Zero, "-", to_reject);
    };
    auto silent_move = [&](StateId s, SymbolId sym, StateId to) {
        b.quantum(s, sym, CounterStatus::Zero, silent);
        b.classical(s, sym, CounterStatus::Zero, "-", right(to));
    };
    auto on = [&](StateId s, SymbolId sym, Superoperator op, std::initializer_list<std::pair<const char *, Transition>> ts) {
        b.quantum(s, sym, CounterStatus::Zero, std::move(op));
        for (const auto &[label, t] : ts) {
            b.classical(s, sym, CounterStatus::Zero, label, t);
        }
    };

    on(start, kLeftEnd, power_left_end_op(), {{"1", right(first_a)}, {"2", right(skip_first_a)}});

    on(first_a, a, power_a_op(), {{"1", right(in_a)}, {"2", right(skip_in_a)}});
    reject_on(first_a, bb);
    reject_on(first_a, kRightEnd);

    on(in_a, a, power_a_op(), {{"1", right(in_a)}, {"2", right(skip_in_a)}});
    on(in_a, bb, power_b_op(), {{"1", right(in_b)}, {"2", right(skip_in_b)}, {"3", right(skip_in_b)}});
    reject_on(in_a, kRightEnd);

    on(in_b, bb, power_b_op(), {{"1", right(in_b)}, {"2", right(skip_in_b)}, {"3", right(skip_in_b)}});
    reject_on(in_b, a);
    on(in_b, kRightEnd, power_right_end_op(params),
       {{"1", Transition{accept, Move::Stay, 0, false}}, {"2", to_reject}, {"3", restart}, {"4", restart}});

    silent_move(skip_first_a, a, skip_in_a);
    reject_on(skip_first_a, bb);
    reject_on(skip_first_a, kRightEnd);

    silent_move(skip_in_a, a, skip_in_a);
    silent_move(skip_in_a, bb, skip_in_b);
    reject_on(skip_in_a, kRightEnd);

    silent_move(skip_in_b, bb, skip_in_b);
    reject_on(skip_in_b, a);
    b.quantum(skip_in_b, kRightEnd, CounterStatus::Zero, silent);
    b.classical(skip_in_b, kRightEnd, CounterStatus::Zero, "-", restart);

    return b.build();
}

namespace {

BigInt gap(std::uint64_t m, std::uint64_t n) {
    BigInt two_m;
    mpz_ui_pow_ui(two_m.get_mpz_t(), 2, m);
    return two_m - BigInt(static_cast<unsigned long>(n));
}

RoundProbabilities closed_form(std::uint64_t quarter_exponent, std::uint64_t m, std::uint64_t n,
                               const PowerParams &params) {
    if (m < 1 || n < 1) {
        fail(ErrorKind::Parameter, "closed forms need m, n >= 1");
    }
    const Rat base = pow(Rat(1, 4), quarter_exponent);
    const BigInt k = static_cast<long>(params.k);
    const BigInt d = gap(m, n);
    return {base / Rat(k * k), base * Rat(2 * d * d)};
}

}  // namespace

RoundProbabilities round_closed_form(std::uint64_t m, std::uint64_t n, const PowerParams &params) {
    return closed_form(m + n + 2, m, n, params);
}

RoundProbabilities published_round_closed_form(std::uint64_t m, std::uint64_t n, const PowerParams &params) {
    return closed_form(m + n, m, n, params);
}

Rat error_bound(std::int64_t k) {
    const std::uint64_t uk = checked_k(k);
    const BigInt two_k2 = BigInt(2) * BigInt(static_cast<unsigned long>(uk * uk));
    return Rat(two_k2, two_k2 + 1);
}

RestartSolution power_overall(std::uint64_t m, std::uint64_t n, const PowerParams &params) {
    const auto r = round_closed_form(m, n, params);
    return solve_restart(r.p_accept, r.p_reject);
}

}  // namespace qca
