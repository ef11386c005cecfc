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

#include "branch_cache.h"

#include "qca/errors.h"

namespace qca::detail {

std::size_t DirectionTable::Hash::operator()(const std::vector<BigInt> &v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto &x : v) {
        const std::size_t limb = mpz_size(x.get_mpz_t()) ? mpz_getlimbn(x.get_mpz_t(), 0) : 0;
        h ^= limb + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= static_cast<std::size_t>(mpz_size(x.get_mpz_t())) * 31 + static_cast<std::size_t>(sgn(x) + 1);
    }
    return h;
}

int DirectionTable::intern(std::vector<BigInt> dir) {
    auto it = index_.find(dir);
    if (it != index_.end()) {
        return it->second;
    }
    const int id = static_cast<int>(dirs_.size());
    index_.emplace(dir, id);
    dirs_.push_back(std::move(dir));
    return id;
}

int DirectionTable::intern(const RVec &v) {
    BigInt l = 1;
    for (const auto &x : v.entries()) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.mpq().get_den_mpz_t());
    }
    std::vector<BigInt> dir;
    dir.reserve(v.dim());
    BigInt g = 0;
    int lead = 0;
    for (const auto &x : v.entries()) {
        BigInt n = x.num() * (l / x.den());
        if (lead == 0) {
            lead = sgn(n);
        }
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        dir.push_back(std::move(n));
    }
    if (g == 0) {
        fail(ErrorKind::Degenerate, "zero vector has no direction");
    }
    if (lead < 0) {
        g = -g;
    }
    for (auto &x : dir) {
        x /= g;
    }
    return intern(std::move(dir));
}

RVec DirectionTable::as_vector(int id) const {
    const auto &d = dirs_[id];
    std::vector<Rat> entries;
    entries.reserve(d.size());
    for (const auto &x : d) {
        entries.emplace_back(x);
    }
    return RVec(std::move(entries));
}

const Branching &BranchCache::get(int op_index, int dir) {
    const std::uint64_t key = (static_cast<std::uint64_t>(op_index) << 32) | static_cast<std::uint32_t>(dir);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
        return it->second;
    }
    const Superoperator &op = spec_.op(op_index);
    const RVec u = dirs_.as_vector(dir);
    Branching b;
    std::vector<Rat> norms;
    std::vector<RVec> images;
    norms.reserve(op.size());
    images.reserve(op.size());
    for (const auto &e : op.elements()) {
        images.push_back(mat_apply(e.matrix, u));
        norms.push_back(images.back().norm2());
    }
    b.weights = integer_weights(norms);
    b.total = 0;
    for (std::size_t i = 0; i < op.size(); ++i) {
        b.total += b.weights[i];
        if (b.weights[i] > 0) {
            ++b.positive;
            b.only = i;
            b.children.push_back(dirs_.intern(images[i]));
        } else {
            b.children.push_back(-1);
        }
    }
    if (b.positive == 0) {
        fail(ErrorKind::Degenerate, "superoperator annihilates the register state");
    }
    b.fits_u64 = b.total.fits_ulong_p();
    if (b.fits_u64) {
        b.total_u64 = b.total.get_ui();
        for (const auto &w : b.weights) {
            b.weights_u64.push_back(w.get_ui());
        }
    }
    return cache_.emplace(key, std::move(b)).first->second;
}

std::size_t BranchCache::sample(const Branching &b, RandomSource &rng) const {
    if (b.positive == 1) {
        return b.only;
    }
    if (!b.fits_u64) {
        return sample_weighted(b.weights, rng);
    }
    std::uint64_t r = rng.uniform_below(b.total_u64);
    for (std::size_t i = 0; i < b.weights_u64.size(); ++i) {
        if (r < b.weights_u64[i]) {
            return i;
        }
        r -= b.weights_u64[i];
    }
    return b.only;
}

}  // namespace qca::detail
