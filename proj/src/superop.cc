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

#include "qca/superop.h"

#include <algorithm>
#include <sstream>

#include "qca/errors.h"

namespace qca {

Superoperator::Superoperator(std::vector<OperationElement> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        fail(ErrorKind::Structural, "superoperator needs at least one operation element");
    }
    const std::size_t d = elements_.front().matrix.dim();
    for (const auto &e : elements_) {
        if (e.matrix.dim() != d) {
            fail(ErrorKind::Structural, "operation elements differ in dimension");
        }
    }
}

Superoperator Superoperator::identity(std::size_t dim, OutcomeLabel label) {
    return Superoperator({{std::move(label), RMat::identity(dim)}});
}

Superoperator Superoperator::initializer(std::size_t dim, std::size_t basis, OutcomeLabel label) {
    if (basis >= dim) {
        fail(ErrorKind::Structural, "initial basis index out of range");
    }
    std::vector<OperationElement> elements;
    for (std::size_t j = 0; j < dim; ++j) {
        RMat m(dim);
        m(basis, j) = Rat(1);
        elements.push_back({label, std::move(m)});
    }
    return Superoperator(std::move(elements));
}

std::vector<RMat> Superoperator::matrices() const {
    std::vector<RMat> out;
    out.reserve(elements_.size());
    for (const auto &e : elements_) {
        out.push_back(e.matrix);
    }
    return out;
}

std::vector<OutcomeLabel> Superoperator::labels() const {
    std::vector<OutcomeLabel> out;
    for (const auto &e : elements_) {
        out.push_back(e.outcome);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Superoperator compose(const Superoperator &after, const Superoperator &before) {
    if (after.dim() != before.dim()) {
        fail(ErrorKind::Structural, "cannot compose superoperators of different dimension");
    }
    std::vector<OperationElement> elements;
    for (const auto &a : after.elements()) {
        for (const auto &b : before.elements()) {
            RMat product = a.matrix * b.matrix;
            if (!product.is_zero()) {
                elements.push_back({a.outcome, std::move(product)});
            }
        }
    }
    if (elements.empty()) {
        fail(ErrorKind::Structural, "composition has no nonzero operation element");
    }
    return Superoperator(std::move(elements));
}

std::string ValidationReport::str() const {
    if (ok) {
        return "ok";
    }
    std::ostringstream out;
    out << "sum E^T E != I at";
    for (auto [r, c] : offending) {
        out << " (" << r + 1 << "," << c + 1 << ")=" << gram(r, c);
    }
    return out.str();
}

ValidationReport validate(const Superoperator &s) {
    ValidationReport report;
    const auto mats = s.matrices();
    report.gram = gram_sum(mats);
    for (std::size_t r = 0; r < s.dim(); ++r) {
        for (std::size_t c = 0; c < s.dim(); ++c) {
            if (report.gram(r, c) != Rat(r == c ? 1 : 0)) {
                report.offending.emplace_back(r, c);
            }
        }
    }
    report.ok = report.offending.empty();
    return report;
}

Rat OutcomeDistribution::total() const {
    Rat acc;
    for (const auto &o : outcomes) {
        acc += o.probability;
    }
    return acc;
}

Rat OutcomeDistribution::probability_of(const OutcomeLabel &label) const {
    Rat acc;
    for (const auto &o : outcomes) {
        if (o.label == label) {
            acc += o.probability;
        }
    }
    return acc;
}

OutcomeDistribution apply(const Superoperator &s, const QuantumState &psi) {
    if (s.dim() != psi.dim()) {
        fail(ErrorKind::Structural, "superoperator/state dimension mismatch: " + std::to_string(s.dim()) +
                                        " vs " + std::to_string(psi.dim()));
    }
    OutcomeDistribution dist;
    dist.outcomes.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto &e = s.elements()[i];
        QuantumState next{mat_apply(e.matrix, psi.vector)};
        Rat p = next.norm2();
        dist.outcomes.push_back({e.outcome, i, std::move(next), std::move(p)});
    }
    return dist;
}

namespace {

bool exact_sqrt(const BigInt &n, BigInt &root) {
    if (n < 0) {
        return false;
    }
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return root * root == n;
}

}  // namespace

NormalizedState normalize(const QuantumState &psi) {
    Rat n2 = psi.norm2();
    if (n2.is_zero()) {
        fail(ErrorKind::Degenerate, "cannot normalize a zero-probability branch");
    }
    BigInt rn, rd;
    if (exact_sqrt(n2.num(), rn) && exact_sqrt(n2.den(), rd)) {
        return {n2, psi.vector.scaled(Rat(rd, rn)), true};
    }
    return {n2, psi.vector, false};
}

QuantumState initialize(std::size_t basis_index, std::size_t dim) {
    if (basis_index >= dim) {
        fail(ErrorKind::Structural, "basis index " + std::to_string(basis_index) + " out of range for dimension " +
                                        std::to_string(dim));
    }
    RVec v(dim);
    v[basis_index] = Rat(1);
    return {std::move(v)};
}

}  // namespace qca
