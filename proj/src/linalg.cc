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

#include "qca/linalg.h"

#include <sstream>

#include "qca/errors.h"

namespace qca {

RVec::RVec(std::size_t dim) : entries_(dim) {
    if (dim == 0) {
        fail(ErrorKind::Structural, "vector dimension must be at least 1");
    }
}

RVec::RVec(std::initializer_list<Rat> entries) : RVec(std::vector<Rat>(entries)) {
}

RVec::RVec(std::vector<Rat> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
        fail(ErrorKind::Structural, "vector dimension must be at least 1");
    }
}

Rat RVec::norm2() const {
    mpq_class acc;
    for (const auto &e : entries_) {
        acc += e.mpq() * e.mpq();
    }
    return Rat::from_mpq(std::move(acc));
}

bool RVec::is_zero() const {
    for (const auto &e : entries_) {
        if (!e.is_zero()) {
            return false;
        }
    }
    return true;
}

RVec RVec::scaled(const Rat &factor) const {
    RVec out(*this);
    for (auto &e : out.entries_) {
        e *= factor;
    }
    return out;
}

std::string RVec::str() const {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        out << (i ? ", " : "") << entries_[i];
    }
    out << ")";
    return out.str();
}

RMat::RMat(std::size_t dim) : dim_(dim), cells_(dim * dim) {
    if (dim == 0) {
        fail(ErrorKind::Structural, "matrix dimension must be at least 1");
    }
}

RMat::RMat(std::initializer_list<std::initializer_list<Rat>> rows) : RMat(rows.size()) {
    std::size_t r = 0;
    for (const auto &row : rows) {
        if (row.size() != dim_) {
            fail(ErrorKind::Structural, "matrix rows must form a square grid");
        }
        std::size_t c = 0;
        for (const auto &x : row) {
            (*this)(r, c++) = x;
        }
        ++r;
    }
}

RMat RMat::identity(std::size_t dim) {
    RMat m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = Rat(1);
    }
    return m;
}

RMat RMat::transpose() const {
    RMat t(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

RMat RMat::scaled(const Rat &factor) const {
    RMat out(*this);
    for (auto &x : out.cells_) {
        x *= factor;
    }
    return out;
}

bool RMat::is_zero() const {
    for (const auto &x : cells_) {
        if (!x.is_zero()) {
            return false;
        }
    }
    return true;
}

RMat operator*(const RMat &a, const RMat &b) {
    if (a.dim_ != b.dim_) {
        fail(ErrorKind::Structural, "matrix dimension mismatch");
    }
    RMat out(a.dim_);
    for (std::size_t r = 0; r < a.dim_; ++r) {
        for (std::size_t c = 0; c < a.dim_; ++c) {
            mpq_class acc;
            for (std::size_t j = 0; j < a.dim_; ++j) {
                acc += a(r, j).mpq() * b(j, c).mpq();
            }
            out(r, c) = Rat::from_mpq(std::move(acc));
        }
    }
    return out;
}

RMat operator+(const RMat &a, const RMat &b) {
    if (a.dim_ != b.dim_) {
        fail(ErrorKind::Structural, "matrix dimension mismatch");
    }
    RMat out(a);
    for (std::size_t i = 0; i < out.cells_.size(); ++i) {
        out.cells_[i] += b.cells_[i];
    }
    return out;
}

RVec mat_apply(const RMat &m, const RVec &v) {
    if (m.dim() != v.dim()) {
        fail(ErrorKind::Structural, "matrix/vector dimension mismatch: " + std::to_string(m.dim()) +
                                        " vs " + std::to_string(v.dim()));
    }
    RVec out(v.dim());
    for (std::size_t r = 0; r < m.dim(); ++r) {
        mpq_class acc;
        for (std::size_t c = 0; c < m.dim(); ++c) {
            if (!m(r, c).is_zero()) {
                acc += m(r, c).mpq() * v[c].mpq();
            }
        }
        out[r] = Rat::from_mpq(std::move(acc));
    }
    return out;
}

RMat gram_sum(std::span<const RMat> elements) {
    if (elements.empty()) {
        fail(ErrorKind::Structural, "gram_sum of an empty element list");
    }
    const std::size_t d = elements.front().dim();
    RMat acc(d);
    for (const auto &e : elements) {
        if (e.dim() != d) {
            fail(ErrorKind::Structural, "operation elements differ in dimension");
        }
        acc = acc + e.transpose() * e;
    }
    return acc;
}

}  // namespace qca
