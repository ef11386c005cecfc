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

#ifndef QCA_LINALG_H
#define QCA_LINALG_H

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qca/rat.h"

namespace qca {

/// Dense rational column vector. Dimension is fixed at construction.
class RVec {
   public:
    explicit RVec(std::size_t dim);
    RVec(std::initializer_list<Rat> entries);
    explicit RVec(std::vector<Rat> entries);

    std::size_t dim() const noexcept {
        return entries_.size();
    }
    const Rat &operator[](std::size_t i) const {
        return entries_[i];
    }
    Rat &operator[](std::size_t i) {
        return entries_[i];
    }
    std::span<const Rat> entries() const noexcept {
        return entries_;
    }

    /// <v|v>. Entries are real, so this is the plain sum of squares.
    Rat norm2() const;
    bool is_zero() const;

    RVec scaled(const Rat &factor) const;
    std::string str() const;

    friend bool operator==(const RVec &, const RVec &) = default;

   private:
    std::vector<Rat> entries_;
};

/// Dense square rational matrix, row-major.
class RMat {
   public:
    explicit RMat(std::size_t dim);
    RMat(std::initializer_list<std::initializer_list<Rat>> rows);

    static RMat identity(std::size_t dim);

    std::size_t dim() const noexcept {
        return dim_;
    }
    const Rat &operator()(std::size_t r, std::size_t c) const {
        return cells_[r * dim_ + c];
    }
    Rat &operator()(std::size_t r, std::size_t c) {
        return cells_[r * dim_ + c];
    }

    RMat transpose() const;
    RMat scaled(const Rat &factor) const;
    bool is_zero() const;

    friend RMat operator*(const RMat &a, const RMat &b);
    friend RMat operator+(const RMat &a, const RMat &b);
    friend bool operator==(const RMat &, const RMat &) = default;

   private:
    std::size_t dim_;
    std::vector<Rat> cells_;
};

/// Exact M·v.
RVec mat_apply(const RMat &m, const RVec &v);

/// Exact sum of E^T E over the list (all entries are real, so E^† = E^T).
RMat gram_sum(std::span<const RMat> elements);

}  // namespace qca

#endif
