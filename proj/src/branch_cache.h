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

#ifndef QCA_SRC_BRANCH_CACHE_H
#define QCA_SRC_BRANCH_CACHE_H

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "qca/machine.h"

namespace qca::detail {

/// Register states up to a positive rational factor, stored as primitive
/// integer vectors whose first nonzero entry is positive. Branch
/// probabilities only depend on the direction of the unconditional vector,
/// so every engine that conditions on the current branch works on these.
class DirectionTable {
   public:
    int intern(std::vector<BigInt> dir);
    /// Canonical direction of a nonzero vector.
    int intern(const RVec &v);
    const std::vector<BigInt> &get(int id) const {
        return dirs_[id];
    }
    RVec as_vector(int id) const;
    std::size_t size() const noexcept {
        return dirs_.size();
    }

   private:
    struct Hash {
        std::size_t operator()(const std::vector<BigInt> &v) const noexcept;
    };
    std::vector<std::vector<BigInt>> dirs_;
    std::unordered_map<std::vector<BigInt>, int, Hash> index_;
};

/// Outcome weights of one superoperator applied to one direction.
struct Branching {
    std::vector<BigInt> weights;  // primitive integer vector, one per element
    BigInt total;
    std::vector<int> children;  // direction id per element, -1 for zero weight
    bool fits_u64 = false;
    std::vector<std::uint64_t> weights_u64;
    std::uint64_t total_u64 = 0;
    int positive = 0;
    std::size_t only = 0;  // the element when positive == 1
};

class BranchCache {
   public:
    explicit BranchCache(const MachineSpec &spec) : spec_(spec) {
    }
    DirectionTable &directions() noexcept {
        return dirs_;
    }
    const Branching &get(int op_index, int dir);
    /// Draws an element exactly as sample_weighted() would for these weights.
    std::size_t sample(const Branching &b, RandomSource &rng) const;

   private:
    const MachineSpec &spec_;
    DirectionTable dirs_;
    std::unordered_map<std::uint64_t, Branching> cache_;
};

}  // namespace qca::detail

#endif
