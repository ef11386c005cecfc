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

#ifndef QCA_SUPEROP_H
#define QCA_SUPEROP_H

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qca/linalg.h"

namespace qca {

using OutcomeLabel = std::string;

/// Unconditional state vector of the quantum register. Its squared norm is
/// the probability of the branch that produced it, so it is usually not a
/// unit vector.
struct QuantumState {
    RVec vector;

    std::size_t dim() const noexcept {
        return vector.dim();
    }
    Rat norm2() const {
        return vector.norm2();
    }
    friend bool operator==(const QuantumState &, const QuantumState &) = default;
};

struct OperationElement {
    OutcomeLabel outcome;
    RMat matrix;
};

/// A quantum operation given by its operation elements. Several elements may
/// share an outcome label; the probabilities of such elements add up.
class Superoperator {
   public:
    explicit Superoperator(std::vector<OperationElement> elements);

    /// {I} with a single outcome.
    static Superoperator identity(std::size_t dim, OutcomeLabel label);

    /// Resets the register to |basis> from any state: elements |basis><j| for
    /// every j, all carrying `label`.
    static Superoperator initializer(std::size_t dim, std::size_t basis, OutcomeLabel label);

    const std::vector<OperationElement> &elements() const noexcept {
        return elements_;
    }
    std::size_t size() const noexcept {
        return elements_.size();
    }
    std::size_t dim() const noexcept {
        return elements_.front().matrix.dim();
    }
    std::vector<RMat> matrices() const;
    /// Distinct outcome labels, sorted.
    std::vector<OutcomeLabel> labels() const;

   private:
    std::vector<OperationElement> elements_;
};

/// Applies `before`, then `after`. Labels come from `after`.
Superoperator compose(const Superoperator &after, const Superoperator &before);

struct ValidationReport {
    bool ok = false;
    RMat gram{1};
    /// (row, column) positions where the gram sum differs from the identity.
    std::vector<std::pair<std::size_t, std::size_t>> offending;

    std::string str() const;
};

/// Checks sum_i E_i^T E_i == I exactly.
ValidationReport validate(const Superoperator &s);

struct Outcome {
    OutcomeLabel label;
    std::size_t element;
    QuantumState state;
    Rat probability;
};

struct OutcomeDistribution {
    std::vector<Outcome> outcomes;

    Rat total() const;
    Rat probability_of(const OutcomeLabel &label) const;
};

/// One entry per operation element, in element order. The resulting states
/// are left unnormalized. Assumes `s` validates.
OutcomeDistribution apply(const Superoperator &s, const QuantumState &psi);

struct NormalizedState {
    Rat norm2;
    RVec direction;
    /// True when sqrt(norm2) is rational and `direction` is a unit vector;
    /// otherwise `direction` is the raw vector.
    bool unit = false;
};

NormalizedState normalize(const QuantumState &psi);

/// Basis vector |basis_index> of the given dimension.
QuantumState initialize(std::size_t basis_index, std::size_t dim);

}  // namespace qca

#endif
