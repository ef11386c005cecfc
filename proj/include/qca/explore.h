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

#ifndef QCA_EXPLORE_H
#define QCA_EXPLORE_H

#include <cstddef>
#include <cstdint>

#include "qca/analysis.h"
#include "qca/machine.h"

namespace qca {

struct ExploreLimits {
    /// Distinct branch configurations allowed before the round is declared
    /// not finitely enumerable.
    std::size_t max_configurations = 2'000'000;
};

/// Exhaustively explores every outcome branch of one round, starting from
/// the initial configuration and stopping at accept, reject, or restart.
/// Branches that revisit a configuration (same classical part and register
/// direction) are merged, and loops inside the round are summed exactly, so
/// machines that repeat an inner procedure within a round are handled too.
RoundAnalysis enumerate_round(const MachineSpec &spec, const Tape &tape, const ExploreLimits &limits = {});

enum class ProfileMode { ExactSchedule, Sampled };

/// Largest counter value. ExactSchedule takes the maximum over every
/// configuration reachable with positive probability within a round (each
/// round repeats from the same initial configuration); Sampled runs one
/// trajectory.
std::int64_t profile_space(const MachineSpec &spec, const Tape &tape, ProfileMode mode, RandomSource &rng,
                           const ExploreLimits &limits = {});

}  // namespace qca

#endif
