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

#ifndef QCA_TRAJECTORY_H
#define QCA_TRAJECTORY_H

#include <cstdint>
#include <functional>
#include <memory>
#include <string_view>

#include "qca/analysis.h"
#include "qca/machine.h"

namespace qca {

inline constexpr std::uint64_t kDefaultStepBudget = 10'000'000;

struct TrajectoryStats {
    Verdict verdict = Verdict::Running;
    std::uint64_t steps = 0;
    /// Restart events before the trajectory halted (or ran out of budget).
    std::uint64_t rounds = 0;
    std::int64_t max_counter = 0;
    std::uint64_t rng_seed = 0;
};

struct TrajectoryEvent {
    std::uint64_t step;
    StateId state;
    std::int64_t head;
    std::int64_t counter;
    std::string_view outcome;
};

using TrajectoryLog = std::function<void(const TrajectoryEvent &)>;

namespace detail {
class BranchCache;
}

/// Samples trajectories of one machine on one tape. Draws are identical to
/// repeated step() calls with the same RandomSource; the register is kept
/// as a direction (the unconditional vector up to a positive factor), and
/// outcome weights are memoized per (superoperator, direction).
class TrajectorySampler {
   public:
    TrajectorySampler(const MachineSpec &spec, const Tape &tape);
    ~TrajectorySampler();
    TrajectorySampler(const TrajectorySampler &) = delete;
    TrajectorySampler &operator=(const TrajectorySampler &) = delete;

    TrajectoryStats run(RandomSource &rng, std::uint64_t step_budget, const TrajectoryLog *log = nullptr);

   private:
    const MachineSpec &spec_;
    const Tape &tape_;
    std::unique_ptr<detail::BranchCache> cache_;
    int initial_dir_;
};

TrajectoryStats run_trajectory(const MachineSpec &spec, const Tape &tape, RandomSource &rng,
                               std::uint64_t step_budget = kDefaultStepBudget, const TrajectoryLog *log = nullptr);

/// Aggregate over independent trajectories.
struct SampleSummary {
    std::uint64_t trajectories = 0;
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
    std::uint64_t running = 0;
    /// Sums over halted trajectories of (restarts + 1), and of its square.
    Rat rounds_sum;
    Rat rounds_sq_sum;
    std::uint64_t steps = 0;
    std::int64_t max_counter = 0;
};

/// Seed of the t-th trajectory in a batch.
std::uint64_t trajectory_seed(std::uint64_t base_seed, std::uint64_t index);

/// Runs `count` trajectories seeded by trajectory_seed(seed, t) on up to
/// `threads` workers (0: QCA_THREADS or the hardware concurrency). Results
/// do not depend on the thread count.
SampleSummary sample_trajectories(const MachineSpec &spec, const Tape &tape, std::uint64_t seed,
                                  std::uint64_t count, std::uint64_t step_budget = kDefaultStepBudget,
                                  unsigned threads = 0);

/// Worker count honouring the QCA_THREADS cap.
unsigned resolve_threads(unsigned requested);

}  // namespace qca

#endif
