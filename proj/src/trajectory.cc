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

#include "qca/trajectory.h"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "branch_cache.h"
#include "qca/errors.h"

namespace qca {

TrajectorySampler::TrajectorySampler(const MachineSpec &spec, const Tape &tape)
    : spec_(spec), tape_(tape), cache_(std::make_unique<detail::BranchCache>(spec)) {
    initial_dir_ = cache_->directions().intern(initialize(spec.initial_basis(), spec.dim()).vector);
}

TrajectorySampler::~TrajectorySampler() = default;

TrajectoryStats TrajectorySampler::run(RandomSource &rng, std::uint64_t step_budget, const TrajectoryLog *log) {
    if (step_budget == 0) {
        fail(ErrorKind::Parameter, "step budget must be positive");
    }
    TrajectoryStats stats;
    stats.rng_seed = rng.seed();
    StateId state = spec_.start();
    std::int64_t head = 1;
    std::int64_t counter = 0;
    int dir = initial_dir_;
    const std::int64_t tape_size = tape_.size();

    while (stats.steps < step_budget) {
        const SymbolId sym = tape_.at(head);
        const auto status = counter == 0 ? CounterStatus::Zero : CounterStatus::Nonzero;
        const int index = spec_.op_index(state, sym, status);
        if (index < 0) {
            fail(ErrorKind::Specification, "no superoperator for (" + spec_.states()[state] + ", " +
                                               spec_.symbol_name(sym) + ", " + std::string(to_string(status)) +
                                               ")");
        }
        const auto &branching = cache_->get(index, dir);
        const std::size_t e = cache_->sample(branching, rng);
        const Transition *t = spec_.transition(index, e);
        if (t == nullptr) {
            fail(ErrorKind::Specification, "no classical transition for outcome '" +
                                               spec_.op(index).elements()[e].outcome + "' in state " +
                                               spec_.states()[state]);
        }
        ++stats.steps;
        if (log != nullptr) {
            (*log)(TrajectoryEvent{stats.steps, state, head, counter, spec_.op(index).elements()[e].outcome});
        }
        if (t->restart) {
            ++stats.rounds;
            state = spec_.start();
            head = 1;
            counter = 0;
            dir = initial_dir_;
            continue;
        }
        state = t->target;
        dir = branching.children[e];
        if (state == spec_.accept()) {
            stats.verdict = Verdict::Accept;
            return stats;
        }
        if (state == spec_.reject()) {
            stats.verdict = Verdict::Reject;
            return stats;
        }
        head += static_cast<int>(t->move);
        if (head < 1 || head > tape_size) {
            fail(ErrorKind::Specification, "head leaves the tape");
        }
        counter += t->counter_update;
        if (counter < 0) {
            fail(ErrorKind::Specification, "counter decremented below zero");
        }
        stats.max_counter = std::max(stats.max_counter, counter);
    }
    return stats;
}

TrajectoryStats run_trajectory(const MachineSpec &spec, const Tape &tape, RandomSource &rng,
                               std::uint64_t step_budget, const TrajectoryLog *log) {
    TrajectorySampler sampler(spec, tape);
    return sampler.run(rng, step_budget, log);
}

std::uint64_t trajectory_seed(std::uint64_t base_seed, std::uint64_t index) {
    // splitmix64 finalizer over the pair
    std::uint64_t z = base_seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

unsigned resolve_threads(unsigned requested) {
    unsigned n = requested;
    if (n == 0) {
        n = std::max(1u, std::thread::hardware_concurrency());
    }
    if (const char *cap = std::getenv("QCA_THREADS")) {
        char *end = nullptr;
        const unsigned long v = std::strtoul(cap, &end, 10);
        if (end != cap && v > 0) {
            n = std::min<unsigned>(n, static_cast<unsigned>(v));
        }
    }
    return std::max(1u, n);
}

SampleSummary sample_trajectories(const MachineSpec &spec, const Tape &tape, std::uint64_t seed,
                                  std::uint64_t count, std::uint64_t step_budget, unsigned threads) {
    std::vector<TrajectoryStats> results(count);
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), count));
    std::vector<std::exception_ptr> errors(std::max(1u, workers));
    auto work = [&](unsigned w) {
        try {
            TrajectorySampler sampler(spec, tape);
            for (std::uint64_t t = w; t < count; t += workers) {
                RandomSource rng(trajectory_seed(seed, t));
                results[t] = sampler.run(rng, step_budget);
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers <= 1) {
        if (count > 0) {
            work(0);
        }
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    SampleSummary s;
    s.trajectories = count;
    BigInt rounds = 0, rounds_sq = 0;
    for (const auto &r : results) {
        s.steps += r.steps;
        s.max_counter = std::max(s.max_counter, r.max_counter);
        switch (r.verdict) {
            case Verdict::Accept:
                ++s.accepted;
                break;
            case Verdict::Reject:
                ++s.rejected;
                break;
            case Verdict::Running:
                ++s.running;
                continue;
        }
        BigInt x = static_cast<unsigned long>(r.rounds + 1);
        rounds += x;
        rounds_sq += x * x;
    }
    s.rounds_sum = Rat(rounds);
    s.rounds_sq_sum = Rat(rounds_sq);
    return s;
}

}  // namespace qca
