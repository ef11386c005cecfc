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

#include "qca/explore.h"

#include <algorithm>
#include <array>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "branch_cache.h"
#include "qca/errors.h"
#include "qca/trajectory.h"

namespace qca {

namespace {

struct NodeKey {
    StateId state;
    std::int64_t head;
    std::int64_t counter;
    int dir;
    friend bool operator==(const NodeKey &, const NodeKey &) = default;
};

struct NodeKeyHash {
    std::size_t operator()(const NodeKey &k) const noexcept {
        std::size_t h = k.state;
        h = h * 1000003u ^ static_cast<std::size_t>(k.head);
        h = h * 1000003u ^ static_cast<std::size_t>(k.counter);
        h = h * 1000003u ^ static_cast<std::size_t>(k.dir);
        return h;
    }
};

// Absorbing targets are encoded after the transient nodes.
enum Absorbing : int { kAccept = 0, kReject = 1, kRestart = 2 };

struct BranchGraph {
    std::vector<NodeKey> nodes;
    std::vector<std::unordered_map<int, Rat>> out;  // transient ids, or -1 - Absorbing
    std::int64_t max_counter = 0;
};

constexpr int absorbing_id(Absorbing a) {
    return -1 - static_cast<int>(a);
}

BranchGraph build_graph(const MachineSpec &spec, const Tape &tape, const ExploreLimits &limits) {
    detail::BranchCache cache(spec);
    BranchGraph g;
    std::unordered_map<NodeKey, int, NodeKeyHash> index;
    auto node_of = [&](const NodeKey &k) {
        auto [it, inserted] = index.emplace(k, static_cast<int>(g.nodes.size()));
        if (inserted) {
            if (g.nodes.size() >= limits.max_configurations) {
                fail(ErrorKind::Structural, "branch tree of one round exceeds " +
                                                std::to_string(limits.max_configurations) +
                                                " configurations; not finitely enumerable");
            }
            g.nodes.push_back(k);
            g.out.emplace_back();
            g.max_counter = std::max(g.max_counter, k.counter);
        }
        return it->second;
    };
    const int start_dir = cache.directions().intern(initialize(spec.initial_basis(), spec.dim()).vector);
    node_of(NodeKey{spec.start(), 1, 0, start_dir});

    for (std::size_t x = 0; x < g.nodes.size(); ++x) {
        const NodeKey k = g.nodes[x];
        const SymbolId sym = tape.at(k.head);
        const auto status = k.counter == 0 ? CounterStatus::Zero : CounterStatus::Nonzero;
        const int op = spec.op_index(k.state, sym, status);
        if (op < 0) {
            fail(ErrorKind::Specification, "no superoperator for (" + spec.states()[k.state] + ", " +
                                               spec.symbol_name(sym) + ", " + std::string(to_string(status)) +
                                               ")");
        }
        const detail::Branching &b = cache.get(op, k.dir);
        std::unordered_map<int, Rat> edges;
        for (std::size_t e = 0; e < b.weights.size(); ++e) {
            if (b.weights[e] == 0) {
                continue;
            }
            const Transition *t = spec.transition(op, e);
            if (t == nullptr) {
                fail(ErrorKind::Specification, "no classical transition for outcome '" +
                                                   spec.op(op).elements()[e].outcome + "' in state " +
                                                   spec.states()[k.state]);
            }
            int target;
            if (t->restart) {
                target = absorbing_id(kRestart);
            } else if (t->target == spec.accept()) {
                target = absorbing_id(kAccept);
            } else if (t->target == spec.reject()) {
                target = absorbing_id(kReject);
            } else {
                const std::int64_t head = k.head + static_cast<int>(t->move);
                const std::int64_t counter = k.counter + t->counter_update;
                if (head < 1 || head > tape.size()) {
                    fail(ErrorKind::Specification, "head leaves the tape from state " + spec.states()[k.state]);
                }
                if (counter < 0) {
                    fail(ErrorKind::Specification, "counter decremented below zero in state " +
                                                       spec.states()[k.state]);
                }
                target = node_of(NodeKey{t->target, head, counter, b.children[e]});
            }
            edges[target] += Rat(b.weights[e], b.total);
        }
        g.out[x] = std::move(edges);
    }
    return g;
}

// Absorption probabilities from node 0 by eliminating transient nodes one at
// a time, rerouting p -> x -> q as p -> q with weight a * b / (1 - loop(x)).
std::array<Rat, 3> absorb(BranchGraph &g) {
    const int n = static_cast<int>(g.nodes.size());
    auto &out = g.out;
    std::vector<std::unordered_set<int>> in(n);
    for (int x = 0; x < n; ++x) {
        for (const auto &[q, _] : out[x]) {
            if (q >= 0) {
                in[q].insert(x);
            }
        }
    }

    // Postorder from the start: successors are eliminated before their
    // predecessors, which keeps rerouted edge lists short.
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> seen(n, 0);
    std::vector<std::pair<int, std::vector<int>>> stack;
    auto children = [&](int x) {
        std::vector<int> c;
        for (const auto &[q, _] : out[x]) {
            if (q >= 0) {
                c.push_back(q);
            }
        }
        std::sort(c.begin(), c.end(), std::greater<>());
        return c;
    };
    seen[0] = 1;
    stack.emplace_back(0, children(0));
    while (!stack.empty()) {
        auto &[x, pending] = stack.back();
        if (pending.empty()) {
            order.push_back(x);
            stack.pop_back();
            continue;
        }
        const int q = pending.back();
        pending.pop_back();
        if (!seen[q]) {
            seen[q] = 1;
            stack.emplace_back(q, children(q));
        }
    }

    auto loop_factor = [&](int x) {
        Rat self;
        auto it = out[x].find(x);
        if (it != out[x].end()) {
            self = it->second;
            out[x].erase(it);
        }
        const Rat rest = Rat(1) - self;
        if (rest.is_zero()) {
            fail(ErrorKind::NonHalting, "a reachable configuration loops forever with probability one");
        }
        return Rat(1) / rest;
    };

    for (int x : order) {
        if (x == 0) {
            continue;
        }
        in[x].erase(x);
        const Rat factor = loop_factor(x);
        for (int p : in[x]) {
            auto edge = out[p].find(x);
            const Rat a = edge->second * factor;
            out[p].erase(edge);
            for (const auto &[q, b] : out[x]) {
                out[p][q] += a * b;
                if (q >= 0) {
                    in[q].insert(p);
                }
            }
        }
        for (const auto &[q, _] : out[x]) {
            if (q >= 0) {
                in[q].erase(x);
            }
        }
        out[x].clear();
        in[x].clear();
    }

    const Rat factor = loop_factor(0);
    std::array<Rat, 3> result;
    for (const auto &[q, w] : out[0]) {
        if (q >= 0) {
            fail(ErrorKind::Structural, "internal: unresolved transient node after elimination");
        }
        result[-1 - q] = w * factor;
    }
    return result;
}

}  // namespace

RoundAnalysis enumerate_round(const MachineSpec &spec, const Tape &tape, const ExploreLimits &limits) {
    BranchGraph g = build_graph(spec, tape, limits);
    const std::size_t configurations = g.nodes.size();
    const std::int64_t max_counter = g.max_counter;
    auto probs = absorb(g);
    if (probs[kAccept] + probs[kReject] + probs[kRestart] != Rat(1)) {
        fail(ErrorKind::NonHalting, "round probabilities do not sum to one");
    }
    auto r = RoundAnalysis::from_round(probs[kAccept], probs[kReject], probs[kRestart]);
    r.max_counter = max_counter;
    r.configurations = configurations;
    return r;
}

std::int64_t profile_space(const MachineSpec &spec, const Tape &tape, ProfileMode mode, RandomSource &rng,
                           const ExploreLimits &limits) {
    if (!has_counter(spec.kind())) {
        fail(ErrorKind::Parameter, "machine " + spec.name() + " has no counter to profile");
    }
    if (mode == ProfileMode::Sampled) {
        return run_trajectory(spec, tape, rng).max_counter;
    }
    return build_graph(spec, tape, limits).max_counter;
}

}  // namespace qca
