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

#include "qca/machine_file.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "qca/errors.h"

namespace qca {

namespace {

using Json = nlohmann::ordered_json;

std::string role_of(const MachineSpec &spec, StateId s) {
    if (s == spec.start()) {
        return "start";
    }
    if (s == spec.accept()) {
        return "accept";
    }
    if (s == spec.reject()) {
        return "reject";
    }
    return "internal";
}

// Sort key shared by both tables.
auto entry_order(const MachineSpec &spec, StateId s, SymbolId sym, CounterStatus st) {
    return std::tuple(spec.states()[s], spec.symbol_name(sym), std::string(to_string(st)));
}

void put_key(Json &j, const MachineSpec &spec, StateId s, SymbolId sym, CounterStatus st) {
    j["state"] = spec.states()[s];
    j["symbol"] = spec.symbol_name(sym);
    if (has_counter(spec.kind())) {
        j["counter"] = to_string(st);
    }
}

[[noreturn]] void bad(const std::string &message) {
    fail(ErrorKind::Parse, "machine file: " + message);
}

const Json &field(const Json &j, const char *name) {
    if (!j.is_object() || !j.contains(name)) {
        bad(std::string("missing field '") + name + "'");
    }
    return j.at(name);
}

std::string text_field(const Json &j, const char *name) {
    const Json &v = field(j, name);
    if (!v.is_string()) {
        bad(std::string("field '") + name + "' must be a string");
    }
    return v.get<std::string>();
}

const Json &array_field(const Json &j, const char *name) {
    const Json &v = field(j, name);
    if (!v.is_array()) {
        bad(std::string("field '") + name + "' must be a list");
    }
    return v;
}

Rat rat_value(const Json &v) {
    if (v.is_string()) {
        return Rat::parse(v.get<std::string>());
    }
    if (v.is_number_integer()) {
        return Rat(static_cast<long>(v.get<std::int64_t>()));
    }
    bad("matrix entries must be rational strings");
}

struct KeyReader {
    const MachineSpec &names;  // states and alphabet only
    const std::map<std::string, StateId> &state_ids;

    StateId state(const Json &j, const char *name) const {
        auto s = text_field(j, name);
        auto it = state_ids.find(s);
        if (it == state_ids.end()) {
            bad("unknown state '" + s + "'");
        }
        return it->second;
    }
    SymbolId symbol(const Json &j) const {
        auto s = text_field(j, "symbol");
        if (s == kLeftEndName) {
            return kLeftEnd;
        }
        if (s == kRightEndName) {
            return kRightEnd;
        }
        if (s.size() == 1) {
            if (auto id = names.symbol_of(s[0])) {
                return *id;
            }
        }
        bad("unknown symbol '" + s + "'");
    }
    CounterStatus status(const Json &j) const {
        if (!has_counter(names.kind())) {
            if (j.contains("counter")) {
                bad("counter status given for a machine without a counter");
            }
            return CounterStatus::Zero;
        }
        try {
            return parse_counter_status(text_field(j, "counter"));
        } catch (const Error &e) {
            bad(e.what());
        }
    }
};

}  // namespace

std::string machine_to_json(const MachineSpec &spec) {
    Json root;
    root["name"] = spec.name();
    root["kind"] = to_string(spec.kind());
    root["alphabet"] = spec.alphabet();

    std::vector<StateId> order(spec.states().size());
    for (StateId s = 0; s < order.size(); ++s) {
        order[s] = s;
    }
    std::sort(order.begin(), order.end(), [&](StateId x, StateId y) { return spec.states()[x] < spec.states()[y]; });
    Json states = Json::array();
    for (StateId s : order) {
        states.push_back(Json{{"name", spec.states()[s]}, {"role", role_of(spec, s)}});
    }
    root["states"] = std::move(states);

    const bool quantum = has_register(spec.kind());
    if (quantum) {
        root["basis"] = spec.basis();
        root["initial_basis"] = spec.basis()[spec.initial_basis()];

        std::vector<const std::pair<const QuantumKey, Superoperator> *> ops;
        for (const auto &entry : spec.delta_q()) {
            ops.push_back(&entry);
        }
        std::sort(ops.begin(), ops.end(), [&](auto *x, auto *y) {
            return entry_order(spec, x->first.state, x->first.symbol, x->first.status) <
                   entry_order(spec, y->first.state, y->first.symbol, y->first.status);
        });
        Json delta_q = Json::array();
        for (const auto *entry : ops) {
            Json j;
            put_key(j, spec, entry->first.state, entry->first.symbol, entry->first.status);
            Json elements = Json::array();
            for (const auto &e : entry->second.elements()) {
                Json matrix = Json::array();
                for (std::size_t r = 0; r < e.matrix.dim(); ++r) {
                    Json row = Json::array();
                    for (std::size_t c = 0; c < e.matrix.dim(); ++c) {
                        row.push_back(e.matrix(r, c).str());
                    }
                    matrix.push_back(std::move(row));
                }
                elements.push_back(Json{{"outcome", e.outcome}, {"matrix", std::move(matrix)}});
            }
            j["elements"] = std::move(elements);
            delta_q.push_back(std::move(j));
        }
        root["delta_q"] = std::move(delta_q);
    }

    std::vector<const std::pair<const ClassicalKey, Transition> *> moves;
    for (const auto &entry : spec.delta_c()) {
        moves.push_back(&entry);
    }
    std::sort(moves.begin(), moves.end(), [&](auto *x, auto *y) {
        return std::tuple_cat(entry_order(spec, x->first.state, x->first.symbol, x->first.status),
                              std::tuple(x->first.outcome)) <
               std::tuple_cat(entry_order(spec, y->first.state, y->first.symbol, y->first.status),
                              std::tuple(y->first.outcome));
    });
    Json delta_c = Json::array();
    for (const auto *entry : moves) {
        Json j;
        put_key(j, spec, entry->first.state, entry->first.symbol, entry->first.status);
        if (quantum) {
            j["outcome"] = entry->first.outcome;
        }
        const Transition &t = entry->second;
        j["target"] = spec.states()[t.target];
        j["move"] = to_string(t.move);
        if (has_counter(spec.kind())) {
            j["counter_update"] = t.counter_update;
        }
        j["restart"] = t.restart;
        delta_c.push_back(std::move(j));
    }
    root["delta_c"] = std::move(delta_c);
    return root.dump(2) + "\n";
}

MachineSpec machine_from_json(std::string_view text) {
    Json root;
    try {
        root = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error &e) {
        bad(e.what());
    }
    MachineKind kind;
    try {
        kind = parse_machine_kind(text_field(root, "kind"));
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::Parse) {
            throw;
        }
        bad(e.what());
    }
    std::optional<MachineBuilder> maybe;
    try {
        maybe.emplace(text_field(root, "name"), kind, text_field(root, "alphabet"));
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::Parse) {
            throw;
        }
        bad(e.what());
    }
    MachineBuilder &b = *maybe;

    std::map<std::string, StateId> state_ids;
    int starts = 0, accepts = 0, rejects = 0;
    for (const auto &s : array_field(root, "states")) {
        const auto name = text_field(s, "name");
        if (state_ids.contains(name)) {
            bad("duplicate state '" + name + "'");
        }
        const StateId id = b.state(name);
        state_ids[name] = id;
        const auto role = text_field(s, "role");
        if (role == "start") {
            b.set_start(id);
            ++starts;
        } else if (role == "accept") {
            b.set_accept(id);
            ++accepts;
        } else if (role == "reject") {
            b.set_reject(id);
            ++rejects;
        } else if (role != "internal") {
            bad("unknown role '" + role + "' for state '" + name + "'");
        }
    }
    if (starts != 1 || accepts != 1 || rejects != 1) {
        bad("exactly one start, one accept, and one reject state are required");
    }

    // Scratch spec used to resolve symbols and the kind while reading keys.
    MachineBuilder names_builder("", kind, text_field(root, "alphabet"));
    const StateId only = names_builder.state("s");
    names_builder.set_start(only).set_accept(only).set_reject(only);
    if (has_register(kind)) {
        names_builder.set_basis({"q"}, 0);
    }
    const MachineSpec names = names_builder.build();
    const KeyReader keys{names, state_ids};

    const bool quantum = has_register(kind);
    std::size_t dim = 1;
    std::set<QuantumKey> seen_q;
    std::set<ClassicalKey> seen_c;
    if (quantum) {
        std::vector<std::string> basis;
        for (const auto &q : array_field(root, "basis")) {
            if (!q.is_string()) {
                bad("basis labels must be strings");
            }
            basis.push_back(q.get<std::string>());
        }
        const auto initial = text_field(root, "initial_basis");
        auto it = std::find(basis.begin(), basis.end(), initial);
        if (it == basis.end()) {
            bad("initial basis state '" + initial + "' is not in the basis");
        }
        dim = basis.size();
        b.set_basis(basis, static_cast<std::size_t>(it - basis.begin()));

        for (const auto &entry : array_field(root, "delta_q")) {
            std::vector<OperationElement> elements;
            for (const auto &e : array_field(entry, "elements")) {
                const Json &rows = array_field(e, "matrix");
                if (rows.size() != dim) {
                    bad("matrix with " + std::to_string(rows.size()) + " rows for a register of dimension " +
                        std::to_string(dim));
                }
                RMat m(dim);
                for (std::size_t r = 0; r < dim; ++r) {
                    if (!rows[r].is_array() || rows[r].size() != dim) {
                        bad("matrix rows must have " + std::to_string(dim) + " entries");
                    }
                    for (std::size_t c = 0; c < dim; ++c) {
                        m(r, c) = rat_value(rows[r][c]);
                    }
                }
                elements.push_back({text_field(e, "outcome"), std::move(m)});
            }
            if (elements.empty()) {
                bad("superoperator with no operation elements");
            }
            const QuantumKey key{keys.state(entry, "state"), keys.symbol(entry), keys.status(entry)};
            if (!seen_q.insert(key).second) {
                bad("duplicate delta_q entry for state '" + text_field(entry, "state") + "'");
            }
            b.quantum(key.state, key.symbol, key.status, Superoperator(std::move(elements)));
        }
    } else if (root.contains("delta_q") || root.contains("basis")) {
        bad("deterministic machines have no quantum register");
    }

    for (const auto &entry : array_field(root, "delta_c")) {
        Transition t;
        t.target = keys.state(entry, "target");
        try {
            t.move = parse_move(text_field(entry, "move"));
        } catch (const Error &e) {
            bad(e.what());
        }
        if (has_counter(kind)) {
            const Json &u = field(entry, "counter_update");
            if (!u.is_number_integer()) {
                bad("counter_update must be an integer");
            }
            t.counter_update = u.get<int>();
        } else if (entry.contains("counter_update")) {
            bad("counter_update given for a machine without a counter");
        }
        const Json &r = field(entry, "restart");
        if (!r.is_boolean()) {
            bad("restart must be true or false");
        }
        t.restart = r.get<bool>();
        const StateId s = keys.state(entry, "state");
        const SymbolId sym = keys.symbol(entry);
        const CounterStatus st = keys.status(entry);
        const std::string outcome =
            quantum ? text_field(entry, "outcome") : std::string(kDeterministicOutcome);
        if (!seen_c.insert(ClassicalKey{s, sym, st, outcome}).second) {
            bad("duplicate delta_c entry for state '" + text_field(entry, "state") + "'");
        }
        if (quantum) {
            b.classical(s, sym, st, outcome, t);
        } else {
            if (entry.contains("outcome")) {
                bad("outcome given for a deterministic machine");
            }
            b.deterministic(s, sym, st, t);
        }
    }
    try {
        return b.build();
    } catch (const Error &e) {
        bad(e.what());
    }
}

MachineSpec load_machine(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::Io, "cannot open machine file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return machine_from_json(text.str());
}

void save_machine(const MachineSpec &spec, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(ErrorKind::Io, "cannot write machine file '" + path + "'");
    }
    out << machine_to_json(spec);
    if (!out) {
        fail(ErrorKind::Io, "write to '" + path + "' failed");
    }
}

}  // namespace qca
