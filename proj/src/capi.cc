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

#include "qca.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>

#include "json.hpp"
#include "qca/errors.h"
#include "qca/explore.h"
#include "qca/machine_file.h"
#include "qca/sweep.h"
#include "qca/trajectory.h"

using Json = nlohmann::ordered_json;

struct qca_machine {
    enum class Builtin { None, Power, Upower };

    explicit qca_machine(qca::MachineSpec s) : spec(std::move(s)) {
    }

    qca::MachineSpec spec;
    Builtin builtin = Builtin::None;
    qca::PowerParams params;
    qca::UpowerOptions options;
    bool valid = false;
    std::string first_issue;
};

namespace {

thread_local std::string last_error;

qca_status status_of(qca::ErrorKind kind) {
    using qca::ErrorKind;
    switch (kind) {
        case ErrorKind::Parameter:
        case ErrorKind::Input:
        case ErrorKind::Family:
            return QCA_USAGE;
        case ErrorKind::Parse:
            return QCA_PARSE;
        case ErrorKind::Io:
            return QCA_IO;
        case ErrorKind::Specification:
            return QCA_SPEC;
        case ErrorKind::Structural:
            return QCA_STRUCTURE;
        case ErrorKind::NonHalting:
            return QCA_NONHALTING;
        case ErrorKind::Budget:
            return QCA_BUDGET;
        case ErrorKind::Degenerate:
            return QCA_INTERNAL;
    }
    return QCA_INTERNAL;
}

qca_status set_error(qca_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
qca_status guarded(F &&body) {
    try {
        last_error.clear();
        return body();
    } catch (const qca::Error &e) {
        return set_error(status_of(e.kind()), e.what());
    } catch (const std::bad_alloc &) {
        return set_error(QCA_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return set_error(QCA_INTERNAL, e.what());
    }
}

char *copy_out(const std::string &text) {
    char *p = static_cast<char *>(std::malloc(text.size() + 1));
    if (p == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(p, text.c_str(), text.size() + 1);
    return p;
}

qca_machine *wrap(qca::MachineSpec spec) {
    auto *m = new qca_machine(std::move(spec));
    const auto report = qca::validate_machine(m->spec);
    m->valid = report.ok();
    if (!m->valid) {
        m->first_issue = report.issues.front().where + ": " + report.issues.front().message;
    }
    return m;
}

qca_status need(const void *p, const char *what) {
    if (p == nullptr) {
        return set_error(QCA_USAGE, std::string(what) + " must not be null");
    }
    return QCA_OK;
}

// Drops empty runs and merges neighbours with the same letter.
std::vector<std::pair<char, std::uint64_t>> normalized_runs(const char *input) {
    std::vector<std::pair<char, std::uint64_t>> out;
    for (const auto &[c, count] : qca::parse_input_runs(input)) {
        if (count == 0) {
            continue;
        }
        if (!out.empty() && out.back().first == c) {
            out.back().second += count;
        } else {
            out.emplace_back(c, count);
        }
    }
    return out;
}

void check_letters(const qca::MachineSpec &spec, const std::vector<std::pair<char, std::uint64_t>> &runs) {
    for (const auto &[c, count] : runs) {
        if (!spec.symbol_of(c)) {
            qca::fail(qca::ErrorKind::Input, std::string("symbol '") + c + "' is not in the alphabet \"" +
                                                  spec.alphabet() + "\"");
        }
    }
}

qca_status runnable(const qca_machine *m) {
    if (!m->valid) {
        return set_error(QCA_VALIDATION, "machine fails validation: " + m->first_issue);
    }
    return QCA_OK;
}

Json rat_json(const qca::Rat &r) {
    return Json{{"exact", r.str()}, {"decimal", r.decimal()}};
}

std::string describe_input(const std::vector<std::pair<char, std::uint64_t>> &runs) {
    std::string s;
    for (const auto &[c, count] : runs) {
        s += c + std::to_string(count);
    }
    return s.empty() ? "(empty)" : s;
}

Json machine_header(const qca_machine *m, const std::vector<std::pair<char, std::uint64_t>> &runs) {
    Json j;
    j["machine"] = m->spec.name();
    if (m->builtin != qca_machine::Builtin::None) {
        j["k"] = m->params.k;
    }
    j["input"] = describe_input(runs);
    return j;
}

}  // namespace

extern "C" {

const char *qca_last_error(void) {
    return last_error.c_str();
}

void qca_string_free(char *s) {
    std::free(s);
}

qca_status qca_machine_power(int64_t k, qca_machine **out) {
    if (auto s = need(out, "out"); s != QCA_OK) {
        return s;
    }
    return guarded([&] {
        const auto params = qca::PowerParams::make(k);
        auto *m = wrap(qca::build_power(params));
        m->builtin = qca_machine::Builtin::Power;
        m->params = params;
        *out = m;
        return QCA_OK;
    });
}

qca_status qca_machine_upower(int64_t k, int exponent_from_zero, qca_machine **out) {
    if (auto s = need(out, "out"); s != QCA_OK) {
        return s;
    }
    return guarded([&] {
        const auto params = qca::PowerParams::make(k);
        const qca::UpowerOptions options{exponent_from_zero != 0};
        auto *m = wrap(qca::build_upower(params, options));
        m->builtin = qca_machine::Builtin::Upower;
        m->params = params;
        m->options = options;
        *out = m;
        return QCA_OK;
    });
}

qca_status qca_machine_from_json(const char *text, qca_machine **out) {
    if (auto s = need(text, "text"); s != QCA_OK) {
        return s;
    }
    if (auto s = need(out, "out"); s != QCA_OK) {
        return s;
    }
    return guarded([&] {
        *out = wrap(qca::machine_from_json(text));
        return QCA_OK;
    });
}

qca_status qca_machine_load(const char *path, qca_machine **out) {
    if (auto s = need(path, "path"); s != QCA_OK) {
        return s;
    }
    if (auto s = need(out, "out"); s != QCA_OK) {
        return s;
    }
    return guarded([&] {
        *out = wrap(qca::load_machine(path));
        return QCA_OK;
    });
}

void qca_machine_free(qca_machine *machine) {
    delete machine;
}

qca_status qca_machine_to_json(const qca_machine *machine, char **out) {
    if (auto s = need(machine, "machine"); s != QCA_OK) {
        return s;
    }
    if (auto s = need(out, "out"); s != QCA_OK) {
        return s;
    }
    return guarded([&] {
        *out = copy_out(qca::machine_to_json(machine->spec));
        return QCA_OK;
    });
}

qca_status qca_validate(const qca_machine *machine, char **report) {
    if (auto s = need(machine, "machine"); s != QCA_OK) {
        return s;
    }
    if (auto s = need(report, "report"); s != QCA_OK) {
        return s;
    }
    return guarded([&] {
        const auto v = qca::validate_machine(machine->spec);
        Json j;
        j["machine"] = machine->spec.name();
        j["kind"] = qca::to_string(machine->spec.kind());
        j["superoperators"] = machine->spec.delta_q().size();
        j["transitions"] = machine->spec.delta_c().size();
        j["ok"] = v.ok();
        Json issues = Json::array();
        for (const auto &issue : v.issues) {
            issues.push_back(Json{{"where", issue.where}, {"message", issue.message}});
        }
        j["issues"] = std::move(issues);
        *report = copy_out(j.dump(2));
        if (!v.ok()) {
            return set_error(QCA_VALIDATION, std::to_string(v.issues.size()) + " validation issue(s)");
        }
        return QCA_OK;
    });
}

qca_status qca_run_exact(const qca_machine *machine, const char *input, char **result) {
    if (auto s = need(machine, "machine"); s != QCA_OK) {
        return s;
    }
    if (auto s = need(input, "input"); s != QCA_OK) {
        return s;
    }
    if (auto s = need(result, "result"); s != QCA_OK) {
        return s;
    }
    return guarded([&] {
        const auto runs = normalized_runs(input);
        check_letters(machine->spec, runs);
        qca::ExactRow row;
        switch (machine->builtin) {
            case qca_machine::Builtin::None:
                return set_error(QCA_USAGE, "exact mode needs a built-in machine; use enumerate for machine files");
            case qca_machine::Builtin::Power: {
                std::uint64_t m = 0, n = 0;
                bool shaped = runs.size() <= 2;
                for (std::size_t i = 0; i < runs.size() && shaped; ++i) {
                    if (runs[i].first == 'a' && i == 0) {
                        m = runs[i].second;
                    } else if (runs[i].first == 'b' && (i == runs.size() - 1)) {
                        n = runs[i].second;
                    } else {
                        shaped = false;
                    }
                }
                if (shaped) {
                    row = qca::exact_power(m, n, machine->params);
                } else {
                    row = qca::exact_power(0, 0, machine->params);
                    row.m = row.n.emplace(0);
                }
                break;
            }
            case qca_machine::Builtin::Upower: {
                std::uint64_t m = 0;
                for (const auto &r : runs) {
                    m += r.second;
                }
                row = qca::exact_upower(m, machine->params, machine->options);
                break;
            }
        }
        Json j = machine_header(machine, runs);
        j.update(Json::parse(qca::row_to_json(row)));
        *result = copy_out(j.dump(2));
        return QCA_OK;
    });
}

qca_status qca_run_enumerate(const qca_machine *machine, const char *input, char **result) {
    if (auto s = need(machine, "machine"); s != QCA_OK) {
        return s;
    }
    if (auto s = need(input, "input"); s != QCA_OK) {
        return s;
    }
    if (auto s = need(result, "result"); s != QCA_OK) {
        return s;
    }
    if (auto s = runnable(machine); s != QCA_OK) {
        return s;
    }
    return guarded([&] {
        const auto runs = normalized_runs(input);
        check_letters(machine->spec, runs);
        const auto tape = qca::Tape::from_runs(machine->spec, runs);
        const auto r = qca::enumerate_round(machine->spec, tape);
        Json j = machine_header(machine, runs);
        j["round_accept"] = rat_json(r.p_accept);
        j["round_reject"] = rat_json(r.p_reject);
        j["round_restart"] = rat_json(r.p_restart);
        if (r.overall) {
            j["accept_probability"] = rat_json(r.overall->overall_accept);
            j["reject_probability"] = rat_json(r.overall->overall_reject);
            j["expected_rounds"] = rat_json(r.overall->expected_rounds);
        }
        if (qca::has_counter(machine->spec.kind())) {
            j["max_counter"] = r.max_counter;
        }
        j["configurations"] = r.configurations;
        *result = copy_out(j.dump(2));
        if (!r.overall) {
            return set_error(QCA_NONHALTING, "no round halts with positive probability");
        }
        return QCA_OK;
    });
}

void qca_sample_options_default(qca_sample_options *options) {
    if (options != nullptr) {
        *options = qca_sample_options{0, qca::kDefaultStepBudget, 1, 0};
    }
}

qca_status qca_run_sample(const qca_machine *machine, const char *input, const qca_sample_options *options,
                          char **result) {
    if (auto s = need(machine, "machine"); s != QCA_OK) {
        return s;
    }
    if (auto s = need(input, "input"); s != QCA_OK) {
        return s;
    }
    if (auto s = need(result, "result"); s != QCA_OK) {
        return s;
    }
    if (auto s = runnable(machine); s != QCA_OK) {
        return s;
    }
    qca_sample_options opts;
    qca_sample_options_default(&opts);
    if (options != nullptr) {
        opts = *options;
    }
    if (opts.trajectories == 0 || opts.step_budget == 0) {
        return set_error(QCA_USAGE, "trajectory count and step budget must be positive");
    }
    return guarded([&] {
        const auto runs = normalized_runs(input);
        check_letters(machine->spec, runs);
        const auto tape = qca::Tape::from_runs(machine->spec, runs);
        Json j = machine_header(machine, runs);
        j["seed"] = opts.seed;
        j["step_budget"] = opts.step_budget;
        j["trajectories"] = opts.trajectories;
        std::uint64_t running = 0;
        if (opts.trajectories == 1) {
            qca::RandomSource rng(opts.seed);
            const auto t = qca::run_trajectory(machine->spec, tape, rng, opts.step_budget);
            j["verdict"] = qca::to_string(t.verdict);
            j["steps"] = t.steps;
            j["rounds"] = t.rounds + 1;
            if (qca::has_counter(machine->spec.kind())) {
                j["max_counter"] = t.max_counter;
            }
            running = t.verdict == qca::Verdict::Running ? 1 : 0;
        } else {
            const auto s = qca::sample_trajectories(machine->spec, tape, opts.seed, opts.trajectories,
                                                    opts.step_budget, opts.threads);
            const double total = static_cast<double>(s.trajectories);
            j["accepted"] = s.accepted;
            j["rejected"] = s.rejected;
            j["running"] = s.running;
            j["accept_frequency"] = static_cast<double>(s.accepted) / total;
            j["reject_frequency"] = static_cast<double>(s.rejected) / total;
            const std::uint64_t halted = s.accepted + s.rejected;
            if (halted > 0) {
                const qca::Rat h(static_cast<long>(halted));
                const qca::Rat mean = s.rounds_sum / h;
                const qca::Rat var = s.rounds_sq_sum / h - mean * mean;
                j["mean_rounds"] = mean.to_double();
                j["mean_rounds_stderr"] = std::sqrt(std::max(0.0, var.to_double()) / static_cast<double>(halted));
            }
            j["steps"] = s.steps;
            if (qca::has_counter(machine->spec.kind())) {
                j["max_counter"] = s.max_counter;
            }
            running = s.running;
        }
        *result = copy_out(j.dump(2));
        if (running > 0) {
            return set_error(QCA_BUDGET, "step budget exhausted on " + std::to_string(running) + " trajectory(ies)");
        }
        return QCA_OK;
    });
}

qca_status qca_run_trace(const qca_machine *machine, const char *input, uint64_t seed, uint64_t step_budget,
                         char **trace) {
    if (auto s = need(machine, "machine"); s != QCA_OK) {
        return s;
    }
    if (auto s = need(input, "input"); s != QCA_OK) {
        return s;
    }
    if (auto s = need(trace, "trace"); s != QCA_OK) {
        return s;
    }
    if (auto s = runnable(machine); s != QCA_OK) {
        return s;
    }
    return guarded([&] {
        const auto runs = normalized_runs(input);
        check_letters(machine->spec, runs);
        const auto tape = qca::Tape::from_runs(machine->spec, runs);
        std::ostringstream out;
        out << "step,state,head,counter,outcome\n";
        const qca::TrajectoryLog log = [&](const qca::TrajectoryEvent &e) {
            out << e.step << ',' << machine->spec.states()[e.state] << ',' << e.head << ',' << e.counter << ','
                << e.outcome << '\n';
        };
        qca::RandomSource rng(seed);
        const auto t = qca::run_trajectory(machine->spec, tape, rng, step_budget, &log);
        out << "# verdict " << qca::to_string(t.verdict) << '\n';
        *trace = copy_out(out.str());
        if (t.verdict == qca::Verdict::Running) {
            return set_error(QCA_BUDGET, "step budget exhausted");
        }
        return QCA_OK;
    });
}

qca_status qca_profile(const qca_machine *machine, const char *input, int sampled, uint64_t seed, char **result) {
    if (auto s = need(machine, "machine"); s != QCA_OK) {
        return s;
    }
    if (auto s = need(input, "input"); s != QCA_OK) {
        return s;
    }
    if (auto s = need(result, "result"); s != QCA_OK) {
        return s;
    }
    if (auto s = runnable(machine); s != QCA_OK) {
        return s;
    }
    return guarded([&] {
        const auto runs = normalized_runs(input);
        check_letters(machine->spec, runs);
        const auto tape = qca::Tape::from_runs(machine->spec, runs);
        qca::RandomSource rng(seed);
        const auto mode = sampled ? qca::ProfileMode::Sampled : qca::ProfileMode::ExactSchedule;
        const auto max = qca::profile_space(machine->spec, tape, mode, rng);
        Json j = machine_header(machine, runs);
        j["mode"] = sampled ? "sampled" : "exact-schedule";
        j["max_counter"] = max;
        if (machine->builtin == qca_machine::Builtin::Upower) {
            const auto m = static_cast<std::uint64_t>(tape.input_length());
            const bool member = qca::is_upower_member(m, machine->options);
            const auto predicted = qca::predicted_max_counter(m, machine->options);
            j["member"] = member;
            j["prediction"] = member ? "log2 |w|" : "|w|";
            j["predicted_max_counter"] = predicted;
            j["meets_prediction"] = sampled ? max <= predicted : max == predicted;
        }
        *result = copy_out(j.dump(2));
        return QCA_OK;
    });
}

qca_status qca_sweep(const qca_sweep_request *request, char **table) {
    if (auto s = need(request, "request"); s != QCA_OK) {
        return s;
    }
    if (auto s = need(table, "table"); s != QCA_OK) {
        return s;
    }
    return guarded([&] {
        if (request->machine == nullptr || request->k_range == nullptr || request->m_range == nullptr) {
            return set_error(QCA_USAGE, "sweep needs a machine, a k range, and an m range");
        }
        qca::SweepRequest r;
        r.machine = request->machine;
        r.k = qca::parse_range(request->k_range);
        r.m = qca::parse_range(request->m_range);
        if (r.machine == "power") {
            if (request->n_range == nullptr) {
                return set_error(QCA_USAGE, "power sweeps need an n range");
            }
            r.n = qca::parse_range(request->n_range);
        }
        r.options.exponent_from_zero = request->exponent_from_zero != 0;
        r.threads = request->threads;
        const std::string format = request->format == nullptr ? "csv" : request->format;
        if (format != "csv" && format != "json") {
            return set_error(QCA_USAGE, "format must be csv or json");
        }
        const auto rows = qca::sweep(r);
        *table = copy_out(format == "csv" ? qca::rows_to_csv(rows) : qca::rows_to_json(rows));
        return QCA_OK;
    });
}

qca_status qca_foursquare(uint64_t n, uint64_t out[4]) {
    if (auto s = need(out, "out"); s != QCA_OK) {
        return s;
    }
    return guarded([&] {
        const auto fs = qca::four_square(n);
        out[0] = fs.a;
        out[1] = fs.b;
        out[2] = fs.c;
        out[3] = fs.d;
        return QCA_OK;
    });
}

qca_status qca_family(const char *family, int64_t k, const char *input, char **result) {
    if (auto s = need(family, "family"); s != QCA_OK) {
        return s;
    }
    if (auto s = need(result, "result"); s != QCA_OK) {
        return s;
    }
    return guarded([&] {
        const auto f = qca::parse_family(family);
        const auto params = qca::PowerParams::make(k);
        std::optional<std::uint64_t> len;
        if (input != nullptr) {
            const auto runs = normalized_runs(input);
            if (runs.size() > 1) {
                qca::fail(qca::ErrorKind::Input, "family membership needs a unary word");
            }
            len = runs.empty() ? 0 : runs.front().second;
        }
        const auto b = qca::family_bounds(f, params, len);
        Json j;
        j["family"] = family;
        j["language"] = b.language;
        j["k"] = k;
        j["marking"] = b.marking;
        j["member_space"] = b.member_space;
        j["error_bound"] = rat_json(b.error_bound);
        if (len) {
            j["length"] = *len;
            j["member"] = b.witness.has_value();
            if (b.witness) {
                j["witness"] = *b.witness;
                j["member_counter"] = b.member_counter->get_str();
            }
        }
        *result = copy_out(j.dump(2));
        return QCA_OK;
    });
}

}  // extern "C"
