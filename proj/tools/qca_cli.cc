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

// Command-line front end. Links only against the C interface in qca.h.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qca.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;

int exit_code(qca_status s) {
    switch (s) {
        case QCA_OK:
            return kExitOk;
        case QCA_VALIDATION:
        case QCA_STRUCTURE:
        case QCA_SPEC:
        case QCA_NONHALTING:
            return kExitValidation;
        case QCA_BUDGET:
            return kExitBudget;
        default:
            return kExitUsage;
    }
}

struct StringDeleter {
    void operator()(char *p) const {
        qca_string_free(p);
    }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct MachineDeleter {
    void operator()(qca_machine *m) const {
        qca_machine_free(m);
    }
};
using OwnedMachine = std::unique_ptr<qca_machine, MachineDeleter>;

int report_error(qca_status s) {
    std::cerr << "error: " << qca_last_error() << "\n";
    return exit_code(s);
}

struct MachineChoice {
    std::string machine = "power";
    std::int64_t k = 1;
    bool from_one = false;

    void add_to(CLI::App &cmd) {
        cmd.add_option("--machine", machine, "power, upower, or file:<path>")->capture_default_str();
        cmd.add_option("--k", k, "accuracy parameter k >= 1")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 28))
            ->capture_default_str();
        cmd.add_flag("--from-one", from_one, "upower: exclude a^1, recognizing {a^(2^n) : n >= 1}");
    }

    // Returns an exit code on failure.
    std::optional<int> open(OwnedMachine &out) const {
        qca_machine *m = nullptr;
        qca_status s;
        if (machine == "power") {
            s = qca_machine_power(k, &m);
        } else if (machine == "upower") {
            s = qca_machine_upower(k, from_one ? 0 : 1, &m);
        } else if (machine.rfind("file:", 0) == 0) {
            s = qca_machine_load(machine.substr(5).c_str(), &m);
        } else {
            std::cerr << "error: unknown machine '" << machine << "' (expected power, upower, or file:<path>)\n";
            return kExitUsage;
        }
        if (s != QCA_OK) {
            return report_error(s);
        }
        out.reset(m);
        return std::nullopt;
    }
};

std::string label(const std::string &key) {
    std::string out = key;
    for (auto &c : out) {
        if (c == '_') {
            c = ' ';
        }
    }
    return out;
}

// Human-readable view of a flat result object.
void print_fields(const Json &j) {
    for (const auto &[key, value] : j.items()) {
        std::cout << label(key) << ": ";
        if (value.is_object() && value.contains("exact")) {
            std::cout << value["exact"].get<std::string>() << " (" << value["decimal"].get<std::string>() << ")";
        } else if (value.is_string()) {
            std::cout << value.get<std::string>();
        } else if (value.is_boolean()) {
            std::cout << (value.get<bool>() ? "yes" : "no");
        } else if (value.is_number_float()) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.12g", value.get<double>());
            std::cout << buf;
        } else {
            std::cout << value.dump();
        }
        std::cout << "\n";
    }
}

int emit(qca_status s, char *text, bool json) {
    OwnedString owned(text);
    if (owned) {
        if (json) {
            std::cout << owned.get() << "\n";
        } else {
            print_fields(Json::parse(owned.get()));
        }
    }
    if (s != QCA_OK) {
        return report_error(s);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact and sampled analysis of quantum automata with classical counters"};
    app.require_subcommand(1);
    int rc = kExitOk;

    // validate
    auto *validate = app.add_subcommand("validate", "check a machine's superoperators and transition table");
    MachineChoice validate_machine;
    std::string validate_file;
    bool validate_json = false;
    validate_machine.add_to(*validate);
    validate->add_option("file", validate_file, "machine file (same as --machine file:<path>)");
    validate->add_flag("--json", validate_json, "print the report as JSON");
    validate->callback([&] {
        if (!validate_file.empty()) {
            validate_machine.machine = "file:" + validate_file;
        }
        OwnedMachine m;
        if (auto e = validate_machine.open(m)) {
            rc = *e;
            return;
        }
        char *report = nullptr;
        const auto s = qca_validate(m.get(), &report);
        OwnedString owned(report);
        if (validate_json) {
            std::cout << owned.get() << "\n";
        } else if (owned) {
            const auto j = Json::parse(owned.get());
            std::cout << j["machine"].get<std::string>() << " (" << j["kind"].get<std::string>()
                      << "): " << j["superoperators"] << " superoperators, " << j["transitions"] << " transitions\n";
            for (const auto &issue : j["issues"]) {
                std::cout << "  " << issue["where"].get<std::string>() << ": " << issue["message"].get<std::string>()
                          << "\n";
            }
            std::cout << (s == QCA_OK ? "valid: every superoperator satisfies sum E^T E = I, every outcome has a "
                                        "transition, and no transition leaves the tape\n"
                                      : "invalid\n");
        }
        rc = s == QCA_OK ? kExitOk : (s == QCA_VALIDATION ? kExitValidation : report_error(s));
    });

    // run
    auto *run = app.add_subcommand("run", "run a machine on one input");
    MachineChoice run_machine;
    std::string input, mode = "exact";
    qca_sample_options sample;
    qca_sample_options_default(&sample);
    bool run_json = false, trace = false;
    run_machine.add_to(*run);
    run->add_option("--input", input, "input word, literal (aabbbb) or run-length (a2b4)")->required();
    run->add_option("--mode", mode, "exact, enumerate, or sample")
        ->check(CLI::IsMember({"exact", "enumerate", "sample"}))
        ->capture_default_str();
    run->add_option("--seed", sample.seed, "random seed")->capture_default_str();
    run->add_option("--step-budget", sample.step_budget, "steps allowed per trajectory")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run->add_option("--trajectories", sample.trajectories, "number of sampled trajectories")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run->add_option("--threads", sample.threads, "worker threads (0: QCA_THREADS or all cores)");
    run->add_flag("--trace", trace, "sample mode: print one trajectory step by step as CSV");
    run->add_flag("--json", run_json, "print results as JSON");
    run->callback([&] {
        OwnedMachine m;
        if (auto e = run_machine.open(m)) {
            rc = *e;
            return;
        }
        char *out = nullptr;
        qca_status s;
        if (mode == "exact") {
            s = qca_run_exact(m.get(), input.c_str(), &out);
        } else if (mode == "enumerate") {
            s = qca_run_enumerate(m.get(), input.c_str(), &out);
        } else if (trace) {
            s = qca_run_trace(m.get(), input.c_str(), sample.seed, sample.step_budget, &out);
            OwnedString owned(out);
            if (owned) {
                std::cout << owned.get();
            }
            rc = s == QCA_OK ? kExitOk : report_error(s);
            return;
        } else {
            s = qca_run_sample(m.get(), input.c_str(), &sample, &out);
        }
        rc = emit(s, out, run_json);
    });

    // profile
    auto *profile = app.add_subcommand("profile", "largest counter value on one input");
    MachineChoice profile_machine;
    std::string profile_input, profile_mode = "exact";
    std::uint64_t profile_seed = 0;
    bool profile_json = false;
    profile_machine.machine = "upower";
    profile_machine.add_to(*profile);
    profile->add_option("--input", profile_input, "input word")->required();
    profile->add_option("--mode", profile_mode, "exact (every reachable configuration) or sample (one trajectory)")
        ->check(CLI::IsMember({"exact", "sample"}))
        ->capture_default_str();
    profile->add_option("--seed", profile_seed, "random seed for sample mode");
    profile->add_flag("--json", profile_json, "print results as JSON");
    profile->callback([&] {
        OwnedMachine m;
        if (auto e = profile_machine.open(m)) {
            rc = *e;
            return;
        }
        char *out = nullptr;
        const auto s = qca_profile(m.get(), profile_input.c_str(), profile_mode == "sample" ? 1 : 0, profile_seed, &out);
        rc = emit(s, out, profile_json);
    });

    // sweep
    auto *sweep = app.add_subcommand("sweep", "exact probabilities over a grid of k and input sizes");
    std::string sweep_machine = "power", k_range = "1", m_range = "1..4", n_range = "1..16", format = "csv";
    unsigned sweep_threads = 0;
    bool sweep_from_one = false;
    sweep->add_option("--machine", sweep_machine, "power or upower")
        ->check(CLI::IsMember({"power", "upower"}))
        ->capture_default_str();
    sweep->add_option("--k", k_range, "k value or range lo..hi")->capture_default_str();
    sweep->add_option("--m", m_range, "range of m (a-count)")->capture_default_str();
    sweep->add_option("--n", n_range, "range of n (b-count, power only)")->capture_default_str();
    sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sweep->add_option("--threads", sweep_threads, "worker threads (0: QCA_THREADS or all cores)");
    sweep->add_flag("--from-one", sweep_from_one, "upower: exclude a^1");
    sweep->callback([&] {
        const qca_sweep_request req{sweep_machine.c_str(), k_range.c_str(), m_range.c_str(), n_range.c_str(),
                                    sweep_from_one ? 0 : 1,  sweep_threads,   format.c_str()};
        char *out = nullptr;
        const auto s = qca_sweep(&req, &out);
        OwnedString owned(out);
        if (s != QCA_OK) {
            rc = report_error(s);
            return;
        }
        std::cout << owned.get();
    });

    // foursquare
    auto *foursquare = app.add_subcommand("foursquare", "canonical a >= b >= c >= d with a^2+b^2+c^2+d^2 = n");
    std::uint64_t fs_n = 0;
    foursquare->add_option("n", fs_n, "non-negative integer")->required();
    foursquare->callback([&] {
        uint64_t out[4];
        const auto s = qca_foursquare(fs_n, out);
        if (s != QCA_OK) {
            rc = report_error(s);
            return;
        }
        std::cout << out[0] << " " << out[1] << " " << out[2] << " " << out[3] << "\n";
    });

    // family
    auto *family = app.add_subcommand("family", "membership and bounds for a unary language family");
    std::string family_spec, family_input;
    std::int64_t family_k = 1;
    std::optional<std::uint64_t> family_length;
    bool family_json = false;
    family->add_option("--family", family_spec,
                       "upower | poly:<c0,c1,...> | powerbase:<m> | polypower:<c0,...>:<m> | iter:<base>:<family>")
        ->required();
    family->add_option("--k", family_k, "accuracy parameter k >= 1")
        ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 28))
        ->capture_default_str();
    auto *length_opt = family->add_option("--length", family_length, "word length to test");
    family->add_option("--input", family_input, "unary word to test, literal or run-length (a64)")
        ->excludes(length_opt);
    family->add_flag("--json", family_json, "print results as JSON");
    family->callback([&] {
        std::optional<std::string> word;
        if (family_length) {
            word = "a" + std::to_string(*family_length);
        } else if (!family_input.empty()) {
            word = family_input;
        }
        char *out = nullptr;
        const auto s = qca_family(family_spec.c_str(), family_k, word ? word->c_str() : nullptr, &out);
        rc = emit(s, out, family_json);
    });

    // export
    auto *exporter = app.add_subcommand("export", "write a machine file");
    MachineChoice export_machine;
    std::string export_path;
    export_machine.add_to(*exporter);
    exporter->add_option("--output", export_path, "destination (default: standard output)");
    exporter->callback([&] {
        OwnedMachine m;
        if (auto e = export_machine.open(m)) {
            rc = *e;
            return;
        }
        char *out = nullptr;
        const auto s = qca_machine_to_json(m.get(), &out);
        OwnedString owned(out);
        if (s != QCA_OK) {
            rc = report_error(s);
            return;
        }
        if (export_path.empty()) {
            std::cout << owned.get();
        } else {
            std::ofstream file(export_path, std::ios::binary);
            file << owned.get();
            if (!file) {
                std::cerr << "error: cannot write '" << export_path << "'\n";
                rc = kExitUsage;
            }
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }
    return rc;
}
