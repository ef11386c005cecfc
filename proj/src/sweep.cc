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

#include "qca/sweep.h"

#include <atomic>
#include <bit>
#include <charconv>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qca/errors.h"
#include "qca/trajectory.h"

namespace qca {

ExactRow exact_power(std::uint64_t m, std::uint64_t n, const PowerParams &params) {
    ExactRow row;
    row.machine = "power";
    row.k = params.k;
    row.m = m;
    row.n = n;
    if (m == 0 || n == 0) {
        row.round_reject = Rat(1);
    } else {
        row.member = m < 64 && n == (std::uint64_t{1} << m);
        const auto round = round_closed_form(m, n, params);
        row.round_accept = round.p_accept;
        row.round_reject = round.p_reject;
        row.round_restart = Rat(1) - round.p_accept - round.p_reject;
    }
    row.overall = solve_restart(row.round_accept, row.round_reject);
    return row;
}

ExactRow exact_upower(std::uint64_t m, const PowerParams &params, const UpowerOptions &options) {
    const auto a = analyze_upower(m, params, options);
    ExactRow row;
    row.machine = "upower";
    row.k = params.k;
    row.m = m;
    row.member = a.member;
    row.round_accept = a.pass_accept;
    row.round_reject = a.pass_reject;
    row.round_restart = a.pass_restart;
    row.overall = a.overall;
    row.max_counter = predicted_max_counter(m, options);
    return row;
}

Range parse_range(const std::string &text) {
    auto number = [&](std::string_view s) {
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
            fail(ErrorKind::Input, "malformed range '" + text + "'");
        }
        return v;
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const auto v = number(text);
        return {v, v};
    }
    Range r{number(std::string_view(text).substr(0, dots)), number(std::string_view(text).substr(dots + 2))};
    if (r.lo > r.hi) {
        fail(ErrorKind::Input, "empty range '" + text + "'");
    }
    return r;
}

std::vector<ExactRow> sweep(const SweepRequest &request) {
    const bool power = request.machine == "power";
    if (!power && request.machine != "upower") {
        fail(ErrorKind::Input, "sweeps need a built-in machine (power or upower), not '" + request.machine + "'");
    }
    struct Cell {
        std::int64_t k;
        std::uint64_t m, n;
    };
    std::vector<Cell> cells;
    for (auto k = request.k.lo; k <= request.k.hi; ++k) {
        for (auto m = request.m.lo; m <= request.m.hi; ++m) {
            if (power) {
                for (auto n = request.n.lo; n <= request.n.hi; ++n) {
                    cells.push_back({static_cast<std::int64_t>(k), m, n});
                }
            } else {
                cells.push_back({static_cast<std::int64_t>(k), m, 0});
            }
        }
    }
    std::vector<std::optional<ExactRow>> rows(cells.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
            try {
                const auto params = PowerParams::make(cells[i].k);
                rows[i] = power ? exact_power(cells[i].m, cells[i].n, params)
                                : exact_upower(cells[i].m, params, request.options);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = cells.size();
            }
        }
    };
    const unsigned threads = std::min<std::size_t>(resolve_threads(request.threads), std::max<std::size_t>(1, cells.size()));
    {
        std::vector<std::jthread> workers;
        for (unsigned t = 1; t < threads; ++t) {
            workers.emplace_back(work);
        }
        work();
    }
    if (error) {
        std::rethrow_exception(error);
    }
    std::vector<ExactRow> out;
    out.reserve(rows.size());
    for (auto &r : rows) {
        out.push_back(std::move(*r));
    }
    return out;
}

namespace {

using Json = nlohmann::ordered_json;

Json rat_json(const Rat &r) {
    return Json{{"exact", r.str()}, {"decimal", r.decimal()}};
}

Json row_json(const ExactRow &row) {
    Json j;
    j["machine"] = row.machine;
    j["k"] = row.k;
    j["m"] = row.m;
    if (row.n) {
        j["n"] = *row.n;
    }
    j["member"] = row.member;
    const char *unit = row.machine == "upower" ? "pass" : "round";
    j[std::string(unit) + "_accept"] = rat_json(row.round_accept);
    j[std::string(unit) + "_reject"] = rat_json(row.round_reject);
    j[std::string(unit) + "_restart"] = rat_json(row.round_restart);
    if (row.overall) {
        j["accept_probability"] = rat_json(row.overall->overall_accept);
        j["reject_probability"] = rat_json(row.overall->overall_reject);
        j["expected_rounds"] = rat_json(row.overall->expected_rounds);
    }
    if (row.max_counter) {
        j["max_counter"] = *row.max_counter;
    }
    return j;
}

std::string quoted(const std::string &s) {
    return "\"" + s + "\"";
}

}  // namespace

std::string row_to_json(const ExactRow &row) {
    return row_json(row).dump(2);
}

std::string rows_to_json(const std::vector<ExactRow> &rows) {
    Json all = Json::array();
    for (const auto &r : rows) {
        all.push_back(row_json(r));
    }
    return all.dump(2) + "\n";
}

std::string rows_to_csv(const std::vector<ExactRow> &rows) {
    std::ostringstream out;
    out << "machine,k,m,n,member,round_accept,round_accept_decimal,round_reject,round_reject_decimal,"
           "accept_probability,accept_decimal,reject_probability,reject_decimal,expected_rounds,"
           "expected_rounds_decimal,max_counter\n";
    for (const auto &r : rows) {
        out << r.machine << ',' << r.k << ',' << r.m << ',' << (r.n ? std::to_string(*r.n) : "") << ','
            << (r.member ? "yes" : "no") << ',' << quoted(r.round_accept.str()) << ',' << r.round_accept.decimal()
            << ',' << quoted(r.round_reject.str()) << ',' << r.round_reject.decimal() << ',';
        if (r.overall) {
            out << quoted(r.overall->overall_accept.str()) << ',' << r.overall->overall_accept.decimal() << ','
                << quoted(r.overall->overall_reject.str()) << ',' << r.overall->overall_reject.decimal() << ','
                << quoted(r.overall->expected_rounds.str()) << ',' << r.overall->expected_rounds.decimal();
        } else {
            out << ",,,,,";
        }
        out << ',' << (r.max_counter ? std::to_string(*r.max_counter) : "") << '\n';
    }
    return out.str();
}

}  // namespace qca
