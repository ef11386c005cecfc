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

#ifndef QCA_SWEEP_H
#define QCA_SWEEP_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qca/upower.h"

namespace qca {

/// Exact behaviour of a built-in machine on one input, from closed forms.
/// For POWER the round fields describe one round; for UPOWER one pass of
/// the outer loop.
struct ExactRow {
    std::string machine;
    std::int64_t k = 1;
    std::uint64_t m = 0;
    std::optional<std::uint64_t> n;
    bool member = false;
    Rat round_accept;
    Rat round_reject;
    Rat round_restart;
    std::optional<RestartSolution> overall;
    /// Largest counter value (machines with a counter).
    std::optional<std::int64_t> max_counter;
};

/// POWER on a^m b^n. Inputs without the a+b+ shape (m or n zero) are
/// rejected in the first round with certainty.
ExactRow exact_power(std::uint64_t m, std::uint64_t n, const PowerParams &params);

/// UPOWER on a^m.
ExactRow exact_upower(std::uint64_t m, const PowerParams &params, const UpowerOptions &options = {});

struct Range {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
};

/// Parses "7" or "3..9" (inclusive).
Range parse_range(const std::string &text);

struct SweepRequest {
    std::string machine;  // "power" or "upower"
    Range k{1, 1};
    Range m{1, 8};
    Range n{1, 16};  // POWER only
    UpowerOptions options;
    unsigned threads = 0;
};

/// One row per (k, m[, n]) cell, ordered by k, then m, then n, whatever the
/// thread count.
std::vector<ExactRow> sweep(const SweepRequest &request);

std::string rows_to_csv(const std::vector<ExactRow> &rows);
std::string rows_to_json(const std::vector<ExactRow> &rows);
/// JSON object for a single row.
std::string row_to_json(const ExactRow &row);

}  // namespace qca

#endif
