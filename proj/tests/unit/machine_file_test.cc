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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "qca/errors.h"
#include "qca/explore.h"
#include "qca/machine_file.h"
#include "qca/power.h"
#include "qca/upower.h"

using namespace qca;

TEST_CASE("machine files round-trip byte for byte") {
    for (std::int64_t k = 1; k <= 3; ++k) {
        for (const auto &spec : {build_power(PowerParams::make(k)), build_upower(PowerParams::make(k))}) {
            const auto text = machine_to_json(spec);
            const auto again = machine_to_json(machine_from_json(text));
            CHECK(text == again);
            CHECK(validate_machine(machine_from_json(text)).ok());
        }
    }
}

TEST_CASE("loaded machines behave like the originals") {
    const auto params = PowerParams::make(2);
    const auto spec = build_upower(params);
    const auto loaded = machine_from_json(machine_to_json(spec));
    for (std::uint64_t m : {2, 3, 5}) {
        const auto a = enumerate_round(spec, Tape::from_runs(spec, {{'a', m}}));
        const auto b = enumerate_round(loaded, Tape::from_runs(loaded, {{'a', m}}));
        CHECK(a.p_accept == b.p_accept);
        CHECK(a.p_reject == b.p_reject);
    }
}

TEST_CASE("entry order in the file does not matter") {
    const auto text = machine_to_json(build_power(PowerParams::make(1)));
    auto j = nlohmann::json::parse(text);
    std::mt19937_64 gen(9);
    for (const char *table : {"states", "delta_q", "delta_c"}) {
        std::shuffle(j[table].begin(), j[table].end(), gen);
    }
    CHECK(machine_to_json(machine_from_json(j.dump())) == text);
}

TEST_CASE("deterministic machines omit the register") {
    MachineBuilder b("walk", MachineKind::DeterministicCounter, "a");
    const auto s = b.state("s");
    b.set_start(s).set_accept(b.state("yes")).set_reject(b.state("no"));
    b.deterministic(s, kLeftEnd, CounterStatus::Zero, {s, Move::Right, 1, false});
    b.deterministic(s, b.symbol('a'), CounterStatus::Nonzero, {s, Move::Right, 1, false});
    b.deterministic(s, kRightEnd, CounterStatus::Nonzero, {*b.build().state_of("yes"), Move::Stay, 0, false});
    const auto text = machine_to_json(b.build());
    const auto j = nlohmann::json::parse(text);
    CHECK_FALSE(j.contains("delta_q"));
    CHECK_FALSE(j.contains("basis"));
    CHECK_FALSE(j["delta_c"][0].contains("outcome"));
    CHECK(machine_to_json(machine_from_json(text)) == text);
}

TEST_CASE("malformed machine files are parse errors") {
    const auto good = nlohmann::json::parse(machine_to_json(build_power(PowerParams::make(1))));
    auto expect_parse_error = [](const std::string &text) {
        try {
            machine_from_json(text);
            FAIL("accepted a malformed file");
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::Parse);
        }
    };
    expect_parse_error("{");
    expect_parse_error("[]");
    auto j = good;
    j["kind"] = "turing-machine";
    expect_parse_error(j.dump());
    j = good;
    j["delta_c"][0]["target"] = "nowhere";
    expect_parse_error(j.dump());
    j = good;
    j["delta_q"][0]["elements"][0]["matrix"].erase(0);
    expect_parse_error(j.dump());
    j = good;
    j["delta_q"][0]["elements"][0]["matrix"][0][0] = "1/0";
    expect_parse_error(j.dump());
    j = good;
    j["delta_c"].push_back(j["delta_c"][0]);
    expect_parse_error(j.dump());
    j = good;
    j["delta_c"][0]["symbol"] = "z";
    expect_parse_error(j.dump());
    j = good;
    j["delta_c"][0]["counter"] = "zero";
    expect_parse_error(j.dump());
    j = good;
    j["states"][0]["role"] = "start";
    expect_parse_error(j.dump());
    j = good;
    j["initial_basis"] = "q9";
    expect_parse_error(j.dump());
    j = good;
    j["delta_c"][0]["move"] = "up";
    expect_parse_error(j.dump());
    j = good;
    j["delta_c"][0].erase("restart");
    expect_parse_error(j.dump());
}

TEST_CASE("invalid but well-formed files load and fail validation") {
    auto j = nlohmann::json::parse(machine_to_json(build_power(PowerParams::make(1))));
    j["delta_q"][0]["elements"][0]["matrix"][0][0] = "1/3";
    const auto spec = machine_from_json(j.dump());
    CHECK_FALSE(validate_machine(spec).ok());
}

TEST_CASE("file I/O") {
    const auto spec = build_power(PowerParams::make(1));
    const std::string path = "machine_file_test_power.json";
    save_machine(spec, path);
    CHECK(machine_to_json(load_machine(path)) == machine_to_json(spec));
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_machine("/nonexistent/dir/machine.json"), Error);
}
