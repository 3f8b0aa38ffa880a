// Copyright 2026 The Cascade Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "cascade/generator.hpp"
#include "cascade/model_io.hpp"
#include "cascade/presets.hpp"

using namespace cascade;
using qmath::ComplexMatrix;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CASCADE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// value of a CSV column at a given time
double csv_value_at(const std::string& csv, const std::string& label, double t) {
    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    std::vector<std::string> headers;
    std::istringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');) headers.push_back(cell);
    std::size_t col = headers.size();
    for (std::size_t k = 0; k < headers.size(); ++k)
        if (headers[k] == label) col = k;
    REQUIRE(col < headers.size());
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<double> cells;
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(std::stod(cell));
        if (std::abs(cells[0] - t) < 1e-12) return cells[col];
    }
    FAIL("time not found in CSV");
    return 0.0;
}

}  // namespace

TEST_CASE("matrices round-trip through JSON exactly") {
    const ComplexMatrix m = qmath::kron(qmath::pauli_y(), qmath::annihilation_op(3));
    const ComplexMatrix back = io::matrix_from_json(io::matrix_to_json(m), "$");
    CHECK(qmath::max_abs_diff(m, back) == 0.0);
}

TEST_CASE("model documents round-trip field by field") {
    for (const std::string& name : {"ad-qubit", "ad-cascade-2", "zdrift-qubit", "jc-cascade"}) {
        const io::ModelDocument doc = presets::make(name);
        const io::ModelDocument back = io::parse_model(io::to_json(doc));
        CHECK(model_digest(doc.model) == model_digest(back.model));
        CHECK(qmath::max_abs_diff(doc.initial_state, back.initial_state) <= 1e-15);
        REQUIRE(doc.observables.size() == back.observables.size());
        for (std::size_t k = 0; k < doc.observables.size(); ++k) {
            CHECK(doc.observables[k].label == back.observables[k].label);
            CHECK(qmath::max_abs_diff(doc.observables[k].matrix, back.observables[k].matrix) <=
                  1e-15);
        }
    }

    // enforced models keep their rescaled operators and drift through a file
    io::ModelDocument enforced = presets::make("zdrift-qubit");
    enforced.model = generator::enforce_stability(enforced.model);
    const io::ModelDocument back = io::parse_model(io::to_json(enforced));
    REQUIRE(back.model.enforced());
    CHECK(model_digest(enforced.model) == model_digest(back.model));
}

TEST_CASE("parse errors carry the JSON path") {
    io::json doc = io::to_json(presets::make("ad-qubit"));
    doc.erase("gamma");
    try {
        io::parse_model(doc);
        FAIL("expected CascadeError");
    } catch (const CascadeError& e) {
        CHECK(std::string(e.what()).find("gamma") != std::string::npos);
    }

    doc = io::to_json(presets::make("ad-qubit"));
    doc["coupling"][0]["env_op"][0][0] = "oops";
    try {
        io::parse_model(doc);
        FAIL("expected CascadeError");
    } catch (const CascadeError& e) {
        CHECK(std::string(e.what()).find("coupling[0].env_op") != std::string::npos);
    }

    // g must not be supplied in the dissipative regime
    doc = io::to_json(presets::make("ad-qubit"));
    doc["discrete"]["g"] = 3.0;
    try {
        io::parse_model(doc);
        FAIL("expected CascadeError");
    } catch (const CascadeError& e) {
        CHECK(std::string(e.what()).find("discrete.g") != std::string::npos);
    }
}

TEST_CASE("CSV floats survive a round trip") {
    Trajectory traj;
    traj.times = {0.0, 1.0 / 3.0};
    traj.labels = {"value"};
    traj.expectations = {{0.12345678901234567, std::exp(-1.0)}};
    const std::string csv = io::trajectory_csv(traj);
    CHECK(csv.rfind("time,value\n", 0) == 0);

    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    CHECK(std::stod(line.substr(line.find(',') + 1)) == 0.12345678901234567);
    std::getline(in, line);
    CHECK(std::stod(line.substr(0, line.find(','))) == 1.0 / 3.0);
    CHECK(std::stod(line.substr(line.find(',') + 1)) == std::exp(-1.0));
}

TEST_CASE("cli: simulate-me on the amplitude-damping preset") {
    const std::string out = "/tmp/cascade_test_sim_me.csv";
    REQUIRE(run_cli("simulate-me --preset ad-qubit --t-end 3 --dt 1e-3 --output " + out) == 0);
    const std::string csv = slurp(out);
    CHECK(std::abs(csv_value_at(csv, "pop_e", 1.0) - 0.36787944117144233) <= 1e-6);
}

TEST_CASE("cli: stability workflow and exit codes") {
    CHECK(run_cli("check-stability --preset ad-qubit") == 0);
    CHECK(run_cli("check-stability --preset zdrift-qubit") == 1);

    const std::string enforced = "/tmp/cascade_test_enforced.json";
    REQUIRE(run_cli("enforce-stability --preset zdrift-qubit --output " + enforced) == 0);
    CHECK(run_cli("check-stability --config " + enforced) == 0);

    CHECK(run_cli("simulate-me --preset no-such-preset") == 2);
    CHECK(run_cli("simulate-me --config /tmp/does_not_exist_cascade.json") == 2);
    CHECK(run_cli("simulate-me") == 2);
    CHECK(run_cli("simulate-me --preset zdrift-qubit") == 2);  // stability violated
}

TEST_CASE("cli: identical invocations produce byte-identical files") {
    const std::string a = "/tmp/cascade_test_det_a.json";
    const std::string b = "/tmp/cascade_test_det_b.json";
    REQUIRE(run_cli("verify --preset ad-cascade-2 --seed 7 --output " + a) == 0);
    REQUIRE(run_cli("verify --preset ad-cascade-2 --seed 7 --output " + b) == 0);
    const std::string first = slurp(a);
    CHECK_FALSE(first.empty());
    CHECK(first == slurp(b));

    const std::string c = "/tmp/cascade_test_det_c.csv";
    const std::string d = "/tmp/cascade_test_det_d.csv";
    REQUIRE(run_cli("simulate-discrete --preset ad-qubit --t-end 0.2 --output " + c) == 0);
    REQUIRE(run_cli("simulate-discrete --preset ad-qubit --t-end 0.2 --output " + d) == 0);
    CHECK(slurp(c) == slurp(d));
}

TEST_CASE("cli: converge writes a passing report for ad-qubit") {
    const std::string out = "/tmp/cascade_test_conv.json";
    REQUIRE(run_cli("converge --preset ad-qubit --t-end 1 --dt 1e-3 --output " + out) == 0);
    const io::json report = io::json::parse(slurp(out));
    CHECK(report.at("status") == "pass");
}
