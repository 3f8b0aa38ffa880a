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

#include "cascade/model_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cascade::io {

using qmath::cdouble;
using qmath::ComplexMatrix;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw CascadeError("PARSE_ERROR", path + ": " + message);
}

const json& expect(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) fail(path, std::string("missing key '") + key + "'");
    return j.at(key);
}

double expect_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j.at(0).is_array() ? j.at(0).size() : 0;
    if (cols == 0) fail(path + "[0]", "expected a non-empty row");
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j.at(i);
        const std::string row_path = path + "[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != cols) fail(row_path, "ragged row");
        for (std::size_t k = 0; k < cols; ++k) {
            const json& entry = row.at(k);
            const std::string entry_path = row_path + "[" + std::to_string(k) + "]";
            if (!entry.is_array() || entry.size() != 2)
                fail(entry_path, "complex entries are [re, im] pairs");
            m(i, k) = cdouble(expect_number(entry.at(0), entry_path + "[0]"),
                              expect_number(entry.at(1), entry_path + "[1]"));
        }
    }
    return m;
}

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k)
            row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

ModelDocument parse_model(const json& doc) {
    ModelDocument out;
    CascadeModel& model = out.model;

    const json& carriers = expect(doc, "carriers", "$");
    if (!carriers.is_array() || carriers.empty()) fail("$.carriers", "expected a non-empty array");
    for (std::size_t m = 0; m < carriers.size(); ++m) {
        const std::string path = "$.carriers[" + std::to_string(m) + "]";
        const json& c = carriers.at(m);
        const json& dim = expect(c, "dim", path);
        if (!dim.is_number_unsigned() || dim.get<std::size_t>() < 1)
            fail(path + ".dim", "expected a positive integer");
        model.carrier_dims.push_back(dim.get<std::size_t>());
        model.free_hamiltonians.emplace_back();
        if (c.contains("free_hamiltonian"))
            model.free_hamiltonians.back().push_back(
                matrix_from_json(c.at("free_hamiltonian"), path + ".free_hamiltonian"));
    }

    const json& env = expect(doc, "environment", "$");
    const json& env_dim = expect(env, "dim", "$.environment");
    if (!env_dim.is_number_unsigned() || env_dim.get<std::size_t>() < 1)
        fail("$.environment.dim", "expected a positive integer");
    model.env_dim = env_dim.get<std::size_t>();
    model.eta = matrix_from_json(expect(env, "eta", "$.environment"), "$.environment.eta");
    const json& kraus = expect(env, "damper_kraus", "$.environment");
    if (!kraus.is_array() || kraus.empty())
        fail("$.environment.damper_kraus", "expected a non-empty array of matrices");
    for (std::size_t k = 0; k < kraus.size(); ++k)
        model.damper.kraus.push_back(matrix_from_json(
            kraus.at(k), "$.environment.damper_kraus[" + std::to_string(k) + "]"));

    const json& coupling = expect(doc, "coupling", "$");
    if (!coupling.is_array()) fail("$.coupling", "expected an array");
    for (std::size_t l = 0; l < coupling.size(); ++l) {
        const std::string path = "$.coupling[" + std::to_string(l) + "]";
        const json& term = coupling.at(l);
        CouplingTerm parsed;
        const json& ops = expect(term, "carrier_ops", path);
        if (!ops.is_array() || ops.size() != model.carrier_dims.size())
            fail(path + ".carrier_ops", "expected one matrix per carrier");
        for (std::size_t m = 0; m < ops.size(); ++m)
            parsed.carrier_ops.push_back(
                matrix_from_json(ops.at(m), path + ".carrier_ops[" + std::to_string(m) + "]"));
        parsed.env_op = matrix_from_json(expect(term, "env_op", path), path + ".env_op");
        if (term.contains("carrier_ops_timed")) {
            const json& timed = term.at("carrier_ops_timed");
            if (!timed.is_array() || timed.size() != model.carrier_dims.size())
                fail(path + ".carrier_ops_timed", "expected one sample list per carrier");
            for (std::size_t m = 0; m < timed.size(); ++m) {
                parsed.carrier_ops_timed.emplace_back();
                const std::string mpath = path + ".carrier_ops_timed[" + std::to_string(m) + "]";
                if (!timed.at(m).is_array()) fail(mpath, "expected an array of matrices");
                for (std::size_t n = 0; n < timed.at(m).size(); ++n)
                    parsed.carrier_ops_timed.back().push_back(matrix_from_json(
                        timed.at(m).at(n), mpath + "[" + std::to_string(n) + "]"));
            }
        }
        model.coupling.push_back(std::move(parsed));
    }

    model.gamma = expect_number(expect(doc, "gamma", "$"), "$.gamma");

    if (doc.contains("discrete")) {
        const json& d = doc.at("discrete");
        DiscreteParams params;
        params.dt = expect_number(expect(d, "dt", "$.discrete"), "$.discrete.dt");
        const json& steps = expect(d, "n_steps", "$.discrete");
        if (!steps.is_number_unsigned()) fail("$.discrete.n_steps", "expected a non-negative integer");
        params.n_steps = steps.get<std::size_t>();
        const std::string regime = expect(d, "regime", "$.discrete").get<std::string>();
        if (regime == "dissipative") {
            params.regime = Regime::dissipative;
            if (d.contains("g"))
                fail("$.discrete.g", "g is computed as sqrt(gamma/dt) in the dissipative regime");
            if (params.dt <= 0.0) fail("$.discrete.dt", "expected dt > 0");
            params.g = std::sqrt(model.gamma / params.dt);
        } else if (regime == "unitary-limit") {
            params.regime = Regime::unitary_limit;
            params.g = expect_number(expect(d, "g", "$.discrete"), "$.discrete.g");
        } else {
            fail("$.discrete.regime", "expected \"dissipative\" or \"unitary-limit\"");
        }
        model.discrete = params;
    }

    if (doc.contains("enforced")) {
        const json& enf = doc.at("enforced");
        const json& env_ops = expect(enf, "env_ops", "$.enforced");
        const json& drift = expect(enf, "drift", "$.enforced");
        if (!env_ops.is_array() || env_ops.size() != model.carrier_dims.size())
            fail("$.enforced.env_ops", "expected one op list per carrier");
        if (!drift.is_array() || drift.size() != model.carrier_dims.size())
            fail("$.enforced.drift", "expected one sample list per carrier");
        for (std::size_t m = 0; m < env_ops.size(); ++m) {
            model.rescaled_env_ops.emplace_back();
            const std::string path = "$.enforced.env_ops[" + std::to_string(m) + "]";
            if (!env_ops.at(m).is_array() || env_ops.at(m).size() != model.coupling.size())
                fail(path, "expected one matrix per coupling term");
            for (std::size_t l = 0; l < env_ops.at(m).size(); ++l)
                model.rescaled_env_ops.back().push_back(
                    matrix_from_json(env_ops.at(m).at(l), path + "[" + std::to_string(l) + "]"));
        }
        for (std::size_t m = 0; m < drift.size(); ++m) {
            model.stability_drift.emplace_back();
            const std::string path = "$.enforced.drift[" + std::to_string(m) + "]";
            if (!drift.at(m).is_array()) fail(path, "expected an array of matrices");
            for (std::size_t n = 0; n < drift.at(m).size(); ++n)
                model.stability_drift.back().push_back(
                    matrix_from_json(drift.at(m).at(n), path + "[" + std::to_string(n) + "]"));
        }
    }

    out.initial_state =
        matrix_from_json(expect(doc, "initial_state", "$"), "$.initial_state");

    if (doc.contains("observables")) {
        const json& observables = doc.at("observables");
        if (!observables.is_array()) fail("$.observables", "expected an array");
        for (std::size_t k = 0; k < observables.size(); ++k) {
            const std::string path = "$.observables[" + std::to_string(k) + "]";
            const json& obs = observables.at(k);
            Observable parsed;
            parsed.label = expect(obs, "label", path).get<std::string>();
            parsed.matrix = matrix_from_json(expect(obs, "matrix", path), path + ".matrix");
            out.observables.push_back(std::move(parsed));
        }
    }

    const std::vector<Violation> violations = validate_model(model);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "model fails validation:";
        for (const Violation& v : violations)
            msg << " [" << v.code << "] " << v.where << " (residual " << v.residual << ");";
        throw CascadeError("PARSE_ERROR", msg.str());
    }
    return out;
}

ModelDocument load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CascadeError("PARSE_ERROR", path + ": cannot open file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw CascadeError("PARSE_ERROR", path + ": " + e.what());
    }
    return parse_model(doc);
}

json to_json(const ModelDocument& doc) {
    const CascadeModel& model = doc.model;
    json out;

    json carriers = json::array();
    for (std::size_t m = 0; m < model.carrier_dims.size(); ++m) {
        json c;
        c["dim"] = model.carrier_dims[m];
        if (m < model.free_hamiltonians.size() && !model.free_hamiltonians[m].empty())
            c["free_hamiltonian"] = matrix_to_json(model.free_hamiltonians[m].front());
        carriers.push_back(std::move(c));
    }
    out["carriers"] = std::move(carriers);

    json env;
    env["dim"] = model.env_dim;
    env["eta"] = matrix_to_json(model.eta);
    json kraus = json::array();
    for (const ComplexMatrix& k : model.damper.kraus) kraus.push_back(matrix_to_json(k));
    env["damper_kraus"] = std::move(kraus);
    out["environment"] = std::move(env);

    json coupling = json::array();
    for (const CouplingTerm& term : model.coupling) {
        json t;
        json ops = json::array();
        for (const ComplexMatrix& a : term.carrier_ops) ops.push_back(matrix_to_json(a));
        t["carrier_ops"] = std::move(ops);
        t["env_op"] = matrix_to_json(term.env_op);
        bool any_timed = false;
        for (const auto& samples : term.carrier_ops_timed)
            if (!samples.empty()) any_timed = true;
        if (any_timed) {
            json timed = json::array();
            for (const auto& samples : term.carrier_ops_timed) {
                json list = json::array();
                for (const ComplexMatrix& a : samples) list.push_back(matrix_to_json(a));
                timed.push_back(std::move(list));
            }
            t["carrier_ops_timed"] = std::move(timed);
        }
        coupling.push_back(std::move(t));
    }
    out["coupling"] = std::move(coupling);

    out["gamma"] = model.gamma;

    if (model.discrete) {
        json d;
        d["dt"] = model.discrete->dt;
        d["n_steps"] = model.discrete->n_steps;
        d["regime"] =
            model.discrete->regime == Regime::dissipative ? "dissipative" : "unitary-limit";
        if (model.discrete->regime == Regime::unitary_limit) d["g"] = model.discrete->g;
        out["discrete"] = std::move(d);
    }

    if (model.enforced()) {
        json enf;
        json env_ops = json::array();
        for (const auto& ops : model.rescaled_env_ops) {
            json list = json::array();
            for (const ComplexMatrix& b : ops) list.push_back(matrix_to_json(b));
            env_ops.push_back(std::move(list));
        }
        enf["env_ops"] = std::move(env_ops);
        json drift = json::array();
        for (const auto& family : model.stability_drift) {
            json list = json::array();
            for (const ComplexMatrix& h : family) list.push_back(matrix_to_json(h));
            drift.push_back(std::move(list));
        }
        enf["drift"] = std::move(drift);
        out["enforced"] = std::move(enf);
    }

    out["initial_state"] = matrix_to_json(doc.initial_state);

    json observables = json::array();
    for (const Observable& obs : doc.observables) {
        json o;
        o["label"] = obs.label;
        o["matrix"] = matrix_to_json(obs.matrix);
        observables.push_back(std::move(o));
    }
    out["observables"] = std::move(observables);
    return out;
}

void save_model(const ModelDocument& doc, const std::string& path) {
    write_text_file(path, to_json(doc).dump(2) + "\n");
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream out;
    out << "time";
    for (const std::string& label : traj.labels) out << "," << label;
    out << "\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        out << format_double(traj.times[i]);
        for (const auto& column : traj.expectations) out << "," << format_double(column[i]);
        out << "\n";
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CascadeError("IO_ERROR", path + ": cannot open for writing");
    out << content;
    if (!out) throw CascadeError("IO_ERROR", path + ": write failed");
}

json report_to_json(const verify::VerificationReport& report) {
    json out;
    out["check"] = report.check;
    out["status"] = report.pass ? "pass" : "fail";
    out["seed"] = report.seed;
    out["inputs_digest"] = report.inputs_digest;
    json measurements = json::array();
    for (const verify::Measurement& m : report.measurements) {
        json entry;
        entry["name"] = m.name;
        entry["value"] = m.value;
        entry["lo"] = m.lo;
        if (std::isfinite(m.hi)) {
            entry["hi"] = m.hi;
        } else {
            entry["hi"] = "inf";
        }
        entry["pass"] = m.pass;
        entry["informational"] = m.informational;
        measurements.push_back(std::move(entry));
    }
    out["measurements"] = std::move(measurements);
    out["notes"] = report.notes;
    return out;
}

json bundle_to_json(const GeneratorBundle& bundle) {
    json out;
    out["deltas"] = bundle.deltas;
    json h_eff = json::array();
    for (const ComplexMatrix& h : bundle.h_eff) h_eff.push_back(matrix_to_json(h));
    out["h_eff"] = std::move(h_eff);
    json gamma_local = json::array();
    for (const ComplexMatrix& g : bundle.gamma_local) gamma_local.push_back(matrix_to_json(g));
    out["gamma_local"] = std::move(gamma_local);
    json gamma_cross = json::array();
    for (const GeneratorBundle::CrossEntry& e : bundle.gamma_cross) {
        json entry;
        entry["m"] = e.m + 1;
        entry["m_prime"] = e.m_prime + 1;
        entry["matrix"] = matrix_to_json(e.gamma);
        gamma_cross.push_back(std::move(entry));
    }
    out["gamma_cross"] = std::move(gamma_cross);
    json rates = json::array();
    for (const GeneratorBundle::RateSet& r : bundle.rates) {
        json entry;
        entry["rates"] = r.rates;
        json ops = json::array();
        for (const ComplexMatrix& op : r.ops) ops.push_back(matrix_to_json(op));
        entry["lindblad_ops"] = std::move(ops);
        rates.push_back(std::move(entry));
    }
    out["rates"] = std::move(rates);
    if (!bundle.drift.empty()) {
        json drift = json::array();
        for (const auto& family : bundle.drift) {
            json list = json::array();
            for (const ComplexMatrix& h : family) list.push_back(matrix_to_json(h));
            drift.push_back(std::move(list));
        }
        out["frame_drift"] = std::move(drift);
    }
    return out;
}

}  // namespace cascade::io
