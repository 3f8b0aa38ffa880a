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

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cascade/collision_engine.hpp"
#include "cascade/generator.hpp"
#include "cascade/integrator.hpp"
#include "cascade/model_io.hpp"
#include "cascade/presets.hpp"
#include "cascade/verify.hpp"

namespace {

using cascade::CascadeError;
using cascade::CascadeModel;
using cascade::DiscreteParams;
using cascade::GeneratorBundle;
using cascade::Regime;
using cascade::Trajectory;

struct CommonArgs {
    std::string config;
    std::string preset;
    std::string output;
    std::size_t sample_every = 10;
    double t_end = 0.0;  // 0 = use the model's discrete block
    double dt = 0.0;
    std::uint64_t seed = 1;
    double damper_p = 0.0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config, "model document (JSON)");
    cmd->add_option("--preset", args.preset, "built-in preset name");
    cmd->add_option("--output", args.output, "output file (stdout when omitted)");
    cmd->add_option("--sample-every", args.sample_every, "record every N steps")
        ->default_val(10);
    cmd->add_option("--t-end", args.t_end, "simulated time span");
    cmd->add_option("--dt", args.dt, "integrator / collision step");
    cmd->add_option("--seed", args.seed, "PRNG seed for randomized checks")->default_val(1);
    cmd->add_option("--damper-p", args.damper_p,
                    "depolarizing damper strength for presets that support it");
}

cascade::io::ModelDocument resolve_model(const CommonArgs& args) {
    if (args.config.empty() == args.preset.empty())
        throw CascadeError("PARSE_ERROR", "exactly one of --config or --preset is required");
    if (!args.preset.empty()) return cascade::presets::make(args.preset, args.damper_p);
    return cascade::io::load_model(args.config);
}

void apply_grid_overrides(CascadeModel& model, const CommonArgs& args) {
    DiscreteParams params = model.discrete.value_or(DiscreteParams{1e-3, 0.0, 1000, Regime::dissipative});
    if (args.dt > 0.0) params.dt = args.dt;
    double t_end = args.t_end;
    if (t_end <= 0.0) t_end = params.dt * static_cast<double>(params.n_steps);
    params.n_steps = static_cast<std::size_t>(std::llround(t_end / params.dt));
    if (params.regime == Regime::dissipative) params.g = std::sqrt(model.gamma / params.dt);
    model.discrete = params;
}

void emit(const std::string& output, const std::string& content) {
    if (output.empty()) {
        std::cout << content;
    } else {
        cascade::io::write_text_file(output, content);
    }
}

int run_simulate_discrete(const CommonArgs& args) {
    cascade::io::ModelDocument doc = resolve_model(args);
    apply_grid_overrides(doc.model, args);
    cascade::engine::SimulateOptions options;
    options.sample_every = args.sample_every;
    options.record_states = false;
    const Trajectory traj =
        cascade::engine::simulate_discrete(doc.model, doc.initial_state, doc.observables, options);
    emit(args.output, cascade::io::trajectory_csv(traj));
    return 0;
}

int run_simulate_me(const CommonArgs& args) {
    cascade::io::ModelDocument doc = resolve_model(args);
    const double dt = args.dt > 0.0 ? args.dt : (doc.model.discrete ? doc.model.discrete->dt : 1e-3);
    double t_end = args.t_end;
    if (t_end <= 0.0)
        t_end = doc.model.discrete
                    ? doc.model.discrete->dt * static_cast<double>(doc.model.discrete->n_steps)
                    : 1.0;
    const GeneratorBundle bundle = cascade::generator::build_bundle(doc.model);
    cascade::integrator::EvolveOptions options;
    options.sample_every = args.sample_every;
    options.record_states = false;
    const Trajectory traj = cascade::integrator::evolve_me(bundle, doc.model, doc.initial_state,
                                                           t_end, dt, doc.observables, options);
    emit(args.output, cascade::io::trajectory_csv(traj));
    return 0;
}

int run_build_generator(const CommonArgs& args) {
    cascade::io::ModelDocument doc = resolve_model(args);
    const GeneratorBundle bundle = cascade::generator::build_bundle(doc.model);
    emit(args.output, cascade::io::bundle_to_json(bundle).dump(2) + "\n");
    return 0;
}

int run_check_stability(const CommonArgs& args) {
    cascade::io::ModelDocument doc = resolve_model(args);
    const cascade::generator::StabilityReport stability =
        cascade::generator::check_stability(doc.model);
    cascade::verify::VerificationReport report;
    report.check = "check_stability";
    report.inputs_digest = cascade::digest_hex(cascade::model_digest(doc.model));
    report.add("worst_abs_delta", stability.worst_abs_delta, 0.0, 1e-10);
    report.notes.push_back("worst at carrier " + std::to_string(stability.worst_carrier + 1) +
                           ", term " + std::to_string(stability.worst_term + 1));
    report.finalize();
    emit(args.output, cascade::io::report_to_json(report).dump(2) + "\n");
    return report.pass ? 0 : 1;
}

int run_enforce_stability(const CommonArgs& args) {
    cascade::io::ModelDocument doc = resolve_model(args);
    doc.model = cascade::generator::enforce_stability(doc.model);
    if (args.output.empty())
        throw CascadeError("PARSE_ERROR", "enforce-stability requires --output");
    cascade::io::save_model(doc, args.output);
    return 0;
}

int run_converge(const CommonArgs& args) {
    cascade::io::ModelDocument doc = resolve_model(args);
    const double dt = args.dt > 0.0 ? args.dt : 1e-3;
    const double t_end = args.t_end > 0.0 ? args.t_end : 1.0;
    const cascade::verify::VerificationReport report = cascade::verify::convergence_study(
        doc.model, doc.initial_state, t_end, {4.0 * dt, 2.0 * dt, dt});
    emit(args.output, cascade::io::report_to_json(report).dump(2) + "\n");
    return report.pass ? 0 : 1;
}

int run_verify(const CommonArgs& args) {
    cascade::io::ModelDocument doc = resolve_model(args);
    const CascadeModel& model = doc.model;
    std::vector<cascade::verify::VerificationReport> reports;

    if (model.enforced()) {
        reports.push_back(cascade::verify::q_term_check(model, 20, args.seed));
    } else {
        const cascade::generator::StabilityReport stability =
            cascade::generator::check_stability(model);
        cascade::verify::VerificationReport report;
        report.check = "check_stability";
        report.inputs_digest = cascade::digest_hex(cascade::model_digest(model));
        report.add("worst_abs_delta", stability.worst_abs_delta, 0.0, 1e-10);
        report.finalize();
        reports.push_back(std::move(report));
    }

    if (!model.coupling.empty()) {
        const double dt = model.discrete ? model.discrete->dt : 1e-2;
        reports.push_back(cascade::verify::expansion_residual_check(model, dt));
    }

    if (model.carrier_count() >= 2) {
        const GeneratorBundle bundle = cascade::generator::build_bundle(model);
        reports.push_back(cascade::verify::causality_check(bundle, model, 20, args.seed));
    }

    if (model.discrete) {
        CascadeModel run = model;
        cascade::engine::SimulateOptions options;
        options.sample_every = args.sample_every;
        options.record_states = true;
        const Trajectory traj =
            cascade::engine::simulate_discrete(run, doc.initial_state, doc.observables, options);
        reports.push_back(cascade::verify::invariant_monitor(traj));
    }

    bool all_pass = true;
    cascade::io::json out = cascade::io::json::array();
    for (const auto& report : reports) {
        all_pass = all_pass && report.pass;
        out.push_back(cascade::io::report_to_json(report));
    }
    emit(args.output, out.dump(2) + "\n");
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cascade: collisional simulator and verifier for cascade open quantum systems"};
    app.require_subcommand(1);

    CommonArgs args;
    CLI::App* simulate_discrete = app.add_subcommand(
        "simulate-discrete", "run the exact collisional model, write a CSV trajectory");
    CLI::App* simulate_me =
        app.add_subcommand("simulate-me", "integrate the cascade master equation (RK4)");
    CLI::App* build_generator =
        app.add_subcommand("build-generator", "dump the generator coefficient tables as JSON");
    CLI::App* check_stability =
        app.add_subcommand("check-stability", "evaluate the environment stability condition");
    CLI::App* enforce_stability = app.add_subcommand(
        "enforce-stability", "rescale env operators and record the drift; write the new model");
    CLI::App* converge = app.add_subcommand(
        "converge", "discrete-to-continuous convergence study over {4dt, 2dt, dt}");
    CLI::App* verify = app.add_subcommand("verify", "run the applicable verification battery");
    for (CLI::App* cmd : {simulate_discrete, simulate_me, build_generator, check_stability,
                          enforce_stability, converge, verify})
        add_common(cmd, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (simulate_discrete->parsed()) return run_simulate_discrete(args);
        if (simulate_me->parsed()) return run_simulate_me(args);
        if (build_generator->parsed()) return run_build_generator(args);
        if (check_stability->parsed()) return run_check_stability(args);
        if (enforce_stability->parsed()) return run_enforce_stability(args);
        if (converge->parsed()) return run_converge(args);
        if (verify->parsed()) return run_verify(args);
    } catch (const CascadeError& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
