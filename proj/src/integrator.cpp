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

#include "cascade/integrator.hpp"

#include <cmath>
#include <string>

#include "cascade/generator.hpp"

namespace cascade::integrator {

using qmath::cdouble;
using qmath::ComplexMatrix;

ComplexMatrix rk4_step(const GeneratorFn& generator, const ComplexMatrix& rho, double t, double dt) {
    if (dt <= 0.0) throw CascadeError("BAD_STEP", "rk4_step: dt must be positive");
    const ComplexMatrix k1 = generator(rho, t);
    const ComplexMatrix k2 = generator(rho + (0.5 * dt) * k1, t + 0.5 * dt);
    const ComplexMatrix k3 = generator(rho + (0.5 * dt) * k2, t + 0.5 * dt);
    const ComplexMatrix k4 = generator(rho + dt * k3, t + dt);

    ComplexMatrix next = rho;
    next += (dt / 6.0) * k1;
    next += (dt / 3.0) * k2;
    next += (dt / 3.0) * k3;
    next += (dt / 6.0) * k4;
    next = qmath::hermitize(next);
    const cdouble tr = next.trace();
    if (std::abs(tr - cdouble(1.0, 0.0)) > 1e-12 && std::abs(tr) > 0.0) next *= 1.0 / tr;
    return next;
}

namespace {

void check_frame_supported(const CascadeModel& model) {
    if (!model.enforced()) return;
    for (std::size_t m = 0; m < model.carrier_count(); ++m) {
        if (m >= model.stability_drift.size()) continue;
        for (std::size_t n = 0; n < model.stability_drift[m].size(); ++n) {
            const ComplexMatrix& h = model.stability_drift[m][n];
            for (std::size_t l = 0; l < model.term_count(); ++l) {
                const ComplexMatrix& a = model.carrier_op(l, m, n);
                const double scale = std::max(1.0, h.max_abs() * a.max_abs());
                if (qmath::commutator(h, a).max_abs() > 1e-12 * scale)
                    throw CascadeError(
                        "FRAME_UNSUPPORTED",
                        "carrier " + std::to_string(m + 1) +
                            ": enforcement drift does not commute with coupling term " +
                            std::to_string(l + 1) +
                            "; the continuous-limit interaction frame is ill-defined here");
            }
        }
    }
}

}  // namespace

Trajectory evolve_me(const GeneratorBundle& bundle, const CascadeModel& model,
                     const ComplexMatrix& rho0, double t_end, double dt,
                     const std::vector<Observable>& observables, const EvolveOptions& options) {
    if (dt <= 0.0 || t_end < 0.0)
        throw CascadeError("BAD_STEP", "evolve_me: need dt > 0 and t_end >= 0");
    if (rho0.rows() != model.carrier_space_dim() || !rho0.square())
        throw CascadeError("DIM_MISMATCH", "evolve_me: rho0 does not match the carrier space");

    if (!model.enforced()) {
        const generator::StabilityReport stability = generator::check_stability(model);
        if (!stability.satisfied)
            throw CascadeError("STABILITY_VIOLATED",
                               "stability condition fails: |delta| = " +
                                   std::to_string(stability.worst_abs_delta) + " at carrier " +
                                   std::to_string(stability.worst_carrier + 1) + ", term " +
                                   std::to_string(stability.worst_term + 1) +
                                   "; run enforce_stability first");
    }
    check_frame_supported(model);

    const auto rhs = [&](const ComplexMatrix& x, double t) {
        return generator::apply_cascade_generator(bundle, model, x, t);
    };

    const std::size_t n_steps = static_cast<std::size_t>(std::llround(t_end / dt));
    const std::size_t sample_every = std::max<std::size_t>(1, options.sample_every);

    Trajectory traj;
    traj.dt = dt;
    traj.method = "rk4-cascade-me";
    traj.model_digest = digest_hex(model_digest(model));
    for (const Observable& obs : observables) traj.labels.push_back(obs.label);
    traj.expectations.resize(observables.size());

    bool positivity_warned = false;
    auto record = [&](const ComplexMatrix& rho, double t) {
        traj.times.push_back(t);
        if (options.record_states) traj.states.push_back(rho);
        for (std::size_t k = 0; k < observables.size(); ++k)
            traj.expectations[k].push_back((observables[k].matrix * rho).trace().real());
        if (!positivity_warned) {
            const double min_eig = qmath::min_eigenvalue(qmath::hermitize(rho));
            if (min_eig < -1e-7) {
                traj.warnings.push_back("positivity: min eigenvalue " + std::to_string(min_eig) +
                                        " at t = " + std::to_string(t));
                positivity_warned = true;
            }
        }
    };

    ComplexMatrix rho = rho0;
    record(rho, 0.0);
    for (std::size_t n = 0; n < n_steps; ++n) {
        rho = rk4_step(rhs, rho, n * dt, dt);
        if ((n + 1) % sample_every == 0) record(rho, (n + 1) * dt);
    }
    traj.final_state = rho;
    return traj;
}

}  // namespace cascade::integrator
