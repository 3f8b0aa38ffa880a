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

#include "cascade/collision_engine.hpp"

#include <cmath>
#include <numeric>

namespace cascade::engine {

using qmath::ComplexMatrix;

ColumnStepper::ColumnStepper(const CascadeModel& model)
    : model_(model), joint_layout_(model.joint_layout()), carrier_layout_(model.carrier_layout()) {
    if (!model.discrete)
        throw CascadeError("NO_DISCRETE_BLOCK", "discrete simulation requires discrete parameters");

    keep_carriers_.resize(model.carrier_count());
    std::iota(keep_carriers_.begin(), keep_carriers_.end(), std::size_t{0});

    damper_is_identity_ = model.damper.is_identity();
    if (!damper_is_identity_) {
        const ComplexMatrix eye_s = ComplexMatrix::identity(model.carrier_space_dim());
        for (const ComplexMatrix& k : model.damper.kraus)
            lifted_kraus_.push_back(qmath::kron(eye_s, k));
    }

    static_ops_ = !model.has_timed_ops();
    bool static_free = true;
    for (const auto& family : model.free_hamiltonians)
        if (family.size() > 1) static_free = false;
    for (const auto& family : model.stability_drift)
        if (family.size() > 1) static_free = false;
    static_ops_ = static_ops_ && static_free;
}

ComplexMatrix ColumnStepper::collision_unitary(std::size_t carrier, std::size_t step_index) const {
    const std::size_t joint_dim = joint_layout_.total_dim();
    const std::size_t env_slot = joint_layout_.factor_dims.size() - 1;
    ComplexMatrix h(joint_dim, joint_dim);
    for (std::size_t l = 0; l < model_.term_count(); ++l) {
        const ComplexMatrix a_full =
            qmath::embed(model_.carrier_op(l, carrier, step_index), carrier_layout_, carrier);
        h += qmath::kron(a_full, model_.env_op(carrier, l));
    }
    if (const ComplexMatrix* drift = model_.drift(carrier, step_index)) {
        // enforced models: H = sum_l A ⊗ B^(m,l) + h_m ⊗ I reproduces the
        // original collision Hamiltonian exactly
        h += qmath::kron(qmath::embed(*drift, carrier_layout_, carrier),
                         ComplexMatrix::identity(joint_layout_.factor_dims[env_slot]));
    }
    return qmath::expm_unitary(h, model_.discrete->g * model_.discrete->dt);
}

ComplexMatrix ColumnStepper::apply_damper(const ComplexMatrix& joint) const {
    if (damper_is_identity_) return joint;
    ComplexMatrix out(joint.rows(), joint.cols());
    for (const ComplexMatrix& k : lifted_kraus_) out += k * joint * k.adjoint();
    return out;
}

ComplexMatrix ColumnStepper::apply_column(const ComplexMatrix& rho, std::size_t step_index) const {
    if (rho.rows() != model_.carrier_space_dim() || !rho.square())
        throw CascadeError("DIM_MISMATCH", "apply_column: state does not match the carrier space");

    ComplexMatrix joint = qmath::kron(rho, model_.eta);
    const std::size_t M = model_.carrier_count();

    if (static_ops_ && static_unitaries_.empty()) {
        static_unitaries_.reserve(M);
        for (std::size_t m = 0; m < M; ++m) static_unitaries_.push_back(collision_unitary(m, 0));
    }

    ComplexMatrix scratch;
    for (std::size_t m = 0; m < M; ++m) {
        const ComplexMatrix* u = &scratch;
        if (static_ops_) {
            u = &static_unitaries_[m];
        } else {
            scratch = collision_unitary(m, step_index);
        }
        joint = (*u) * joint * u->adjoint();
        joint = apply_damper(joint);
    }

    ComplexMatrix next = qmath::partial_trace(joint, joint_layout_, keep_carriers_);
    next = qmath::hermitize(next);
    const qmath::cdouble tr = next.trace();
    if (std::abs(tr - qmath::cdouble(1.0, 0.0)) > 1e-12 && std::abs(tr) > 0.0)
        next *= 1.0 / tr;
    return next;
}

DiscreteState ColumnStepper::step(const DiscreteState& state) const {
    const double dt = model_.discrete->dt;
    ComplexMatrix rho = apply_column(state.rho, state.step);

    // free evolution over the full inter-collision interval, sampled
    // piecewise-constant at the left endpoint tau_n = n*dt
    bool any_free = false;
    for (std::size_t m = 0; m < model_.carrier_count(); ++m)
        if (model_.free_hamiltonian(m, state.step)) any_free = true;
    if (any_free) {
        if (static_ops_ && static_free_.empty()) {
            for (std::size_t m = 0; m < model_.carrier_count(); ++m) {
                const ComplexMatrix* h = model_.free_hamiltonian(m, 0);
                static_free_.push_back(h ? qmath::expm_unitary(*h, dt)
                                         : ComplexMatrix::identity(model_.carrier_dims[m]));
            }
        }
        ComplexMatrix v = ComplexMatrix::identity(1);
        for (std::size_t m = 0; m < model_.carrier_count(); ++m) {
            if (static_ops_) {
                v = qmath::kron(v, static_free_[m]);
            } else {
                const ComplexMatrix* h = model_.free_hamiltonian(m, state.step);
                v = qmath::kron(v, h ? qmath::expm_unitary(*h, dt)
                                     : ComplexMatrix::identity(model_.carrier_dims[m]));
            }
        }
        rho = v * rho * v.adjoint();
        rho = qmath::hermitize(rho);
    }

    return DiscreteState{std::move(rho), state.step + 1, (state.step + 1) * dt};
}

ComplexMatrix apply_column_step(const ComplexMatrix& rho, const CascadeModel& model,
                                std::size_t step_index) {
    return ColumnStepper(model).apply_column(rho, step_index);
}

Trajectory simulate_discrete(const CascadeModel& model, const ComplexMatrix& rho0,
                             const std::vector<Observable>& observables,
                             const SimulateOptions& options) {
    if (!model.discrete)
        throw CascadeError("NO_DISCRETE_BLOCK", "simulate_discrete requires discrete parameters");
    if (rho0.rows() != model.carrier_space_dim() || !rho0.square())
        throw CascadeError("DIM_MISMATCH", "simulate_discrete: rho0 does not match the carrier space");

    const ColumnStepper stepper(model);
    const std::size_t sample_every = std::max<std::size_t>(1, options.sample_every);

    Trajectory traj;
    traj.dt = model.discrete->dt;
    traj.method = "collision-column";
    traj.model_digest = digest_hex(model_digest(model));
    for (const Observable& obs : observables) traj.labels.push_back(obs.label);
    traj.expectations.resize(observables.size());

    auto record = [&](const DiscreteState& s) {
        traj.times.push_back(s.time);
        if (options.record_states) traj.states.push_back(s.rho);
        for (std::size_t k = 0; k < observables.size(); ++k) {
            const qmath::cdouble ev = (observables[k].matrix * s.rho).trace();
            traj.expectations[k].push_back(ev.real());
            if (std::abs(ev.imag()) > 1e-10 && traj.warnings.empty())
                traj.warnings.push_back("expectation of '" + observables[k].label +
                                        "' has imaginary part " + std::to_string(ev.imag()));
        }
    };

    DiscreteState state{rho0, 0, 0.0};
    record(state);
    for (std::size_t n = 0; n < model.discrete->n_steps; ++n) {
        state = stepper.step(state);
        if (state.step % sample_every == 0) record(state);
    }
    traj.final_state = state.rho;
    return traj;
}

CascadeModel frame_transform(const CascadeModel& model,
                             const std::vector<std::vector<ComplexMatrix>>& frames) {
    if (frames.size() != model.carrier_count())
        throw CascadeError("DIM_MISMATCH", "frame_transform: one frame family per carrier required");
    for (std::size_t m = 0; m < frames.size(); ++m)
        for (const ComplexMatrix& v : frames[m]) {
            if (v.rows() != model.carrier_dims[m] || !v.square())
                throw CascadeError("DIM_MISMATCH", "frame_transform: frame dimension mismatch");
            if (!v.is_unitary(1e-10))
                throw CascadeError("NON_UNITARY", "frame_transform: frame sample is not unitary");
        }

    CascadeModel out = model;
    out.free_hamiltonians.clear();
    for (CouplingTerm& term : out.coupling) {
        term.carrier_ops_timed.assign(model.carrier_count(), {});
        for (std::size_t m = 0; m < model.carrier_count(); ++m) {
            term.carrier_ops_timed[m].reserve(frames[m].size());
            for (const ComplexMatrix& v : frames[m])
                term.carrier_ops_timed[m].push_back(
                    qmath::hermitize(v.adjoint() * term.carrier_ops[m] * v));
        }
    }
    return out;
}

}  // namespace cascade::engine
