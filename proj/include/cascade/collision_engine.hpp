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

#pragma once

#include "cascade/model.hpp"
#include "cascade/trajectory.hpp"

namespace cascade::engine {

struct DiscreteState {
    qmath::ComplexMatrix rho;  // carrier marginal on S_1 ⊗ ... ⊗ S_M
    std::size_t step = 0;
    double time = 0.0;
};

struct SimulateOptions {
    std::size_t sample_every = 1;
    bool record_states = true;
};

// One column of the collisional model: attach a fresh sub-environment in
// state eta, collide it with every carrier in order (damper after each
// collision), trace it out. Exactly one environment slot is alive at a time;
// discarding it is exact for carrier marginals because a spent
// sub-environment never interacts again.
class ColumnStepper {
public:
    explicit ColumnStepper(const CascadeModel& model);

    DiscreteState step(const DiscreteState& state) const;

    // Column only, without the free evolution between collisions.
    qmath::ComplexMatrix apply_column(const qmath::ComplexMatrix& rho, std::size_t step_index) const;

private:
    qmath::ComplexMatrix collision_unitary(std::size_t carrier, std::size_t step_index) const;
    qmath::ComplexMatrix apply_damper(const qmath::ComplexMatrix& joint) const;

    const CascadeModel& model_;
    qmath::SpaceLayout joint_layout_;
    qmath::SpaceLayout carrier_layout_;
    std::vector<std::size_t> keep_carriers_;
    std::vector<qmath::ComplexMatrix> lifted_kraus_;       // I_S ⊗ K
    bool damper_is_identity_ = false;
    bool static_ops_ = false;
    mutable std::vector<qmath::ComplexMatrix> static_unitaries_;  // per carrier, built once
    mutable std::vector<qmath::ComplexMatrix> static_free_;       // per carrier free-evolution step
};

qmath::ComplexMatrix apply_column_step(const qmath::ComplexMatrix& rho, const CascadeModel& model,
                                       std::size_t step_index);

Trajectory simulate_discrete(const CascadeModel& model, const qmath::ComplexMatrix& rho0,
                             const std::vector<Observable>& observables,
                             const SimulateOptions& options = {});

// Interaction-picture transform: carrier operators become
// V†(tau_n) A V(tau_n) (a per-step family) and free Hamiltonians are
// dropped; the environment side is untouched. frames[m][n] must be unitary,
// one sample per collision step.
CascadeModel frame_transform(const CascadeModel& model,
                             const std::vector<std::vector<qmath::ComplexMatrix>>& frames);

}  // namespace cascade::engine
