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

#include <functional>

#include "cascade/model.hpp"
#include "cascade/trajectory.hpp"

namespace cascade::integrator {

using GeneratorFn =
    std::function<qmath::ComplexMatrix(const qmath::ComplexMatrix&, double)>;

// Classical fixed-step RK4. The output is hermitized; the trace is
// renormalized only when it drifts beyond 1e-12.
qmath::ComplexMatrix rk4_step(const GeneratorFn& generator, const qmath::ComplexMatrix& rho,
                              double t, double dt);

struct EvolveOptions {
    std::size_t sample_every = 1;
    bool record_states = true;
};

// Integrate the cascade master equation. Requires the stability condition
// (or an enforced model); enforced models with a drift that fails to commute
// with the coupling operators are rejected, since their continuous-limit
// frame is ill-defined.
Trajectory evolve_me(const GeneratorBundle& bundle, const CascadeModel& model,
                     const qmath::ComplexMatrix& rho0, double t_end, double dt,
                     const std::vector<Observable>& observables, const EvolveOptions& options = {});

}  // namespace cascade::integrator
