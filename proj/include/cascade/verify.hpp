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

#include <cstdint>
#include <string>
#include <vector>

#include "cascade/model.hpp"
#include "cascade/rng.hpp"
#include "cascade/trajectory.hpp"

namespace cascade::verify {

struct Measurement {
    std::string name;
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool pass = false;
    bool informational = false;  // recorded but not part of the verdict
};

struct VerificationReport {
    std::string check;
    bool pass = false;
    std::uint64_t seed = 0;
    std::string inputs_digest;
    std::vector<Measurement> measurements;
    std::vector<std::string> notes;

    Measurement& add(const std::string& name, double value, double lo, double hi,
                     bool informational = false);
    void finalize();  // pass = every non-informational measurement in band
    const Measurement* find(const std::string& name) const;
};

// Discrete-to-continuous convergence: for each dt set g = sqrt(gamma/dt),
// run the collision engine to t_end and compare against an RK4 reference at
// min(dt)/10 by trace distance. Fits the log-log slope (first order expected;
// skipped when every error is at numerical noise).
VerificationReport convergence_study(const CascadeModel& model, const qmath::ComplexMatrix& rho0,
                                     double t_end, std::vector<double> dt_list);

// Unidirectionality probe: partial trace of the cross term over the later
// carrier must vanish on random Hermitian inputs. Also reports whether the
// trace over the earlier carrier vanishes (the all-real-coefficients
// decoupled case).
VerificationReport causality_check(const GeneratorBundle& bundle, const CascadeModel& model,
                                   std::size_t trials, std::uint64_t seed);

// Time-ordering term of the stability-enforced expansion:
// Q = i g [h_m, ΔH_m] traced against x ⊗ M^(m-1)(eta) must vanish, both the
// full sum and term-by-term. negative_control swaps the rescaled env ops
// back to the originals to demonstrate sensitivity.
VerificationReport q_term_check(const CascadeModel& model, std::size_t trials, std::uint64_t seed,
                                bool negative_control = false);

// Third-order scaling of the collision-unitary Taylor remainder
// ||U - (I - i g dt H - (g dt)^2 H^2 / 2)||_F between dt and dt/2.
VerificationReport expansion_residual_check(const CascadeModel& model, double dt);

// Per-snapshot state health: unit trace, Hermiticity, positivity.
VerificationReport invariant_monitor(const Trajectory& trajectory);

}  // namespace cascade::verify
