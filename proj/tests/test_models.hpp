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

// Small model builders shared between the unit suites and the acceptance
// runner.

#pragma once

#include <cmath>

#include "cascade/model.hpp"
#include "cascade/rng.hpp"

namespace cascade::testmodels {

inline DamperMap identity_damper(std::size_t dim) {
    return DamperMap{{qmath::ComplexMatrix::identity(dim)}};
}

inline DamperMap depolarizing_damper(double p) {
    DamperMap damper;
    damper.kraus.push_back(std::sqrt(1.0 - 0.75 * p) * qmath::ComplexMatrix::identity(2));
    damper.kraus.push_back(std::sqrt(0.25 * p) * qmath::pauli_x());
    damper.kraus.push_back(std::sqrt(0.25 * p) * qmath::pauli_y());
    damper.kraus.push_back(std::sqrt(0.25 * p) * qmath::pauli_z());
    return damper;
}

inline void set_dissipative(CascadeModel& model, double dt, std::size_t n_steps) {
    DiscreteParams d;
    d.dt = dt;
    d.n_steps = n_steps;
    d.regime = Regime::dissipative;
    d.g = std::sqrt(model.gamma / dt);
    model.discrete = d;
}

// Single carrier, single coupling term A ⊗ B.
inline CascadeModel single_term(const qmath::ComplexMatrix& a, const qmath::ComplexMatrix& b,
                                const qmath::ComplexMatrix& eta, const DamperMap& damper,
                                double gamma = 1.0) {
    CascadeModel model;
    model.carrier_dims = {a.rows()};
    model.env_dim = b.rows();
    model.eta = eta;
    model.coupling.push_back({{a}, {}, b});
    model.damper = damper;
    model.free_hamiltonians.resize(1);
    model.gamma = gamma;
    return model;
}

// zdrift with a second, non-commuting term: A = {sigma_x, sigma_z},
// B = {sigma_z, (sigma_z + sigma_x)/sqrt(2)}, eta = |0><0|. The enforcement
// drift h = sigma_x + sigma_z/sqrt(2) fails to commute with A^(1), which is
// what the q-term negative control needs.
inline CascadeModel two_term_noncommuting() {
    CascadeModel model;
    model.carrier_dims = {2};
    model.env_dim = 2;
    model.eta = qmath::basis_projector(2, 0);
    model.coupling.push_back({{qmath::pauli_x()}, {}, qmath::pauli_z()});
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    model.coupling.push_back(
        {{qmath::pauli_z()}, {}, inv_sqrt2 * (qmath::pauli_z() + qmath::pauli_x())});
    model.damper = identity_damper(2);
    model.free_hamiltonians.resize(1);
    model.gamma = 1.0;
    set_dissipative(model, 1e-3, 1000);
    return model;
}

// Two carriers, one real coupling term, real eta, identity damper: every
// cross coefficient is real, so both partial traces of the cross term vanish.
inline CascadeModel real_coefficient_cascade() {
    CascadeModel model;
    model.carrier_dims = {2, 2};
    model.env_dim = 2;
    model.eta = 0.5 * qmath::ComplexMatrix::identity(2);
    model.coupling.push_back({{qmath::pauli_x(), qmath::pauli_x()}, {}, qmath::pauli_x()});
    model.damper = identity_damper(2);
    model.free_hamiltonians.resize(2);
    model.gamma = 1.0;
    set_dissipative(model, 1e-3, 1000);
    return model;
}

// Commuting-frame enforced model with nonzero dissipation after rescaling:
// B = sigma_x + 0.7 I, A = sigma_x, eta = I/2; delta = 0.7, the drift
// 0.7 sigma_x commutes with A, and the rescaled B is sigma_x whose odd
// moments in eta all vanish (keeps the discrete error first order).
inline CascadeModel commuting_drift_model() {
    CascadeModel model;
    model.carrier_dims = {2};
    model.env_dim = 2;
    model.eta = 0.5 * qmath::ComplexMatrix::identity(2);
    model.coupling.push_back(
        {{qmath::pauli_x()}, {}, qmath::pauli_x() + 0.7 * qmath::ComplexMatrix::identity(2)});
    model.damper = identity_damper(2);
    model.free_hamiltonians.resize(1);
    model.gamma = 1.0;
    set_dissipative(model, 1e-3, 1000);
    return model;
}

// Random well-formed model: random Hermitian couplings, random env state,
// random CPTP damper. carrier dims 2, env dim 2 or 3, 1..3 terms, 1..2
// carriers.
inline CascadeModel random_model(verify::SplitMix64& rng) {
    CascadeModel model;
    const std::size_t carriers = 1 + rng.next() % 2;
    const std::size_t env_dim = 2 + rng.next() % 2;
    const std::size_t terms = 1 + rng.next() % 3;
    model.carrier_dims.assign(carriers, 2);
    model.env_dim = env_dim;
    model.eta = verify::random_density(env_dim, rng);
    for (std::size_t l = 0; l < terms; ++l) {
        CouplingTerm term;
        for (std::size_t m = 0; m < carriers; ++m)
            term.carrier_ops.push_back(verify::random_hermitian_unit(2, rng));
        term.env_op = verify::random_hermitian_unit(env_dim, rng);
        model.coupling.push_back(std::move(term));
    }
    model.damper.kraus = verify::random_cptp(env_dim, 2, rng);
    model.free_hamiltonians.resize(carriers);
    model.gamma = 0.5 + 1.5 * rng.uniform01();
    return model;
}

}  // namespace cascade::testmodels
