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

#include "cascade/presets.hpp"

#include <cmath>

namespace cascade::presets {

using qmath::cdouble;
using qmath::ComplexMatrix;

namespace {

DamperMap identity_damper(std::size_t dim) {
    return DamperMap{{ComplexMatrix::identity(dim)}};
}

DamperMap depolarizing_damper(double p) {
    if (p < 0.0 || p > 1.0)
        throw CascadeError("BAD_PRESET_PARAM", "depolarizing damper needs p in [0, 1]");
    if (p == 0.0) return identity_damper(2);
    DamperMap damper;
    damper.kraus.push_back(std::sqrt(1.0 - 0.75 * p) * ComplexMatrix::identity(2));
    damper.kraus.push_back(std::sqrt(0.25 * p) * qmath::pauli_x());
    damper.kraus.push_back(std::sqrt(0.25 * p) * qmath::pauli_y());
    damper.kraus.push_back(std::sqrt(0.25 * p) * qmath::pauli_z());
    return damper;
}

DiscreteParams default_discrete(double gamma) {
    DiscreteParams d;
    d.dt = 1e-3;
    d.n_steps = 1000;
    d.regime = Regime::dissipative;
    d.g = std::sqrt(gamma / d.dt);
    return d;
}

io::ModelDocument ad_qubit() {
    io::ModelDocument doc;
    CascadeModel& model = doc.model;
    model.carrier_dims = {2};
    model.env_dim = 2;
    model.eta = qmath::basis_projector(2, 1);  // |g><g|
    model.coupling.push_back({{qmath::pauli_x()}, {}, 0.5 * qmath::pauli_x()});
    model.coupling.push_back({{qmath::pauli_y()}, {}, 0.5 * qmath::pauli_y()});
    model.damper = identity_damper(2);
    model.free_hamiltonians.resize(1);
    model.gamma = 1.0;
    model.discrete = default_discrete(model.gamma);
    doc.initial_state = qmath::basis_projector(2, 0);  // |e><e|
    doc.observables.push_back({"pop_e", qmath::basis_projector(2, 0)});
    return doc;
}

io::ModelDocument ad_cascade_2(double damper_p) {
    io::ModelDocument doc;
    CascadeModel& model = doc.model;
    model.carrier_dims = {2, 2};
    model.env_dim = 2;
    model.eta = qmath::basis_projector(2, 1);
    model.coupling.push_back(
        {{qmath::pauli_x(), qmath::pauli_x()}, {}, 0.5 * qmath::pauli_x()});
    model.coupling.push_back(
        {{qmath::pauli_y(), qmath::pauli_y()}, {}, 0.5 * qmath::pauli_y()});
    model.damper = depolarizing_damper(damper_p);
    model.free_hamiltonians.resize(2);
    model.gamma = 1.0;
    model.discrete = default_discrete(model.gamma);
    doc.initial_state =
        qmath::kron(qmath::basis_projector(2, 0), qmath::basis_projector(2, 1));
    const ComplexMatrix eye = ComplexMatrix::identity(2);
    doc.observables.push_back({"pop_e_1", qmath::kron(qmath::basis_projector(2, 0), eye)});
    doc.observables.push_back({"pop_e_2", qmath::kron(eye, qmath::basis_projector(2, 0))});
    return doc;
}

io::ModelDocument zdrift_qubit() {
    io::ModelDocument doc;
    CascadeModel& model = doc.model;
    model.carrier_dims = {2};
    model.env_dim = 2;
    model.eta = qmath::basis_projector(2, 0);  // |0><0|
    model.coupling.push_back({{qmath::pauli_x()}, {}, qmath::pauli_z()});
    model.damper = identity_damper(2);
    model.free_hamiltonians.resize(1);
    model.gamma = 1.0;
    model.discrete = default_discrete(model.gamma);
    doc.initial_state = qmath::basis_projector(2, 0);
    doc.observables.push_back({"pop_0", qmath::basis_projector(2, 0)});
    doc.observables.push_back({"sx", qmath::pauli_x()});
    return doc;
}

io::ModelDocument jc_cascade() {
    constexpr std::size_t fock = 4;
    io::ModelDocument doc;
    CascadeModel& model = doc.model;
    model.carrier_dims = {fock, fock};
    model.env_dim = 2;
    model.eta = qmath::basis_projector(2, 1);  // atoms injected in |g>

    // a ⊗ sigma_+ + a† ⊗ sigma_- written as Hermitian pairs:
    // (a + a†) ⊗ sigma_x/2 + i(a - a†) ⊗ sigma_y/2
    const ComplexMatrix a = qmath::annihilation_op(fock);
    const ComplexMatrix x_quad = a + a.adjoint();
    const ComplexMatrix p_quad = cdouble(0.0, 1.0) * (a - a.adjoint());
    model.coupling.push_back({{x_quad, x_quad}, {}, 0.5 * qmath::pauli_x()});
    model.coupling.push_back({{p_quad, p_quad}, {}, 0.5 * qmath::pauli_y()});
    model.damper = identity_damper(2);
    model.free_hamiltonians.resize(2);
    model.gamma = 1.0;
    model.discrete = default_discrete(model.gamma);

    doc.initial_state =
        qmath::kron(qmath::basis_projector(fock, 1), qmath::basis_projector(fock, 0));
    const ComplexMatrix number = a.adjoint() * a;
    const ComplexMatrix eye = ComplexMatrix::identity(fock);
    doc.observables.push_back({"n_1", qmath::kron(number, eye)});
    doc.observables.push_back({"n_2", qmath::kron(eye, number)});
    return doc;
}

}  // namespace

std::vector<std::string> names() {
    return {"ad-qubit", "ad-cascade-2", "zdrift-qubit", "jc-cascade"};
}

io::ModelDocument make(const std::string& name, double damper_p) {
    if (name == "ad-qubit") return ad_qubit();
    if (name == "ad-cascade-2") return ad_cascade_2(damper_p);
    if (name == "zdrift-qubit") return zdrift_qubit();
    if (name == "jc-cascade") return jc_cascade();
    throw CascadeError("UNKNOWN_PRESET", "unknown preset '" + name + "'");
}

}  // namespace cascade::presets
