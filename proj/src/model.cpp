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

#include "cascade/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

namespace cascade {

using qmath::ComplexMatrix;

ComplexMatrix DamperMap::apply(const ComplexMatrix& x) const {
    if (kraus.empty()) return x;
    ComplexMatrix out(x.rows(), x.cols());
    for (const ComplexMatrix& k : kraus) out += k * x * k.adjoint();
    return out;
}

ComplexMatrix DamperMap::apply_power(ComplexMatrix x, std::size_t n) const {
    if (is_identity()) return x;
    for (std::size_t i = 0; i < n; ++i) x = apply(x);
    return x;
}

bool DamperMap::is_identity() const {
    if (kraus.empty()) return true;
    if (kraus.size() != 1) return false;
    const ComplexMatrix& k = kraus.front();
    return qmath::max_abs_diff(k, ComplexMatrix::identity(k.rows())) == 0.0;
}

std::size_t CascadeModel::carrier_space_dim() const {
    std::size_t d = 1;
    for (std::size_t c : carrier_dims) d *= c;
    return d;
}

bool CascadeModel::has_timed_ops() const {
    for (const CouplingTerm& term : coupling)
        for (const auto& samples : term.carrier_ops_timed)
            if (!samples.empty()) return true;
    return false;
}

const ComplexMatrix& CascadeModel::env_op(std::size_t carrier, std::size_t term) const {
    if (carrier >= carrier_count() || term >= term_count())
        throw std::out_of_range("env_op: index out of range");
    if (enforced()) return rescaled_env_ops[carrier][term];
    return coupling[term].env_op;
}

const ComplexMatrix& CascadeModel::carrier_op(std::size_t term, std::size_t carrier,
                                              std::size_t step) const {
    if (carrier >= carrier_count() || term >= term_count())
        throw std::out_of_range("carrier_op: index out of range");
    const CouplingTerm& t = coupling[term];
    if (carrier < t.carrier_ops_timed.size() && !t.carrier_ops_timed[carrier].empty()) {
        const auto& samples = t.carrier_ops_timed[carrier];
        return samples[std::min(step, samples.size() - 1)];
    }
    return t.carrier_ops[carrier];
}

namespace {

const ComplexMatrix* sample_family(const std::vector<std::vector<ComplexMatrix>>& family,
                                   std::size_t carrier, std::size_t step) {
    if (carrier >= family.size() || family[carrier].empty()) return nullptr;
    const auto& samples = family[carrier];
    return &samples[std::min(step, samples.size() - 1)];
}

}  // namespace

const ComplexMatrix* CascadeModel::free_hamiltonian(std::size_t carrier, std::size_t step) const {
    return sample_family(free_hamiltonians, carrier, step);
}

const ComplexMatrix* CascadeModel::drift(std::size_t carrier, std::size_t step) const {
    return sample_family(stability_drift, carrier, step);
}

qmath::SpaceLayout CascadeModel::carrier_layout() const {
    qmath::SpaceLayout layout;
    layout.factor_dims = carrier_dims;
    for (std::size_t m = 0; m < carrier_dims.size(); ++m)
        layout.labels.push_back("S" + std::to_string(m + 1));
    return layout;
}

qmath::SpaceLayout CascadeModel::joint_layout() const {
    qmath::SpaceLayout layout = carrier_layout();
    layout.factor_dims.push_back(env_dim);
    layout.labels.push_back("E");
    return layout;
}

const GeneratorBundle::CrossEntry& GeneratorBundle::cross(std::size_t m, std::size_t m_prime) const {
    for (const CrossEntry& e : gamma_cross)
        if (e.m == m && e.m_prime == m_prime) return e;
    throw std::out_of_range("GeneratorBundle: no cross entry for the requested pair");
}

namespace {

constexpr double kHermitianTol = 1e-10;

void check_hermitian(std::vector<Violation>& out, const ComplexMatrix& m, const std::string& where) {
    if (m.empty() || !m.square()) {
        out.push_back({"DIM_MISMATCH", where + ": matrix is not square", 0.0});
        return;
    }
    const double residual = qmath::max_abs_diff(m, m.adjoint());
    if (residual > kHermitianTol) out.push_back({"NON_HERMITIAN", where, residual});
}

void check_dim(std::vector<Violation>& out, const ComplexMatrix& m, std::size_t dim,
               const std::string& where) {
    if (m.rows() != dim || m.cols() != dim)
        out.push_back({"DIM_MISMATCH",
                       where + ": expected " + std::to_string(dim) + "x" + std::to_string(dim) +
                           ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()),
                       0.0});
}

}  // namespace

std::vector<Violation> validate_model(const CascadeModel& model) {
    std::vector<Violation> out;

    if (model.carrier_dims.empty())
        out.push_back({"NO_CARRIERS", "carriers: at least one carrier required", 0.0});
    for (std::size_t d : model.carrier_dims)
        if (d < 1) out.push_back({"DIM_MISMATCH", "carriers: dimension must be >= 1", 0.0});
    if (model.env_dim < 1)
        out.push_back({"DIM_MISMATCH", "environment: dimension must be >= 1", 0.0});
    if (model.gamma < 0.0)
        out.push_back({"GAMMA_NEGATIVE", "gamma", -model.gamma});

    // eta: Hermitian, PSD, unit trace
    check_dim(out, model.eta, model.env_dim, "environment.eta");
    check_hermitian(out, model.eta, "environment.eta");
    if (model.eta.square() && model.eta.rows() == model.env_dim &&
        model.eta.is_hermitian(kHermitianTol)) {
        const double min_eig = qmath::min_eigenvalue(qmath::hermitize(model.eta));
        if (min_eig < -1e-10) out.push_back({"ETA_NOT_PSD", "environment.eta", -min_eig});
        const double trace_err = std::abs(model.eta.trace() - qmath::cdouble(1.0, 0.0));
        if (trace_err > 1e-10) out.push_back({"ETA_TRACE", "environment.eta", trace_err});
    }

    // damper: completeness sum K^dag K = I
    if (model.damper.kraus.empty()) {
        out.push_back({"KRAUS_EMPTY", "environment.damper_kraus", 0.0});
    } else {
        ComplexMatrix sum(model.env_dim, model.env_dim);
        bool dims_ok = true;
        for (std::size_t i = 0; i < model.damper.kraus.size(); ++i) {
            const ComplexMatrix& k = model.damper.kraus[i];
            const std::string where = "environment.damper_kraus[" + std::to_string(i) + "]";
            if (k.rows() != model.env_dim || k.cols() != model.env_dim) {
                check_dim(out, k, model.env_dim, where);
                dims_ok = false;
                continue;
            }
            sum += k.adjoint() * k;
        }
        if (dims_ok) {
            const double residual = qmath::max_abs_diff(sum, ComplexMatrix::identity(model.env_dim));
            if (residual > kHermitianTol)
                out.push_back({"KRAUS_INCOMPLETE", "environment.damper_kraus", residual});
        }
    }

    // coupling terms
    for (std::size_t l = 0; l < model.coupling.size(); ++l) {
        const CouplingTerm& term = model.coupling[l];
        const std::string base = "coupling[" + std::to_string(l) + "]";
        check_dim(out, term.env_op, model.env_dim, base + ".env_op");
        check_hermitian(out, term.env_op, base + ".env_op");
        if (term.carrier_ops.size() != model.carrier_count()) {
            out.push_back({"DIM_MISMATCH", base + ".carrier_ops: one operator per carrier required", 0.0});
            continue;
        }
        for (std::size_t m = 0; m < term.carrier_ops.size(); ++m) {
            const std::string where = base + ".carrier_ops[" + std::to_string(m) + "]";
            check_dim(out, term.carrier_ops[m], model.carrier_dims[m], where);
            check_hermitian(out, term.carrier_ops[m], where);
        }
        for (std::size_t m = 0; m < term.carrier_ops_timed.size(); ++m)
            for (std::size_t n = 0; n < term.carrier_ops_timed[m].size(); ++n) {
                const std::string where =
                    base + ".carrier_ops_timed[" + std::to_string(m) + "][" + std::to_string(n) + "]";
                check_dim(out, term.carrier_ops_timed[m][n], model.carrier_dims[m], where);
                check_hermitian(out, term.carrier_ops_timed[m][n], where);
            }
    }

    // free Hamiltonians
    for (std::size_t m = 0; m < model.free_hamiltonians.size(); ++m)
        for (std::size_t n = 0; n < model.free_hamiltonians[m].size(); ++n) {
            const std::string where =
                "carriers[" + std::to_string(m) + "].free_hamiltonian[" + std::to_string(n) + "]";
            check_dim(out, model.free_hamiltonians[m][n], model.carrier_dims[m], where);
            check_hermitian(out, model.free_hamiltonians[m][n], where);
        }

    // enforcement block consistency
    if (model.enforced()) {
        if (model.rescaled_env_ops.size() != model.carrier_count() ||
            model.stability_drift.size() != model.carrier_count())
            out.push_back({"DIM_MISMATCH", "enforced: one entry per carrier required", 0.0});
        for (std::size_t m = 0; m < model.rescaled_env_ops.size(); ++m) {
            if (model.rescaled_env_ops[m].size() != model.term_count()) {
                out.push_back({"DIM_MISMATCH",
                               "enforced.env_ops[" + std::to_string(m) + "]: one operator per term", 0.0});
                continue;
            }
            for (std::size_t l = 0; l < model.rescaled_env_ops[m].size(); ++l) {
                const std::string where =
                    "enforced.env_ops[" + std::to_string(m) + "][" + std::to_string(l) + "]";
                check_dim(out, model.rescaled_env_ops[m][l], model.env_dim, where);
                check_hermitian(out, model.rescaled_env_ops[m][l], where);
            }
        }
        for (std::size_t m = 0; m < model.stability_drift.size(); ++m)
            for (std::size_t n = 0; n < model.stability_drift[m].size(); ++n) {
                const std::string where =
                    "enforced.drift[" + std::to_string(m) + "][" + std::to_string(n) + "]";
                check_dim(out, model.stability_drift[m][n],
                          m < model.carrier_dims.size() ? model.carrier_dims[m] : 0, where);
                check_hermitian(out, model.stability_drift[m][n], where);
            }
    }

    // discrete block
    if (model.discrete) {
        const DiscreteParams& d = *model.discrete;
        if (d.dt <= 0.0) out.push_back({"BAD_DISCRETE", "discrete.dt must be > 0", 0.0});
        if (d.g < 0.0) out.push_back({"BAD_DISCRETE", "discrete.g must be >= 0", 0.0});
        if (d.regime == Regime::dissipative && d.dt > 0.0) {
            const double expected = std::sqrt(model.gamma / d.dt);
            const double residual = std::abs(d.g - expected);
            if (residual > 1e-9)
                out.push_back({"REGIME_G_MISMATCH", "discrete.g vs sqrt(gamma/dt)", residual});
        }
    }

    return out;
}

std::uint64_t model_digest(const CascadeModel& model) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a offset basis
    auto mix_byte = [&h](unsigned char b) {
        h ^= b;
        h *= 1099511628211ull;
    };
    auto mix_u64 = [&](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) mix_byte(static_cast<unsigned char>(v >> (8 * i)));
    };
    auto mix_double = [&](double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        mix_u64(bits);
    };
    auto mix_matrix = [&](const ComplexMatrix& m) {
        mix_u64(m.rows());
        mix_u64(m.cols());
        for (const qmath::cdouble& v : m.data()) {
            mix_double(v.real());
            mix_double(v.imag());
        }
    };

    for (std::size_t d : model.carrier_dims) mix_u64(d);
    mix_u64(model.env_dim);
    mix_matrix(model.eta);
    mix_double(model.gamma);
    for (const CouplingTerm& term : model.coupling) {
        mix_matrix(term.env_op);
        for (const ComplexMatrix& a : term.carrier_ops) mix_matrix(a);
        for (const auto& samples : term.carrier_ops_timed)
            for (const ComplexMatrix& a : samples) mix_matrix(a);
    }
    for (const ComplexMatrix& k : model.damper.kraus) mix_matrix(k);
    for (const auto& family : model.free_hamiltonians)
        for (const ComplexMatrix& hm : family) mix_matrix(hm);
    for (const auto& ops : model.rescaled_env_ops)
        for (const ComplexMatrix& b : ops) mix_matrix(b);
    for (const auto& family : model.stability_drift)
        for (const ComplexMatrix& hm : family) mix_matrix(hm);
    if (model.discrete) {
        mix_double(model.discrete->dt);
        mix_double(model.discrete->g);
        mix_u64(model.discrete->n_steps);
        mix_u64(model.discrete->regime == Regime::dissipative ? 0 : 1);
    }
    return h;
}

std::string digest_hex(std::uint64_t digest) {
    std::ostringstream out;
    out << std::hex;
    for (int i = 15; i >= 0; --i) out << ((digest >> (4 * i)) & 0xF);
    return out.str();
}

}  // namespace cascade
