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

#include "cascade/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include "cascade/collision_engine.hpp"
#include "cascade/generator.hpp"
#include "cascade/integrator.hpp"

namespace cascade::verify {

using qmath::cdouble;
using qmath::ComplexMatrix;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t mix_params(std::uint64_t digest, std::initializer_list<double> params) {
    auto mix = [&digest](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            digest ^= (v >> (8 * i)) & 0xFF;
            digest *= 1099511628211ull;
        }
    };
    for (double p : params) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(p));
        std::memcpy(&bits, &p, sizeof(bits));
        mix(bits);
    }
    return digest;
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

}  // namespace

ComplexMatrix random_complex(std::size_t dim, SplitMix64& rng) {
    ComplexMatrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.complex_gaussian();
    return g;
}

ComplexMatrix random_hermitian_unit(std::size_t dim, SplitMix64& rng) {
    const ComplexMatrix g = random_complex(dim, rng);
    ComplexMatrix h = qmath::hermitize(g);
    const double norm = h.frobenius_norm();
    if (norm > 0.0) h *= 1.0 / norm;
    return h;
}

ComplexMatrix random_density(std::size_t dim, SplitMix64& rng) {
    const ComplexMatrix g = random_complex(dim, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return qmath::hermitize(rho);
}

ComplexMatrix random_unitary(std::size_t dim, SplitMix64& rng) {
    return qmath::expm_unitary(random_hermitian_unit(dim, rng), 1.0);
}

std::vector<ComplexMatrix> random_cptp(std::size_t dim, std::size_t n_kraus, SplitMix64& rng) {
    std::vector<ComplexMatrix> raw;
    ComplexMatrix s(dim, dim);
    for (std::size_t k = 0; k < n_kraus; ++k) {
        raw.push_back(random_complex(dim, rng));
        s += raw.back().adjoint() * raw.back();
    }
    // S^(-1/2) through the spectral decomposition; S is PD for generic draws
    const qmath::Eigensystem eig = qmath::eig_hermitian(qmath::hermitize(s));
    ComplexMatrix scaled(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const double inv_sqrt = 1.0 / std::sqrt(std::max(eig.values[k], 1e-300));
        for (std::size_t i = 0; i < dim; ++i) scaled(i, k) = eig.vectors(i, k) * inv_sqrt;
    }
    const ComplexMatrix s_inv_sqrt = scaled * eig.vectors.adjoint();
    for (ComplexMatrix& k : raw) k = k * s_inv_sqrt;
    return raw;
}

Measurement& VerificationReport::add(const std::string& name, double value, double lo, double hi,
                                     bool informational) {
    Measurement m;
    m.name = name;
    m.value = value;
    m.lo = lo;
    m.hi = hi;
    m.informational = informational;
    m.pass = value >= lo && value <= hi;
    measurements.push_back(std::move(m));
    return measurements.back();
}

void VerificationReport::finalize() {
    pass = true;
    for (const Measurement& m : measurements)
        if (!m.informational && !m.pass) pass = false;
}

const Measurement* VerificationReport::find(const std::string& name) const {
    for (const Measurement& m : measurements)
        if (m.name == name) return &m;
    return nullptr;
}

VerificationReport convergence_study(const CascadeModel& model, const ComplexMatrix& rho0,
                                     double t_end, std::vector<double> dt_list) {
    if (dt_list.empty())
        throw CascadeError("BAD_STEP", "convergence_study: dt list must be non-empty");
    for (const auto& family : model.free_hamiltonians)
        if (!family.empty())
            throw CascadeError("FRAME_UNSUPPORTED",
                               "convergence_study: transform free evolution away first");
    std::sort(dt_list.begin(), dt_list.end(), std::greater<double>());

    VerificationReport report;
    report.check = "convergence_study";
    report.inputs_digest =
        digest_hex(mix_params(model_digest(model), {t_end, static_cast<double>(dt_list.size())}));

    const GeneratorBundle bundle = generator::build_bundle(model);
    const double dt_ref = dt_list.back() / 10.0;
    const integrator::EvolveOptions thin{std::numeric_limits<std::size_t>::max() / 2, false};
    const ComplexMatrix reference =
        integrator::evolve_me(bundle, model, rho0, t_end, dt_ref, {}, thin).final_state;

    const engine::SimulateOptions sim_thin{std::numeric_limits<std::size_t>::max() / 2, false};
    std::vector<double> errors;
    for (double dt : dt_list) {
        CascadeModel run = model;
        DiscreteParams d;
        d.dt = dt;
        d.g = std::sqrt(model.gamma / dt);
        d.n_steps = static_cast<std::size_t>(std::llround(t_end / dt));
        d.regime = Regime::dissipative;
        run.discrete = d;

        ComplexMatrix final_state =
            engine::simulate_discrete(run, rho0, {}, sim_thin).final_state;
        if (run.enforced()) {
            // compare in the interaction frame: undo the accumulated drift
            // rotation V(t) = ⊗_m prod_n exp(-i g h_m^(n) dt)
            ComplexMatrix v = ComplexMatrix::identity(1);
            for (std::size_t m = 0; m < run.carrier_count(); ++m) {
                ComplexMatrix vm = ComplexMatrix::identity(run.carrier_dims[m]);
                if (m < run.stability_drift.size() && !run.stability_drift[m].empty()) {
                    if (run.stability_drift[m].size() == 1) {
                        vm = qmath::expm_unitary(run.stability_drift[m][0], d.g * t_end);
                    } else {
                        for (std::size_t n = 0; n < d.n_steps; ++n)
                            vm = qmath::expm_unitary(*run.drift(m, n), d.g * d.dt) * vm;
                    }
                }
                v = qmath::kron(v, vm);
            }
            final_state = qmath::hermitize(v.adjoint() * final_state * v);
        }
        errors.push_back(qmath::trace_distance(final_state, reference));
    }

    double max_error = 0.0;
    for (std::size_t i = 0; i < dt_list.size(); ++i) {
        report.add("error_dt_" + fmt(dt_list[i]), errors[i], 0.0, kInf, true);
        max_error = std::max(max_error, errors[i]);
    }

    if (max_error <= 1e-10) {
        report.notes.push_back("all errors at numerical noise; slope check skipped");
    } else if (dt_list.size() >= 2) {
        // least squares on (log dt, log error)
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(dt_list.size());
        for (std::size_t i = 0; i < dt_list.size(); ++i) {
            const double x = std::log(dt_list[i]);
            const double y = std::log(std::max(errors[i], 1e-300));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        report.add("slope", slope, 0.8, 1.2);
    }
    report.finalize();
    return report;
}

VerificationReport causality_check(const GeneratorBundle& bundle, const CascadeModel& model,
                                   std::size_t trials, std::uint64_t seed) {
    if (model.carrier_count() < 2)
        throw std::invalid_argument("causality_check: needs at least two carriers");

    VerificationReport report;
    report.check = "causality_check";
    report.seed = seed;
    report.inputs_digest =
        digest_hex(mix_params(model_digest(model), {static_cast<double>(trials)}));

    SplitMix64 rng(seed);
    const qmath::SpaceLayout layout = model.carrier_layout();
    const std::size_t M = model.carrier_count();

    double worst_forward = 0.0;
    double worst_backward = 0.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const ComplexMatrix x = random_hermitian_unit(model.carrier_space_dim(), rng);
        for (std::size_t m = 0; m < M; ++m)
            for (std::size_t mp = m + 1; mp < M; ++mp) {
                const ComplexMatrix y = generator::apply_cross_term(bundle, model, m, mp, x);
                std::vector<std::size_t> keep_fwd, keep_bwd;
                for (std::size_t k = 0; k < M; ++k) {
                    if (k != mp) keep_fwd.push_back(k);
                    if (k != m) keep_bwd.push_back(k);
                }
                worst_forward = std::max(
                    worst_forward, qmath::partial_trace(y, layout, keep_fwd).max_abs());
                worst_backward = std::max(
                    worst_backward, qmath::partial_trace(y, layout, keep_bwd).max_abs());
            }
    }

    report.add("forward_trace_residual", worst_forward, 0.0, 1e-12);
    report.add("backward_trace_residual", worst_backward, 0.0, kInf, true);
    if (worst_backward <= 1e-12)
        report.notes.push_back("earlier-carrier trace also vanishes (real-coefficient decoupling)");
    report.finalize();
    return report;
}

VerificationReport q_term_check(const CascadeModel& model, std::size_t trials, std::uint64_t seed,
                                bool negative_control) {
    if (!model.enforced())
        throw CascadeError("NOT_ENFORCED", "q_term_check: run enforce_stability first");

    VerificationReport report;
    report.check = negative_control ? "q_term_check_negative_control" : "q_term_check";
    report.seed = seed;
    report.inputs_digest =
        digest_hex(mix_params(model_digest(model), {static_cast<double>(trials),
                                                    negative_control ? 1.0 : 0.0}));

    SplitMix64 rng(seed);
    const double g = model.discrete ? model.discrete->g : 1.0;
    const cdouble ig(0.0, g);

    double worst_total = 0.0;
    double worst_per_term = 0.0;
    for (std::size_t m = 0; m < model.carrier_count(); ++m) {
        const ComplexMatrix* drift = model.drift(m, 0);
        if (!drift) continue;
        const std::size_t dm = model.carrier_dims[m];
        const qmath::SpaceLayout pair_layout{{dm, model.env_dim}, {"S", "E"}};
        const ComplexMatrix state = model.damper.apply_power(model.eta, m);
        const ComplexMatrix h_lift =
            qmath::kron(*drift, ComplexMatrix::identity(model.env_dim));

        std::vector<ComplexMatrix> q_terms;
        ComplexMatrix q_total(dm * model.env_dim, dm * model.env_dim);
        for (std::size_t l = 0; l < model.term_count(); ++l) {
            const ComplexMatrix& env =
                negative_control ? model.coupling[l].env_op : model.rescaled_env_ops[m][l];
            const ComplexMatrix piece =
                qmath::kron(model.carrier_op(l, m, 0), env);
            q_terms.push_back(ig * qmath::commutator(h_lift, piece));
            q_total += q_terms.back();
        }

        for (std::size_t trial = 0; trial < trials; ++trial) {
            const ComplexMatrix x = random_hermitian_unit(dm, rng);
            const ComplexMatrix joint = qmath::kron(x, state);
            worst_total = std::max(
                worst_total,
                qmath::partial_trace(qmath::commutator(q_total, joint), pair_layout, {0}).max_abs());
            for (const ComplexMatrix& q : q_terms)
                worst_per_term = std::max(
                    worst_per_term,
                    qmath::partial_trace(qmath::commutator(q, joint), pair_layout, {0}).max_abs());
        }
    }

    report.add("q_total_residual", worst_total, 0.0, 1e-12);
    report.add("q_per_term_residual", worst_per_term, 0.0, 1e-12);
    report.finalize();
    return report;
}

VerificationReport expansion_residual_check(const CascadeModel& model, double dt) {
    VerificationReport report;
    report.check = "expansion_residual_check";
    report.inputs_digest = digest_hex(mix_params(model_digest(model), {dt}));

    const double g = model.discrete ? model.discrete->g : 1.0;
    const std::size_t d0 = model.carrier_dims.front();
    ComplexMatrix h(d0 * model.env_dim, d0 * model.env_dim);
    for (std::size_t l = 0; l < model.term_count(); ++l)
        h += qmath::kron(model.carrier_op(l, 0, 0), model.env_op(0, l));
    if (const ComplexMatrix* drift = model.drift(0, 0))
        h += qmath::kron(*drift, ComplexMatrix::identity(model.env_dim));

    const ComplexMatrix h2 = h * h;
    auto residual = [&](double step) {
        const double theta = g * step;
        const ComplexMatrix u = qmath::expm_unitary(h, theta);
        ComplexMatrix taylor = ComplexMatrix::identity(h.rows());
        taylor += cdouble(0.0, -theta) * h;
        taylor += cdouble(-0.5 * theta * theta, 0.0) * h2;
        return (u - taylor).frobenius_norm();
    };

    const double r_coarse = residual(dt);
    const double r_fine = residual(dt / 2.0);
    report.add("residual_dt", r_coarse, 0.0, kInf, true);
    report.add("residual_half_dt", r_fine, 0.0, kInf, true);
    if (r_coarse <= 1e-14 && r_fine <= 1e-14) {
        report.notes.push_back("residuals vanish (H = 0); ratio check skipped");
    } else {
        report.add("ratio", r_coarse / r_fine, 5.6, 10.4);
    }
    report.finalize();
    return report;
}

VerificationReport invariant_monitor(const Trajectory& trajectory) {
    VerificationReport report;
    report.check = "invariant_monitor";

    if (trajectory.states.empty()) {
        report.notes.push_back("no snapshots recorded; nothing to check");
        report.pass = false;
        return report;
    }

    double worst_trace = 0.0, worst_herm = 0.0, worst_eig = 0.0;
    for (const ComplexMatrix& rho : trajectory.states) {
        worst_trace = std::max(worst_trace, std::abs(rho.trace() - cdouble(1.0, 0.0)));
        worst_herm = std::max(worst_herm, qmath::max_abs_diff(rho, rho.adjoint()));
        worst_eig = std::max(worst_eig,
                             std::max(0.0, -qmath::min_eigenvalue(qmath::hermitize(rho))));
    }
    report.add("trace_deviation", worst_trace, 0.0, 1e-9);
    report.add("hermiticity_residual", worst_herm, 0.0, 1e-9);
    report.add("negative_eigenvalue", worst_eig, 0.0, 1e-7);
    report.notes.push_back(std::to_string(trajectory.states.size()) + " snapshots checked");
    report.finalize();
    return report;
}

}  // namespace cascade::verify
