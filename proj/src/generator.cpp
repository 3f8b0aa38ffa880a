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

#include "cascade/generator.hpp"

#include <cmath>
#include <string>

namespace cascade::generator {

using qmath::cdouble;
using qmath::ComplexMatrix;

namespace {

void require_carrier(const CascadeModel& model, std::size_t carrier) {
    if (carrier >= model.carrier_count())
        throw std::out_of_range("carrier index out of range");
}

std::size_t step_for_time(const CascadeModel& model, double t) {
    if (!model.discrete || model.discrete->dt <= 0.0) return 0;
    if (t <= 0.0) return 0;
    return static_cast<std::size_t>(std::floor(t / model.discrete->dt + 1e-9));
}

// Embedded coupling operators of one carrier at a given step, on the full
// carrier space; served from the bundle cache for static models.
std::vector<ComplexMatrix> ops_at(const GeneratorBundle& bundle, const CascadeModel& model,
                                  std::size_t carrier, double t) {
    if (!bundle.timed) return bundle.embedded_ops[carrier];
    const std::size_t step = step_for_time(model, t);
    const qmath::SpaceLayout layout = model.carrier_layout();
    std::vector<ComplexMatrix> out;
    out.reserve(model.term_count());
    for (std::size_t l = 0; l < model.term_count(); ++l)
        out.push_back(qmath::embed(model.carrier_op(l, carrier, step), layout, carrier));
    return out;
}

ComplexMatrix k_op_at(const GeneratorBundle& bundle, const CascadeModel& model,
                      std::size_t carrier, double t) {
    if (!bundle.timed) return bundle.k_ops[carrier];
    const std::size_t step = step_for_time(model, t);
    const ComplexMatrix& gm = bundle.gamma_local[carrier];
    ComplexMatrix k(model.carrier_dims[carrier], model.carrier_dims[carrier]);
    for (std::size_t l = 0; l < model.term_count(); ++l)
        for (std::size_t lp = 0; lp < model.term_count(); ++lp)
            k += gm(l, lp) * (model.carrier_op(l, carrier, step) * model.carrier_op(lp, carrier, step));
    return qmath::embed(k, model.carrier_layout(), carrier);
}

}  // namespace

double compute_delta(const CascadeModel& model, std::size_t carrier, std::size_t term) {
    require_carrier(model, carrier);
    if (term >= model.term_count()) throw std::out_of_range("term index out of range");
    const ComplexMatrix state = model.damper.apply_power(model.eta, carrier);
    return (model.env_op(carrier, term) * state).trace().real();
}

StabilityReport check_stability(const CascadeModel& model) {
    StabilityReport report;
    report.satisfied = true;
    for (std::size_t m = 0; m < model.carrier_count(); ++m)
        for (std::size_t l = 0; l < model.term_count(); ++l) {
            const double value = std::abs(compute_delta(model, m, l));
            if (value > report.worst_abs_delta) {
                report.worst_abs_delta = value;
                report.worst_carrier = m;
                report.worst_term = l;
            }
        }
    report.satisfied = report.worst_abs_delta <= 1e-10;
    return report;
}

CascadeModel enforce_stability(const CascadeModel& model) {
    CascadeModel out = model;
    const std::size_t M = model.carrier_count();
    const std::size_t L = model.term_count();

    std::vector<std::vector<ComplexMatrix>> env_ops(M);
    std::vector<std::vector<ComplexMatrix>> drift(M);
    const ComplexMatrix eye_env = ComplexMatrix::identity(model.env_dim);

    for (std::size_t m = 0; m < M; ++m) {
        std::vector<double> deltas(L);
        env_ops[m].reserve(L);
        for (std::size_t l = 0; l < L; ++l) {
            deltas[l] = compute_delta(model, m, l);
            env_ops[m].push_back(model.env_op(m, l) - deltas[l] * eye_env);
        }

        // one drift sample per distinct carrier-op sample; new drift adds to
        // any drift an earlier enforcement pass produced
        std::size_t samples = 1;
        for (std::size_t l = 0; l < L; ++l)
            if (m < model.coupling[l].carrier_ops_timed.size())
                samples = std::max(samples, model.coupling[l].carrier_ops_timed[m].size());
        if (m < model.stability_drift.size())
            samples = std::max(samples, model.stability_drift[m].size());

        drift[m].reserve(samples);
        for (std::size_t n = 0; n < samples; ++n) {
            ComplexMatrix h(model.carrier_dims[m], model.carrier_dims[m]);
            for (std::size_t l = 0; l < L; ++l) h += deltas[l] * model.carrier_op(l, m, n);
            if (const ComplexMatrix* prev = model.drift(m, n)) h += *prev;
            drift[m].push_back(std::move(h));
        }
    }

    out.rescaled_env_ops = std::move(env_ops);
    out.stability_drift = std::move(drift);
    return out;
}

ComplexMatrix compute_gamma_local(const CascadeModel& model, std::size_t carrier) {
    require_carrier(model, carrier);
    const std::size_t L = model.term_count();
    const ComplexMatrix state = model.damper.apply_power(model.eta, carrier);
    ComplexMatrix gm(L, L);
    for (std::size_t l = 0; l < L; ++l) {
        const ComplexMatrix left = model.env_op(carrier, l);
        for (std::size_t lp = 0; lp < L; ++lp)
            gm(l, lp) = model.gamma * (left * model.env_op(carrier, lp) * state).trace();
    }
    return gm;
}

ComplexMatrix compute_gamma_cross(const CascadeModel& model, std::size_t carrier,
                                  std::size_t carrier_prime) {
    require_carrier(model, carrier_prime);
    if (carrier_prime <= carrier)
        throw std::out_of_range("compute_gamma_cross: requires carrier < carrier_prime");
    const std::size_t L = model.term_count();
    const ComplexMatrix state = model.damper.apply_power(model.eta, carrier);
    ComplexMatrix gc(L, L);
    for (std::size_t l = 0; l < L; ++l) {
        // the damper acts on the (generally non-Hermitian) operator B^(l) * state
        // through the same Kraus sum
        const ComplexMatrix chained =
            model.damper.apply_power(model.env_op(carrier, l) * state, carrier_prime - carrier);
        for (std::size_t lp = 0; lp < L; ++lp)
            gc(l, lp) = model.gamma * (model.env_op(carrier_prime, lp) * chained).trace();
    }
    return gc;
}

ComplexMatrix build_effective_hamiltonian(const CascadeModel& model, std::size_t carrier) {
    require_carrier(model, carrier);
    ComplexMatrix h(model.carrier_dims[carrier], model.carrier_dims[carrier]);
    for (std::size_t l = 0; l < model.term_count(); ++l)
        h += compute_delta(model, carrier, l) * model.carrier_op(l, carrier, 0);
    return h;
}

GeneratorBundle::RateSet diagonalize_rates(const ComplexMatrix& gamma_m,
                                           const std::vector<ComplexMatrix>& carrier_ops) {
    const qmath::Eigensystem eig = qmath::eig_hermitian(qmath::hermitize(gamma_m));
    GeneratorBundle::RateSet out;
    const std::size_t L = carrier_ops.size();
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        double rate = eig.values[k];
        if (rate < -1e-10)
            throw CascadeError("GAMMA_NOT_PSD",
                               "correlation matrix has eigenvalue " + std::to_string(rate));
        if (rate < 0.0) rate = 0.0;
        out.rates.push_back(rate);
        ComplexMatrix op(carrier_ops.empty() ? 0 : carrier_ops.front().rows(),
                         carrier_ops.empty() ? 0 : carrier_ops.front().cols());
        for (std::size_t l = 0; l < L; ++l) op += std::conj(eig.vectors(l, k)) * carrier_ops[l];
        out.ops.push_back(std::move(op));
    }
    return out;
}

GeneratorBundle build_bundle(const CascadeModel& model) {
    GeneratorBundle bundle;
    const std::size_t M = model.carrier_count();
    const std::size_t L = model.term_count();
    bundle.timed = model.has_timed_ops();
    bundle.drift = model.stability_drift;

    for (std::size_t m = 0; m < M; ++m) {
        std::vector<double> deltas(L);
        for (std::size_t l = 0; l < L; ++l) deltas[l] = compute_delta(model, m, l);
        bundle.deltas.push_back(std::move(deltas));
        bundle.h_eff.push_back(build_effective_hamiltonian(model, m));
        bundle.gamma_local.push_back(compute_gamma_local(model, m));

        std::vector<ComplexMatrix> local_ops;
        for (std::size_t l = 0; l < L; ++l) local_ops.push_back(model.carrier_op(l, m, 0));
        bundle.rates.push_back(diagonalize_rates(bundle.gamma_local[m], local_ops));

        for (std::size_t mp = m + 1; mp < M; ++mp)
            bundle.gamma_cross.push_back({m, mp, compute_gamma_cross(model, m, mp)});
    }

    if (!bundle.timed) {
        const qmath::SpaceLayout layout = model.carrier_layout();
        bundle.embedded_ops.resize(M);
        bundle.k_ops.reserve(M);
        for (std::size_t m = 0; m < M; ++m) {
            for (std::size_t l = 0; l < L; ++l)
                bundle.embedded_ops[m].push_back(
                    qmath::embed(model.carrier_op(l, m, 0), layout, m));
            ComplexMatrix k(model.carrier_dims[m], model.carrier_dims[m]);
            for (std::size_t l = 0; l < L; ++l)
                for (std::size_t lp = 0; lp < L; ++lp)
                    k += bundle.gamma_local[m](l, lp) *
                         (model.carrier_op(l, m, 0) * model.carrier_op(lp, m, 0));
            bundle.k_ops.push_back(qmath::embed(k, layout, m));
        }
    }
    return bundle;
}

ComplexMatrix apply_local_lindblad(const GeneratorBundle& bundle, const CascadeModel& model,
                                   std::size_t carrier, const ComplexMatrix& x, double t) {
    require_carrier(model, carrier);
    if (x.rows() != model.carrier_space_dim() || !x.square())
        throw CascadeError("DIM_MISMATCH", "apply_local_lindblad: state dimension mismatch");

    const std::size_t L = model.term_count();
    const ComplexMatrix& gm = bundle.gamma_local[carrier];
    const std::vector<ComplexMatrix> ops = ops_at(bundle, model, carrier, t);

    ComplexMatrix out(x.rows(), x.cols());
    // sandwich sum_{l,l'} gamma(l,l') A^(l') x A^(l)
    std::vector<ComplexMatrix> right(L);
    for (std::size_t l = 0; l < L; ++l) right[l] = x * ops[l];
    for (std::size_t lp = 0; lp < L; ++lp) {
        ComplexMatrix mix(x.rows(), x.cols());
        for (std::size_t l = 0; l < L; ++l) mix += gm(l, lp) * right[l];
        out += ops[lp] * mix;
    }
    // anticommutator part with K = sum gamma(l,l') A^(l) A^(l')
    const ComplexMatrix k = k_op_at(bundle, model, carrier, t);
    out -= 0.5 * (k * x + x * k);
    return out;
}

ComplexMatrix apply_cross_term(const GeneratorBundle& bundle, const CascadeModel& model,
                               std::size_t carrier, std::size_t carrier_prime,
                               const ComplexMatrix& x, double t) {
    if (carrier_prime <= carrier || carrier_prime >= model.carrier_count())
        throw std::out_of_range("apply_cross_term: requires carrier < carrier_prime");
    if (x.rows() != model.carrier_space_dim() || !x.square())
        throw CascadeError("DIM_MISMATCH", "apply_cross_term: state dimension mismatch");

    const std::size_t L = model.term_count();
    const ComplexMatrix& gc = bundle.cross(carrier, carrier_prime).gamma;
    const std::vector<ComplexMatrix> ops_early = ops_at(bundle, model, carrier, t);
    const std::vector<ComplexMatrix> ops_late = ops_at(bundle, model, carrier_prime, t);

    std::vector<ComplexMatrix> comms(L);
    for (std::size_t lp = 0; lp < L; ++lp) comms[lp] = x * ops_late[lp] - ops_late[lp] * x;

    ComplexMatrix out(x.rows(), x.cols());
    for (std::size_t l = 0; l < L; ++l) {
        ComplexMatrix fwd(x.rows(), x.cols());
        ComplexMatrix bwd(x.rows(), x.cols());
        for (std::size_t lp = 0; lp < L; ++lp) {
            fwd += gc(l, lp) * comms[lp];
            bwd += std::conj(gc(l, lp)) * comms[lp];
        }
        out += ops_early[l] * fwd;
        out -= bwd * ops_early[l];
    }
    return out;
}

ComplexMatrix apply_cascade_generator(const GeneratorBundle& bundle, const CascadeModel& model,
                                      const ComplexMatrix& x, double t) {
    ComplexMatrix out(x.rows(), x.cols());
    const std::size_t M = model.carrier_count();
    for (std::size_t m = 0; m < M; ++m) {
        out += apply_local_lindblad(bundle, model, m, x, t);
        for (std::size_t mp = m + 1; mp < M; ++mp)
            out += apply_cross_term(bundle, model, m, mp, x, t);
    }
    return out;
}

}  // namespace cascade::generator
