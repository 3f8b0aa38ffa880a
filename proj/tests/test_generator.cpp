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

#include <doctest.h>

#include <cmath>

#include "cascade/collision_engine.hpp"
#include "cascade/generator.hpp"
#include "cascade/presets.hpp"
#include "test_models.hpp"

using namespace cascade;
using qmath::cdouble;
using qmath::ComplexMatrix;

namespace {

DamperMap completely_depolarizing() { return testmodels::depolarizing_damper(1.0); }

// sum_k r_k (2 L x L† - {L†L, x}) / 2 with the operators embedded on the
// full carrier space; the independent resynthesis route for the local term
ComplexMatrix lindblad_from_rates(const GeneratorBundle::RateSet& rates, const CascadeModel& model,
                                  std::size_t carrier, const ComplexMatrix& x) {
    const qmath::SpaceLayout layout = model.carrier_layout();
    ComplexMatrix out(x.rows(), x.cols());
    for (std::size_t k = 0; k < rates.rates.size(); ++k) {
        if (rates.rates[k] == 0.0) continue;
        const ComplexMatrix lop = qmath::embed(rates.ops[k], layout, carrier);
        const ComplexMatrix ldag = lop.adjoint();
        const ComplexMatrix ll = ldag * lop;
        out += rates.rates[k] * (lop * x * ldag - 0.5 * (ll * x + x * ll));
    }
    return out;
}

}  // namespace

TEST_CASE("compute_delta matches hand evaluations") {
    // off-diagonal B in a diagonal state
    CascadeModel model = testmodels::single_term(qmath::pauli_z(), qmath::pauli_x(),
                                                 qmath::basis_projector(2, 0),
                                                 testmodels::identity_damper(2));
    CHECK(std::abs(generator::compute_delta(model, 0, 0)) <= 1e-15);

    // eigenstate expectation
    model = testmodels::single_term(qmath::pauli_x(), qmath::pauli_z(),
                                    qmath::basis_projector(2, 0), testmodels::identity_damper(2));
    CHECK(generator::compute_delta(model, 0, 0) == doctest::Approx(1.0).epsilon(1e-12));

    // one damper application folds the state to I/2
    CascadeModel two = model;
    two.carrier_dims = {2, 2};
    two.coupling[0].carrier_ops.push_back(qmath::pauli_x());
    two.free_hamiltonians.resize(2);
    two.damper = completely_depolarizing();
    CHECK(std::abs(generator::compute_delta(two, 1, 0)) <= 1e-12);

    CHECK_THROWS_AS(generator::compute_delta(model, 3, 0), std::out_of_range);
}

TEST_CASE("check_stability on the named cases") {
    CHECK(generator::check_stability(presets::make("ad-qubit").model).satisfied);

    const generator::StabilityReport zdrift =
        generator::check_stability(presets::make("zdrift-qubit").model);
    CHECK_FALSE(zdrift.satisfied);
    CHECK(zdrift.worst_abs_delta == doctest::Approx(1.0).epsilon(1e-12));

    // traceless B in the maximally mixed state
    const CascadeModel mixed = testmodels::single_term(qmath::pauli_x(), qmath::pauli_z(),
                                                       0.5 * ComplexMatrix::identity(2),
                                                       testmodels::identity_damper(2));
    CHECK(generator::check_stability(mixed).satisfied);
}

TEST_CASE("enforce_stability on an already-stable model is a no-op") {
    const CascadeModel model = presets::make("ad-qubit").model;
    const CascadeModel enforced = generator::enforce_stability(model);
    REQUIRE(enforced.enforced());
    for (std::size_t l = 0; l < model.term_count(); ++l)
        CHECK(qmath::max_abs_diff(enforced.rescaled_env_ops[0][l], model.coupling[l].env_op) <=
              1e-12);
    CHECK(enforced.stability_drift[0][0].max_abs() <= 1e-12);
}

TEST_CASE("enforce_stability rescales the zdrift preset") {
    const CascadeModel model = presets::make("zdrift-qubit").model;
    const CascadeModel enforced = generator::enforce_stability(model);
    CHECK(qmath::max_abs_diff(enforced.rescaled_env_ops[0][0],
                              qmath::pauli_z() - ComplexMatrix::identity(2)) <= 1e-12);
    CHECK(qmath::max_abs_diff(enforced.stability_drift[0][0], qmath::pauli_x()) <= 1e-12);
    CHECK(generator::check_stability(enforced).satisfied);
    CHECK(generator::check_stability(enforced).worst_abs_delta <= 1e-12);
}

TEST_CASE("enforce_stability with a damper gives position-dependent deltas") {
    CascadeModel model;
    model.carrier_dims = {2, 2};
    model.env_dim = 2;
    model.eta = qmath::basis_projector(2, 0);
    model.coupling.push_back({{qmath::pauli_x(), qmath::pauli_x()}, {}, qmath::pauli_z()});
    model.damper = testmodels::depolarizing_damper(0.5);
    model.free_hamiltonians.resize(2);
    model.gamma = 1.0;

    CHECK(generator::compute_delta(model, 0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(generator::compute_delta(model, 1, 0) == doctest::Approx(0.5).epsilon(1e-12));

    // oracle: one explicit Kraus pass over eta
    ComplexMatrix once(2, 2);
    for (const ComplexMatrix& k : model.damper.kraus)
        once += k * model.eta * k.adjoint();
    CHECK((qmath::pauli_z() * once).trace().real() == doctest::Approx(0.5).epsilon(1e-12));

    const CascadeModel enforced = generator::enforce_stability(model);
    for (std::size_t m = 0; m < 2; ++m)
        CHECK(std::abs(generator::compute_delta(enforced, m, 0)) <= 1e-12);
}

TEST_CASE("gamma_local reproduces the Pauli-algebra values") {
    // single term: sigma_z squared is the identity
    CascadeModel model = testmodels::single_term(qmath::pauli_x(), qmath::pauli_z(),
                                                 qmath::basis_projector(2, 0),
                                                 testmodels::identity_damper(2), 1.7);
    const ComplexMatrix single = generator::compute_gamma_local(model, 0);
    REQUIRE(single.rows() == 1);
    CHECK(std::abs(single(0, 0) - cdouble(1.7, 0.0)) <= 1e-12);

    // amplitude-damping pair: (gamma/4) [[1, -i], [i, 1]]
    const CascadeModel ad = presets::make("ad-qubit").model;
    const ComplexMatrix gm = generator::compute_gamma_local(ad, 0);
    CHECK(std::abs(gm(0, 0) - cdouble(0.25, 0.0)) <= 1e-12);
    CHECK(std::abs(gm(0, 1) - cdouble(0.0, -0.25)) <= 1e-12);
    CHECK(std::abs(gm(1, 0) - cdouble(0.0, 0.25)) <= 1e-12);
    CHECK(std::abs(gm(1, 1) - cdouble(0.25, 0.0)) <= 1e-12);
}

TEST_CASE("gamma tables agree with explicit Kraus chains") {
    verify::SplitMix64 rng(303);
    for (int trial = 0; trial < 5; ++trial) {
        CascadeModel model = testmodels::random_model(rng);
        while (model.carrier_count() < 2) model = testmodels::random_model(rng);
        const std::size_t L = model.term_count();

        for (std::size_t m = 0; m < model.carrier_count(); ++m) {
            // recompute M^m(eta) by repeated explicit Kraus application
            ComplexMatrix state = model.eta;
            for (std::size_t i = 0; i < m; ++i) {
                ComplexMatrix next(state.rows(), state.cols());
                for (const ComplexMatrix& k : model.damper.kraus)
                    next += k * state * k.adjoint();
                state = next;
            }
            ComplexMatrix expected(L, L);
            for (std::size_t l = 0; l < L; ++l)
                for (std::size_t lp = 0; lp < L; ++lp)
                    expected(l, lp) = model.gamma * (model.coupling[l].env_op *
                                                     model.coupling[lp].env_op * state)
                                                        .trace();
            CHECK(qmath::max_abs_diff(generator::compute_gamma_local(model, m), expected) <= 1e-12);
        }

        // cross table via the same chains
        ComplexMatrix expected(L, L);
        for (std::size_t l = 0; l < L; ++l) {
            ComplexMatrix chained = model.coupling[l].env_op * model.eta;
            ComplexMatrix next(chained.rows(), chained.cols());
            for (const ComplexMatrix& k : model.damper.kraus)
                next += k * chained * k.adjoint();
            chained = next;
            for (std::size_t lp = 0; lp < L; ++lp)
                expected(l, lp) = model.gamma * (model.coupling[lp].env_op * chained).trace();
        }
        CHECK(qmath::max_abs_diff(generator::compute_gamma_cross(model, 0, 1), expected) <= 1e-12);
    }
}

TEST_CASE("gamma_cross on the amplitude-damping cascade") {
    const CascadeModel model = presets::make("ad-cascade-2").model;
    const ComplexMatrix gc = generator::compute_gamma_cross(model, 0, 1);
    CHECK(std::abs(gc(0, 0) - cdouble(0.25, 0.0)) <= 1e-12);
    CHECK(std::abs(gc(0, 1) - cdouble(0.0, 0.25)) <= 1e-12);
    CHECK(std::abs(gc(1, 0) - cdouble(0.0, -0.25)) <= 1e-12);
    CHECK(std::abs(gc(1, 1) - cdouble(0.25, 0.0)) <= 1e-12);
    CHECK_THROWS_AS(generator::compute_gamma_cross(model, 1, 1), std::out_of_range);
}

TEST_CASE("gamma_cross vanishes for traceless B under a depolarizing damper") {
    CascadeModel model;
    model.carrier_dims = {2, 2};
    model.env_dim = 2;
    model.eta = qmath::basis_projector(2, 1);
    model.coupling.push_back({{qmath::pauli_x(), qmath::pauli_x()}, {}, qmath::pauli_z()});
    model.damper = completely_depolarizing();
    model.free_hamiltonians.resize(2);
    model.gamma = 1.0;
    CHECK(generator::compute_gamma_cross(model, 0, 1).max_abs() <= 1e-12);
}

TEST_CASE("effective Hamiltonian assembles delta-weighted carrier operators") {
    CHECK(generator::build_effective_hamiltonian(presets::make("ad-qubit").model, 0).max_abs() <=
          1e-12);

    CHECK(qmath::max_abs_diff(
              generator::build_effective_hamiltonian(presets::make("zdrift-qubit").model, 0),
              qmath::pauli_x()) <= 1e-12);

    // deltas (1, 0.5) against A = (sigma_x, sigma_z)
    CascadeModel two = testmodels::single_term(qmath::pauli_x(), qmath::pauli_z(),
                                               qmath::basis_projector(2, 0),
                                               testmodels::identity_damper(2));
    two.coupling.push_back({{qmath::pauli_z()}, {}, 0.5 * qmath::pauli_z()});
    CHECK(qmath::max_abs_diff(generator::build_effective_hamiltonian(two, 0),
                              qmath::pauli_x() + 0.5 * qmath::pauli_z()) <= 1e-12);
}

TEST_CASE("local Lindblad term on the amplitude-damping preset") {
    const CascadeModel model = presets::make("ad-qubit").model;
    const GeneratorBundle bundle = generator::build_bundle(model);

    const ComplexMatrix excited = qmath::basis_projector(2, 0);
    const ComplexMatrix ground = qmath::basis_projector(2, 1);

    // gamma (|g><g| - |e><e|) on the excited state
    CHECK(qmath::max_abs_diff(generator::apply_local_lindblad(bundle, model, 0, excited),
                              ground - excited) <= 1e-12);
    // dark state
    CHECK(generator::apply_local_lindblad(bundle, model, 0, ground).max_abs() <= 1e-12);

    verify::SplitMix64 rng(404);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix x = verify::random_hermitian_unit(2, rng);
        const ComplexMatrix out = generator::apply_local_lindblad(bundle, model, 0, x);
        CHECK(std::abs(out.trace()) <= 1e-12);
        CHECK(qmath::max_abs_diff(out, out.adjoint()) <= 1e-12);
    }
}

TEST_CASE("cross term is unidirectional and Hermiticity-preserving") {
    const CascadeModel model = presets::make("ad-cascade-2").model;
    const GeneratorBundle bundle = generator::build_bundle(model);
    const qmath::SpaceLayout layout = model.carrier_layout();

    verify::SplitMix64 rng(505);
    double max_back = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix x = verify::random_hermitian_unit(4, rng);
        const ComplexMatrix out = generator::apply_cross_term(bundle, model, 0, 1, x);
        CHECK(qmath::partial_trace(out, layout, {0}).max_abs() <= 1e-12);
        CHECK(std::abs(out.trace()) <= 1e-12);
        CHECK(qmath::max_abs_diff(out, out.adjoint()) <= 1e-12);
        max_back = std::max(max_back, qmath::partial_trace(out, layout, {1}).max_abs());
    }
    // complex cross coefficients: the reverse trace must not vanish
    CHECK(max_back > 1e-6);

    CHECK_THROWS_AS(generator::apply_cross_term(bundle, model, 1, 0,
                                                ComplexMatrix::identity(4)),
                    std::out_of_range);
}

TEST_CASE("real cross coefficients decouple both directions") {
    const CascadeModel model = testmodels::real_coefficient_cascade();
    const GeneratorBundle bundle = generator::build_bundle(model);
    const qmath::SpaceLayout layout = model.carrier_layout();
    CHECK(bundle.cross(0, 1).gamma(0, 0).imag() == doctest::Approx(0.0).epsilon(1e-14));

    verify::SplitMix64 rng(606);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix x = verify::random_hermitian_unit(4, rng);
        const ComplexMatrix out = generator::apply_cross_term(bundle, model, 0, 1, x);
        CHECK(qmath::partial_trace(out, layout, {0}).max_abs() <= 1e-12);
        CHECK(qmath::partial_trace(out, layout, {1}).max_abs() <= 1e-12);
    }
}

TEST_CASE("zero cross coefficients give a zero cross term") {
    CascadeModel model;
    model.carrier_dims = {2, 2};
    model.env_dim = 2;
    model.eta = qmath::basis_projector(2, 1);
    model.coupling.push_back({{qmath::pauli_x(), qmath::pauli_x()}, {}, qmath::pauli_z()});
    model.damper = completely_depolarizing();
    model.free_hamiltonians.resize(2);
    model.gamma = 1.0;
    const GeneratorBundle bundle = generator::build_bundle(model);

    verify::SplitMix64 rng(707);
    const ComplexMatrix x = verify::random_hermitian_unit(4, rng);
    CHECK(generator::apply_cross_term(bundle, model, 0, 1, x).max_abs() <= 1e-14);
}

TEST_CASE("cascade generator reduces to the local term for one carrier") {
    const CascadeModel model = presets::make("ad-qubit").model;
    const GeneratorBundle bundle = generator::build_bundle(model);
    verify::SplitMix64 rng(808);
    const ComplexMatrix x = verify::random_hermitian_unit(2, rng);
    CHECK(qmath::max_abs_diff(generator::apply_cascade_generator(bundle, model, x, 0.0),
                              generator::apply_local_lindblad(bundle, model, 0, x)) <= 1e-14);
}

TEST_CASE("cascade generator annihilates the trace on two carriers") {
    const CascadeModel model = presets::make("ad-cascade-2").model;
    const GeneratorBundle bundle = generator::build_bundle(model);
    verify::SplitMix64 rng(909);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix x = verify::random_hermitian_unit(4, rng);
        const ComplexMatrix out = generator::apply_cascade_generator(bundle, model, x, 0.0);
        CHECK(std::abs(out.trace()) <= 1e-12);
        CHECK(qmath::max_abs_diff(out, out.adjoint()) <= 1e-12);
    }
}

TEST_CASE("diagonalize_rates recovers the amplitude-damping structure") {
    const CascadeModel model = presets::make("ad-qubit").model;
    const GeneratorBundle bundle = generator::build_bundle(model);
    const GeneratorBundle::RateSet& rates = bundle.rates[0];
    REQUIRE(rates.rates.size() == 2);
    CHECK(std::abs(rates.rates[0]) <= 1e-12);
    CHECK(rates.rates[1] == doctest::Approx(0.5).epsilon(1e-10));

    // the dissipative channel is proportional to sigma_x - i sigma_y = 2 sigma_-
    const ComplexMatrix& lop = rates.ops[1];
    CHECK(std::abs(lop(0, 0)) <= 1e-12);
    CHECK(std::abs(lop(0, 1)) <= 1e-12);
    CHECK(std::abs(lop(1, 1)) <= 1e-12);
    CHECK(std::abs(lop(1, 0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("single-term models diagonalize trivially") {
    CascadeModel model = testmodels::single_term(qmath::pauli_x(), qmath::pauli_z(),
                                                 qmath::basis_projector(2, 0),
                                                 testmodels::identity_damper(2), 2.5);
    const GeneratorBundle bundle = generator::build_bundle(model);
    REQUIRE(bundle.rates[0].rates.size() == 1);
    CHECK(bundle.rates[0].rates[0] == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(qmath::max_abs_diff(bundle.rates[0].ops[0], qmath::pauli_x()) <= 1e-10);
}

TEST_CASE("rate resynthesis matches the direct local term on random models") {
    verify::SplitMix64 rng(1111);
    for (int model_trial = 0; model_trial < 20; ++model_trial) {
        const CascadeModel model = testmodels::random_model(rng);
        const GeneratorBundle bundle = generator::build_bundle(model);
        for (std::size_t m = 0; m < model.carrier_count(); ++m) {
            const ComplexMatrix gm = bundle.gamma_local[m];
            CHECK(qmath::max_abs_diff(gm, gm.adjoint()) <= 1e-10);
            CHECK(qmath::min_eigenvalue(qmath::hermitize(gm)) >= -1e-10);
            for (int state_trial = 0; state_trial < 10; ++state_trial) {
                const ComplexMatrix x =
                    verify::random_hermitian_unit(model.carrier_space_dim(), rng);
                CHECK(qmath::max_abs_diff(
                          lindblad_from_rates(bundle.rates[m], model, m, x),
                          generator::apply_local_lindblad(bundle, model, m, x)) <= 1e-10);
            }
        }
        // delta imaginary parts vanish by construction of the trace
        for (std::size_t m = 0; m < model.carrier_count(); ++m)
            for (std::size_t l = 0; l < model.term_count(); ++l) {
                const ComplexMatrix state = model.damper.apply_power(model.eta, m);
                CHECK(std::abs((model.env_op(m, l) * state).trace().imag()) <= 1e-12);
            }
    }
}

TEST_CASE("one discrete column matches the second-order expansion") {
    // non-stable single-carrier model with gamma = g^2 dt so the tabulated
    // generator carries the full second-order coefficient
    const double g = 1.0;
    verify::SplitMix64 rng(1212);
    const ComplexMatrix rho0 = verify::random_density(2, rng);

    auto residual = [&](double dt) {
        CascadeModel model = testmodels::single_term(
            qmath::pauli_x(), qmath::pauli_z() + 0.5 * qmath::pauli_x(),
            qmath::basis_projector(2, 0), testmodels::identity_damper(2), g * g * dt);
        DiscreteParams d;
        d.dt = dt;
        d.g = g;
        d.n_steps = 1;
        d.regime = Regime::dissipative;
        model.discrete = d;
        REQUIRE(validate_model(model).empty());

        const GeneratorBundle bundle = generator::build_bundle(model);
        const ComplexMatrix stepped = engine::apply_column_step(rho0, model, 0);
        ComplexMatrix predicted = rho0;
        predicted += dt * generator::apply_cascade_generator(bundle, model, rho0, 0.0);
        const ComplexMatrix h_eff = bundle.h_eff[0];
        predicted += cdouble(0.0, -g * dt) * qmath::commutator(h_eff, rho0);
        return qmath::max_abs_diff(stepped, predicted);
    };

    const double coarse = residual(0.05);
    const double fine = residual(0.025);
    CHECK(coarse / fine >= 5.6);
    CHECK(coarse / fine <= 10.4);
}
