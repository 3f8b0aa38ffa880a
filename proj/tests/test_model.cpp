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

#include <algorithm>

#include "cascade/collision_engine.hpp"
#include "cascade/generator.hpp"
#include "cascade/presets.hpp"
#include "test_models.hpp"

using namespace cascade;
using qmath::ComplexMatrix;

namespace {

bool has_violation(const std::vector<Violation>& report, const std::string& code) {
    return std::any_of(report.begin(), report.end(),
                       [&](const Violation& v) { return v.code == code; });
}

}  // namespace

TEST_CASE("well-formed presets produce an empty report") {
    for (const std::string& name : presets::names()) {
        const io::ModelDocument doc = presets::make(name);
        CHECK(validate_model(doc.model).empty());
    }
}

TEST_CASE("incomplete Kraus list is reported with its residual") {
    CascadeModel model = presets::make("ad-qubit").model;
    model.damper.kraus = {0.9 * ComplexMatrix::identity(2)};
    const std::vector<Violation> report = validate_model(model);
    REQUIRE(has_violation(report, "KRAUS_INCOMPLETE"));
    for (const Violation& v : report)
        if (v.code == "KRAUS_INCOMPLETE") CHECK(v.residual == doctest::Approx(0.19).epsilon(1e-10));
}

TEST_CASE("non-Hermitian carrier operator is reported") {
    CascadeModel model = presets::make("ad-qubit").model;
    ComplexMatrix raising(2, 2);
    raising(0, 1) = 1.0;  // sigma_+: not Hermitian
    model.coupling[0].carrier_ops[0] = raising;
    CHECK(has_violation(validate_model(model), "NON_HERMITIAN"));
}

TEST_CASE("eta defects are reported") {
    CascadeModel model = presets::make("ad-qubit").model;
    model.eta = 0.9 * qmath::basis_projector(2, 1);
    CHECK(has_violation(validate_model(model), "ETA_TRACE"));

    model = presets::make("ad-qubit").model;
    model.eta = 1.5 * qmath::basis_projector(2, 1) - 0.5 * qmath::basis_projector(2, 0);
    CHECK(has_violation(validate_model(model), "ETA_NOT_PSD"));
}

TEST_CASE("dissipative regime ties g to sqrt(gamma/dt)") {
    CascadeModel model = presets::make("ad-qubit").model;
    model.discrete->g += 1e-6;
    CHECK(has_violation(validate_model(model), "REGIME_G_MISMATCH"));
}

TEST_CASE("validate_model is idempotent and side-effect free") {
    CascadeModel model = presets::make("ad-cascade-2").model;
    model.damper.kraus = {0.9 * ComplexMatrix::identity(2)};
    const auto first = validate_model(model);
    const auto second = validate_model(model);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].code == second[i].code);
        CHECK(first[i].residual == second[i].residual);
    }
}

TEST_CASE("validated models run through every downstream operation") {
    verify::SplitMix64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        CascadeModel model = testmodels::random_model(rng);
        testmodels::set_dissipative(model, 1e-2, 3);
        REQUIRE(validate_model(model).empty());

        const GeneratorBundle bundle = generator::build_bundle(model);
        const ComplexMatrix x = verify::random_hermitian_unit(model.carrier_space_dim(), rng);
        CHECK_NOTHROW(generator::apply_cascade_generator(bundle, model, x, 0.0));
        CHECK_NOTHROW(generator::check_stability(model));
        CHECK_NOTHROW(generator::enforce_stability(model));
        CHECK_NOTHROW(
            engine::simulate_discrete(model, verify::random_density(model.carrier_space_dim(), rng),
                                      {}, {1, false}));
    }
}

TEST_CASE("model digest is stable and content-sensitive") {
    const CascadeModel a = presets::make("ad-qubit").model;
    const CascadeModel b = presets::make("ad-qubit").model;
    CHECK(model_digest(a) == model_digest(b));

    CascadeModel c = a;
    c.gamma = 2.0;
    CHECK(model_digest(a) != model_digest(c));
    CHECK(digest_hex(model_digest(a)).size() == 16);
}
