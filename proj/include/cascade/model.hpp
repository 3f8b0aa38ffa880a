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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cascade/qmath.hpp"

namespace cascade {

// Runtime error carrying a machine-readable code (STABILITY_VIOLATED,
// FRAME_UNSUPPORTED, PARSE_ERROR, ...).
class CascadeError : public std::runtime_error {
public:
    CascadeError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// One term A^(l) ⊗ B^(l) of the coupling Hamiltonian. carrier_ops holds one
// Hermitian operator per carrier (a carrier not coupled through this term
// declares a zero matrix). carrier_ops_timed, when non-empty for a carrier,
// holds per-step samples interpolated piecewise-constant left.
struct CouplingTerm {
    std::vector<qmath::ComplexMatrix> carrier_ops;
    std::vector<std::vector<qmath::ComplexMatrix>> carrier_ops_timed;
    qmath::ComplexMatrix env_op;
};

// CPTP map on the sub-environment given as a Kraus list.
struct DamperMap {
    std::vector<qmath::ComplexMatrix> kraus;

    qmath::ComplexMatrix apply(const qmath::ComplexMatrix& x) const;
    qmath::ComplexMatrix apply_power(qmath::ComplexMatrix x, std::size_t n) const;
    bool is_identity() const;
};

enum class Regime { dissipative, unitary_limit };

struct DiscreteParams {
    double dt = 0.0;
    double g = 0.0;
    std::size_t n_steps = 0;
    Regime regime = Regime::dissipative;
};

struct Observable {
    std::string label;
    qmath::ComplexMatrix matrix;
};

// Full problem description consumed by the engine, the generator and the
// integrator. Immutable after load/validation.
struct CascadeModel {
    std::vector<std::size_t> carrier_dims;
    std::size_t env_dim = 0;
    qmath::ComplexMatrix eta;
    std::vector<CouplingTerm> coupling;
    DamperMap damper;
    // per carrier: empty = none, one entry = static, n entries = per-step samples
    std::vector<std::vector<qmath::ComplexMatrix>> free_hamiltonians;
    double gamma = 0.0;
    std::optional<DiscreteParams> discrete;

    // Filled by stability enforcement: rescaled env ops B^(m,l) = B^(l) - delta_m^(l) I
    // and the matching per-carrier drift Hamiltonians h_m = sum_l delta_m^(l) A^(l).
    std::vector<std::vector<qmath::ComplexMatrix>> rescaled_env_ops;  // [m][l]
    std::vector<std::vector<qmath::ComplexMatrix>> stability_drift;   // [m]: empty/static/per-step

    std::size_t carrier_count() const { return carrier_dims.size(); }
    std::size_t term_count() const { return coupling.size(); }
    std::size_t carrier_space_dim() const;
    bool enforced() const { return !rescaled_env_ops.empty(); }
    bool has_timed_ops() const;

    // Env operator of term l as seen by carrier m (0-based): the rescaled one
    // when enforcement has run, the shared B^(l) otherwise.
    const qmath::ComplexMatrix& env_op(std::size_t carrier, std::size_t term) const;
    // Carrier operator of term l on carrier m at collision step n.
    const qmath::ComplexMatrix& carrier_op(std::size_t term, std::size_t carrier, std::size_t step) const;
    const qmath::ComplexMatrix* free_hamiltonian(std::size_t carrier, std::size_t step) const;
    const qmath::ComplexMatrix* drift(std::size_t carrier, std::size_t step) const;

    qmath::SpaceLayout carrier_layout() const;
    qmath::SpaceLayout joint_layout() const;  // carriers plus the env slot, rightmost
};

// Coefficient tables of the continuous-limit cascade generator, precomputed
// once per model and shared read-only.
struct GeneratorBundle {
    std::vector<std::vector<double>> deltas;        // [m][l]
    std::vector<qmath::ComplexMatrix> h_eff;        // [m], on carrier m's space
    std::vector<qmath::ComplexMatrix> gamma_local;  // [m], L x L Hermitian PSD

    struct CrossEntry {
        std::size_t m = 0;        // earlier carrier
        std::size_t m_prime = 0;  // later carrier
        qmath::ComplexMatrix gamma;
    };
    std::vector<CrossEntry> gamma_cross;

    struct RateSet {
        std::vector<double> rates;                // non-negative, aligned with ops
        std::vector<qmath::ComplexMatrix> ops;    // Lindblad operators on the carrier space
    };
    std::vector<RateSet> rates;  // per carrier

    std::vector<std::vector<qmath::ComplexMatrix>> drift;  // enforcement frame, may be empty

    // Caches for static models: coupling operators embedded into the full
    // carrier space and K_m = sum_{l,l'} gamma_m^(l,l') A^(l) A^(l').
    std::vector<std::vector<qmath::ComplexMatrix>> embedded_ops;  // [m][l]
    std::vector<qmath::ComplexMatrix> k_ops;                      // [m]
    bool timed = false;

    const CrossEntry& cross(std::size_t m, std::size_t m_prime) const;
};

struct Violation {
    std::string code;
    std::string where;
    double residual = 0.0;
};

// Checks every model invariant; violations are data, not exceptions.
std::vector<Violation> validate_model(const CascadeModel& model);

// FNV-1a over the model's numeric content; stable across runs.
std::uint64_t model_digest(const CascadeModel& model);
std::string digest_hex(std::uint64_t digest);

}  // namespace cascade
