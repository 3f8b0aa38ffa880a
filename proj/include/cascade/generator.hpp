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

#include "cascade/model.hpp"

namespace cascade::generator {

// Tr[B^(l) M^carrier(eta)] for carrier in [0, M). Real for Hermitian B and a
// CPTP damper; the imaginary part is asserted small internally.
double compute_delta(const CascadeModel& model, std::size_t carrier, std::size_t term);

struct StabilityReport {
    bool satisfied = false;
    std::size_t worst_carrier = 0;
    std::size_t worst_term = 0;
    double worst_abs_delta = 0.0;
};

// Satisfied iff |delta_m^(l)| <= 1e-10 for every carrier position and term.
// Uses the carrier-indexed env ops when the model is stability-enforced.
StabilityReport check_stability(const CascadeModel& model);

// Rescale env ops per carrier position, B^(m,l) = B^(l) - delta_m^(l) I, and
// record the matching local drift h_m = sum_l delta_m^(l) A^(l). The combined
// collision Hamiltonian is unchanged; the rescaled coupling satisfies the
// carrier-indexed stability condition by construction.
CascadeModel enforce_stability(const CascadeModel& model);

// L x L Hermitian PSD correlation matrix gamma_m^(l,l') =
// gamma * Tr[B^(l) B^(l') M^carrier(eta)].
qmath::ComplexMatrix compute_gamma_local(const CascadeModel& model, std::size_t carrier);

// Cross-correlation gamma_{m,m'}^(l,l') =
// gamma * Tr[B^(l') M^(m'-m)(B^(l) M^m(eta))], for carrier < carrier_prime
// (0-based positions).
qmath::ComplexMatrix compute_gamma_cross(const CascadeModel& model, std::size_t carrier,
                                         std::size_t carrier_prime);

// sum_l delta_m^(l) A^(l); the zero matrix when stability holds.
qmath::ComplexMatrix build_effective_hamiltonian(const CascadeModel& model, std::size_t carrier);

// Eigendecompose gamma_m into non-negative rates and Lindblad operators
// L^(k) = sum_l conj(v_l^(k)) A^(l). Eigenvalues in [-1e-10, 0) are clipped
// to zero; anything below that aborts.
GeneratorBundle::RateSet diagonalize_rates(const qmath::ComplexMatrix& gamma_m,
                                           const std::vector<qmath::ComplexMatrix>& carrier_ops);

GeneratorBundle build_bundle(const CascadeModel& model);

// Local Lindblad dissipator of carrier m applied to x on the full carrier
// space: (1/2) sum_{l,l'} gamma_m^(l,l') [2 A^(l') x A^(l) - {A^(l)A^(l'), x}].
qmath::ComplexMatrix apply_local_lindblad(const GeneratorBundle& bundle, const CascadeModel& model,
                                          std::size_t carrier, const qmath::ComplexMatrix& x,
                                          double t = 0.0);

// Unidirectional cross term for carriers m < m':
// sum gamma^(l,l') A_m^(l) [x, A_m'^(l')] - sum conj(gamma^(l,l')) [x, A_m'^(l')] A_m^(l).
// Its partial trace over the later carrier vanishes identically.
qmath::ComplexMatrix apply_cross_term(const GeneratorBundle& bundle, const CascadeModel& model,
                                      std::size_t carrier, std::size_t carrier_prime,
                                      const qmath::ComplexMatrix& x, double t = 0.0);

// Full cascade right-hand side: sum of local dissipators plus all ordered
// cross terms, with carrier operators evaluated at time t for timed models.
qmath::ComplexMatrix apply_cascade_generator(const GeneratorBundle& bundle, const CascadeModel& model,
                                             const qmath::ComplexMatrix& x, double t);

}  // namespace cascade::generator
