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

#include <cmath>
#include <cstdint>

#include "cascade/qmath.hpp"

namespace cascade::verify {

// splitmix-style 64-bit PRNG. Chosen over std facilities because the exact
// stream must be reproducible across platforms and languages.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double gaussian() {
        // Box-Muller; u1 shifted away from zero so the log stays finite
        const double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    qmath::cdouble complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

private:
    std::uint64_t state_;
};

qmath::ComplexMatrix random_complex(std::size_t dim, SplitMix64& rng);

// (G + G†)/2 normalized to unit Frobenius norm
qmath::ComplexMatrix random_hermitian_unit(std::size_t dim, SplitMix64& rng);

// G G† / Tr[G G†]
qmath::ComplexMatrix random_density(std::size_t dim, SplitMix64& rng);

qmath::ComplexMatrix random_unitary(std::size_t dim, SplitMix64& rng);

// k Kraus operators K_i = G_i S^(-1/2), S = sum G_i† G_i
std::vector<qmath::ComplexMatrix> random_cptp(std::size_t dim, std::size_t n_kraus, SplitMix64& rng);

}  // namespace cascade::verify
