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

#include <string>
#include <vector>

#include "cascade/model_io.hpp"

namespace cascade::presets {

// Built-in models:
//   ad-qubit      one qubit carrier, qubit environment, exchange coupling
//                 {sigma_x, sigma_y} x {sigma_x/2, sigma_y/2}, eta = |g><g|;
//                 standard amplitude damping at rate gamma.
//   ad-cascade-2  the same coupling replicated on two carriers (maximal
//                 cross-talk with the identity damper; damper_p > 0 swaps in
//                 a depolarizing damper).
//   zdrift-qubit  B = sigma_z, A = sigma_x, eta = |0><0|; violates the
//                 stability condition with |delta| = 1.
//   jc-cascade    two Fock-truncated modes (dim 4) crossed by a qubit
//                 environment via an excitation-exchange coupling; cavity
//                 decay at rate gamma with a unidirectional 1 -> 2 link.
std::vector<std::string> names();

io::ModelDocument make(const std::string& name, double damper_p = 0.0);

}  // namespace cascade::presets
