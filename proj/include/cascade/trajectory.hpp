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

#include "cascade/qmath.hpp"

namespace cascade {

// Time-indexed carrier states plus observable expectations. times are
// uniformly spaced (sample cadence x dt); states follow the same grid and
// may be empty when snapshots are not recorded.
struct Trajectory {
    std::vector<double> times;
    std::vector<qmath::ComplexMatrix> states;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> expectations;  // [observable][sample]

    qmath::ComplexMatrix final_state;  // state at the last integration step

    std::string model_digest;
    double dt = 0.0;
    std::string method;
    std::vector<std::string> warnings;
};

}  // namespace cascade
