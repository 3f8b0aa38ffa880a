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

#include <json.hpp>

#include "cascade/model.hpp"
#include "cascade/trajectory.hpp"
#include "cascade/verify.hpp"

namespace cascade::io {

using json = nlohmann::ordered_json;

// A model file: the CascadeModel plus the run inputs that belong to it.
// Matrices encode complex entries as [re, im] pairs in row-major nested
// lists. In the "dissipative" regime g is computed from gamma and dt and
// must be absent from the document; in "unitary-limit" it must be present.
struct ModelDocument {
    CascadeModel model;
    qmath::ComplexMatrix initial_state;
    std::vector<Observable> observables;
};

// Parse errors carry the JSON path of the offending element.
ModelDocument parse_model(const json& doc);
ModelDocument load_model(const std::string& path);

json to_json(const ModelDocument& doc);
void save_model(const ModelDocument& doc, const std::string& path);

json matrix_to_json(const qmath::ComplexMatrix& m);
qmath::ComplexMatrix matrix_from_json(const json& j, const std::string& path);

// CSV trajectory: header `time,<label>...`, one row per sample, floats with
// 17 significant digits (round-trip exact).
std::string trajectory_csv(const Trajectory& traj);
void write_text_file(const std::string& path, const std::string& content);

json report_to_json(const verify::VerificationReport& report);
json bundle_to_json(const GeneratorBundle& bundle);

}  // namespace cascade::io
