// Copyright 2026 The phosmo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "phosmo/circuit.hpp"

namespace phosmo::app {

/// Circuit document:
///
///   {
///     "modes": 2, "photons": 2, "params": 6,
///     "input": [{"occupation": [2, 0], "amplitude": [0.7071067811865476, 0]}, ...],
///     "outcome": [1, 1],
///     "elements": [
///       {"type": "phase_shifter", "mode": 0, "offset_param": 0, "scale_param": 1, "feature": 0, "constant": 0},
///       {"type": "beamsplitter", "modes": [0, 1]},
///       ...
///     ]
///   }
///
/// A beamsplitter may carry "matrix": [[[re, im], [re, im]], [[re, im], [re, im]]];
/// without it the 50-50 convention (1/sqrt 2)[[1, i], [i, 1]] is used.
/// Occupations missing from "input" have amplitude zero.
nlohmann::json circuit_to_json(const CircuitSpec &spec);
CircuitSpec circuit_from_json(const nlohmann::json &doc);
CircuitSpec load_circuit(const std::filesystem::path &path);

}  // namespace phosmo::app
