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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace phosmo::app {

enum ExitCode : int { kExitOk = 0, kExitConfigError = 1, kExitRuntimeError = 2 };

struct CommandOptions {
    std::filesystem::path config;
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<bool> plot;
};

/// One training run (first entry of `seeds` and of `train.n_all`). Writes
/// trace.csv, params.json and, with plotting on, trace.svg.
int cmd_train(const CommandOptions &options, std::ostream &out, std::ostream &err);

/// Full N_all x seed sweep. Writes results.csv, timings.csv, summary.json,
/// predictions.csv (test-set predictions of the first seed) and, with
/// plotting on, curve.svg and regions_<n_all>.svg.
int cmd_sweep(const CommandOptions &options, std::ostream &out, std::ostream &err);

/// Prints the shot budget per N_all and the reduction factor against a
/// single-batch run with 200 shots per probe.
int cmd_budget(const CommandOptions &options, std::ostream &out, std::ostream &err);

/// kind = curve (results.csv), regions (predictions.csv) or trace (trace.csv).
/// SVGs go to `out_dir`, defaulting to the input file's directory.
int cmd_plot(const std::filesystem::path &input, const std::string &kind,
             const std::optional<std::filesystem::path> &out_dir, std::ostream &out, std::ostream &err);

}  // namespace phosmo::app
