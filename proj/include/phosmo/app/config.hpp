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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phosmo/classifier.hpp"

namespace phosmo::app {

inline constexpr const char *kToolName = "phosmo";
inline constexpr const char *kToolVersion = "0.1.0";

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Everything a train/sweep/budget run needs, as read from a config file.
///
/// The on-disk format is one `key = value` per line, `#` starts a comment.
/// Values are numbers, booleans, bare words, or bracketed lists; integer
/// lists accept `a..b` ranges. See serialize_config for the full key set.
struct RunConfig {
    std::string circuit = "default";  // "default" or a circuit JSON path
    std::string rule = "circle";
    double center_x = 0.0;
    double center_y = 0.0;
    double radius = 0.7;
    std::int64_t train_size = 300;
    std::int64_t test_size = 1000;
    std::uint64_t master_seed = 0;
    std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    int rounds = 10;
    std::vector<int> n_all{kExactShots, 200, 50, 10, 5, 2, 1};
    double scale_lo = -6.283185307179586;
    double scale_hi = 6.283185307179586;
    int grid_points = 2048;
    double tol = 1e-10;
    std::vector<int> order;  // empty = natural
    double min_improvement = 0.0;
    double threshold = 0.5;
    bool calibrate = false;
    std::string out_dir = "results";
    bool plot = true;
    int threads = 1;

    bool operator==(const RunConfig &) const = default;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path &path);
std::string serialize_config(const RunConfig &config);

/// Checks ranges and cross-field constraints; throws ConfigError.
void validate(const RunConfig &config);

/// FNV-1a of the serialized config, as 16 hex digits. Keys that cannot change
/// results (output.dir, output.plot, threads) are excluded.
std::string config_hash(const RunConfig &config);

/// Resolves the circuit (relative paths against `base_dir`) and builds the
/// sweep description.
SweepConfig to_sweep_config(const RunConfig &config, const std::filesystem::path &base_dir);

std::string n_all_label(int n_all);

}  // namespace phosmo::app
