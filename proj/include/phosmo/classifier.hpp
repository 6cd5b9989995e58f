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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "phosmo/circuit.hpp"
#include "phosmo/smo.hpp"

namespace phosmo {

/// Label 1 inside (or on) the circle, 0 outside.
struct CircleRule {
    double center_x = 0.0;
    double center_y = 0.0;
    double radius = 0.7;
};

struct PredicateRule {
    std::string name;
    std::function<int(std::span<const double>)> predicate;
};

using LabelRule = std::variant<CircleRule, PredicateRule>;

int label_of(const LabelRule &rule, std::span<const double> features);
std::string describe(const LabelRule &rule);

struct Dataset {
    std::vector<DataPoint> points;
    std::uint64_t seed = 0;
};

/// Features uniform on [-1, 1]^2, labelled by `rule`.
Dataset generate_dataset(const LabelRule &rule, std::size_t count, std::uint64_t seed);

/// 1 iff the exact outcome probability is >= threshold.
int classify_point(const CircuitSpec &spec, std::span<const double> params, const DataPoint &x, double threshold);

struct Metrics {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;
    std::optional<double> tpr;  // unset when there are no positive labels
    std::optional<double> tnr;  // unset when there are no negative labels
    std::optional<double> p;    // average of the defined ratios
    std::vector<std::string> warnings;
};

Metrics compute_metrics(std::span<const int> predictions, std::span<const int> labels);

/// Threshold among 101 values (k + 1/2) / 101 maximizing P on `data`.
double calibrate_threshold(const CircuitSpec &spec, std::span<const double> params, std::span<const DataPoint> data);

/// Shot-count setting of a sweep cell; 0 stands for exact probabilities.
inline constexpr int kExactShots = 0;

struct SweepConfig {
    CircuitSpec circuit = default_reuploading_circuit();
    LabelRule rule = CircleRule{};
    std::size_t train_size = 300;
    std::size_t test_size = 1000;
    std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<int> n_all{kExactShots, 200, 50, 10, 5, 2, 1};
    /// Rounds, search intervals and minimizer knobs; the oracle and seed are
    /// replaced per cell.
    TrainingConfig training;
    double threshold = 0.5;
    bool calibrate_threshold = false;
    std::uint64_t master_seed = 0;
    int threads = 1;
};

/// Seeds of one data-set seed, shared by every N_all run on it.
struct CellSeeds {
    std::uint64_t train_data;
    std::uint64_t test_data;
    std::uint64_t init;
    std::uint64_t shots;
};

CellSeeds cell_seeds(std::uint64_t master_seed, std::uint64_t seed, int n_all);

struct SweepCell {
    int n_all = kExactShots;
    std::uint64_t seed = 0;
    ParameterVector initial;
    TrainState state;
    double threshold = 0.5;
    double final_cost = 0.0;
    Metrics metrics;
    std::vector<int> test_predictions;
    double wall_seconds = 0.0;
};

struct SweepResult {
    /// Ordered by N_all (config order) then seed (config order).
    std::vector<SweepCell> cells;
};

/// Trains every (N_all, seed) cell on the same per-seed data set and start
/// point, then scores each on a fresh per-seed test set.
SweepResult run_nall_sweep(const SweepConfig &config);

/// Single cell of the sweep.
SweepCell run_sweep_cell(const SweepConfig &config, int n_all, std::uint64_t seed);

}  // namespace phosmo
