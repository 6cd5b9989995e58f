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
#include <numbers>
#include <span>
#include <vector>

#include "phosmo/circuit.hpp"
#include "phosmo/shots.hpp"
#include "phosmo/trigfit.hpp"

namespace phosmo {

struct TrainingConfig {
    int rounds = 10;
    /// Shot model used while training. Its seed is the root of every probe
    /// substream, keyed by (round, parameter, training point, batch, probe).
    MeasurementOracle oracle = MeasurementOracle::exact();
    /// Parameter visiting order; empty means 0, 1, ..., param_count - 1.
    std::vector<int> order;
    /// Search interval for scale parameters. Offset parameters always use one
    /// period [-pi, pi).
    double scale_lo = -2.0 * std::numbers::pi;
    double scale_hi = 2.0 * std::numbers::pi;
    MinimizeOptions minimize;
    /// Seed for the initial parameter draw.
    std::uint64_t seed = 0;
    /// Exact oracle only: stop once a full sweep improves the cost by less than
    /// this relative amount. 0 disables the cutoff.
    double min_relative_improvement = 0.0;
};

struct TraceEntry {
    int round = 0;
    int param = 0;
    double theta = 0.0;
    double est_min = 0.0;
    double exact_cost = 0.0;
    std::int64_t cum_shots = 0;
};

struct TrainState {
    ParameterVector params;
    int round = 0;
    std::vector<TraceEntry> trace;
    std::int64_t shots = 0;
};

/// (1/N) sum_i (p(x_i) - y_i)^2 with exact probabilities.
double exact_cost(const CircuitSpec &spec, std::span<const double> params, std::span<const DataPoint> data);

/// Estimated polynomials of one training point for the shifter being updated.
struct PointCost {
    std::size_t point = 0;
    double target = 0.0;
    EstimatedPoly estimate;
    EstimatedPoly estimate_prime;
};

/// Shifter phase as a function of the parameter being updated:
/// phi(theta) = intercept + slope * theta.
struct PhaseMap {
    double intercept = 0.0;
    double slope = 1.0;
};

/// theta -> (1/N) sum_i [p~_i(phi_i) p~'_i(phi_i) - 2 p~_i(phi_i) y_i + y_i^2],
/// phi_i = phi_i(theta). Unbiased for the exact cost when the two estimates of
/// each point come from independent shot batches.
std::function<double(double)> estimated_cost_fn(std::vector<PointCost> point_costs, std::vector<PhaseMap> phase_maps);

/// Phase map of parameter `param` for data point `x` at the current parameters.
PhaseMap phase_map_for(const CircuitSpec &spec, std::span<const double> params, int param, const DataPoint &x);

/// Uniform draw from [-pi, pi) for every parameter.
ParameterVector initial_parameters(int param_count, std::uint64_t seed);

/// One SMO step: probe, build the estimated cost along parameter `param`,
/// minimize it and write the argmin back.
TrainState update_parameter(const CircuitSpec &spec, TrainState state, std::span<const DataPoint> data, int param,
                            const TrainingConfig &config);

/// `config.rounds` sweeps from parameters drawn with `config.seed`.
TrainState train(const CircuitSpec &spec, std::span<const DataPoint> data, const TrainingConfig &config);
TrainState train(const CircuitSpec &spec, std::span<const DataPoint> data, const TrainingConfig &config,
                 ParameterVector initial);

/// rounds * params * N * (2n+1) * 2 * N_all; 0 for the exact oracle.
std::int64_t shot_budget(const TrainingConfig &config, const CircuitSpec &spec, std::size_t dataset_size);

}  // namespace phosmo
