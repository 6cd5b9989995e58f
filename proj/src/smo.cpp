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

#include "phosmo/smo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace phosmo {

double exact_cost(const CircuitSpec &spec, std::span<const double> params, std::span<const DataPoint> data) {
    if (data.empty()) {
        throw std::invalid_argument("exact_cost: empty dataset");
    }
    double total = 0.0;
    for (const DataPoint &x : data) {
        const double diff = evaluate(spec, params, x) - static_cast<double>(x.label);
        total += diff * diff;
    }
    return total / static_cast<double>(data.size());
}

namespace {

class EstimatedCost {
  public:
    EstimatedCost(std::vector<PointCost> points, std::vector<PhaseMap> maps)
        : points_(std::move(points)), maps_(std::move(maps)) {
        if (points_.empty()) {
            throw std::invalid_argument("estimated_cost_fn: no training points");
        }
        if (points_.size() != maps_.size()) {
            throw std::invalid_argument("estimated_cost_fn: one phase map per point required");
        }
        degree_ = points_.front().estimate.poly.degree;
        for (const auto &pc : points_) {
            if (pc.estimate.poly.degree != degree_ || pc.estimate_prime.poly.degree != degree_) {
                throw std::invalid_argument("estimated_cost_fn: polynomial degree mismatch");
            }
        }
    }

    double operator()(double theta) const {
        double total = 0.0;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const double phi = maps_[i].intercept + maps_[i].slope * theta;
            const auto &a = points_[i].estimate.poly.coeffs;
            const auto &b = points_[i].estimate_prime.poly.coeffs;
            const double c1 = std::cos(phi);
            const double s1 = std::sin(phi);
            double p = a[0];
            double q = b[0];
            double ck = c1;
            double sk = s1;
            for (int k = 1; k <= degree_; ++k) {
                const auto ic = static_cast<std::size_t>(2 * k - 1);
                p += a[ic] * ck + a[ic + 1] * sk;
                q += b[ic] * ck + b[ic + 1] * sk;
                const double next_c = ck * c1 - sk * s1;
                sk = sk * c1 + ck * s1;
                ck = next_c;
            }
            const double y = points_[i].target;
            total += p * q - 2.0 * p * y + y * y;
        }
        return total / static_cast<double>(points_.size());
    }

  private:
    std::vector<PointCost> points_;
    std::vector<PhaseMap> maps_;
    int degree_ = 0;
};

std::vector<int> visiting_order(const CircuitSpec &spec, const TrainingConfig &config) {
    std::vector<int> order = config.order;
    if (order.empty()) {
        order.resize(static_cast<std::size_t>(spec.param_count()));
        for (int p = 0; p < spec.param_count(); ++p) {
            order[static_cast<std::size_t>(p)] = p;
        }
        return order;
    }
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.size() != static_cast<std::size_t>(spec.param_count())) {
        throw std::invalid_argument("training order is not a permutation of the circuit parameters");
    }
    for (int p = 0; p < spec.param_count(); ++p) {
        if (sorted[static_cast<std::size_t>(p)] != p) {
            throw std::invalid_argument("training order is not a permutation of the circuit parameters");
        }
    }
    return order;
}

}  // namespace

std::function<double(double)> estimated_cost_fn(std::vector<PointCost> point_costs, std::vector<PhaseMap> phase_maps) {
    return EstimatedCost(std::move(point_costs), std::move(phase_maps));
}

PhaseMap phase_map_for(const CircuitSpec &spec, std::span<const double> params, int param, const DataPoint &x) {
    const ParameterSite &site = spec.site(param);
    const auto &expr = std::get<PhaseShifter>(spec.elements()[site.element]).expr;
    const double phase = phase_of(expr, params, x.features);
    const double value = params[static_cast<std::size_t>(param)];
    if (site.role == ParameterSite::Role::Offset) {
        return {phase - value, 1.0};
    }
    const double feature = x.features.at(static_cast<std::size_t>(*site.feature));
    return {phase - value * feature, feature};
}

ParameterVector initial_parameters(int param_count, std::uint64_t seed) {
    RandomStream rng(derive_seed(seed, {0x1a17ULL}));
    ParameterVector params(static_cast<std::size_t>(param_count));
    for (double &v : params) {
        v = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }
    return params;
}

TrainState update_parameter(const CircuitSpec &spec, TrainState state, std::span<const DataPoint> data, int param,
                            const TrainingConfig &config) {
    if (data.empty()) {
        throw std::invalid_argument("update_parameter: empty dataset");
    }
    const ParameterSite &site = spec.site(param);
    const std::size_t ordinal = shifter_ordinal(spec, site.element);
    const int degree = spec.photons();
    const ProbeSchedule schedule = probe_phases(degree);

    std::vector<PointCost> costs;
    std::vector<PhaseMap> maps;
    costs.reserve(data.size());
    maps.reserve(data.size());
    std::vector<double> truth(schedule.phases.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::vector<double> phases = phosmo::bind(spec, state.params, data[i]);
        for (std::size_t j = 0; j < schedule.phases.size(); ++j) {
            phases[ordinal] = schedule.phases[j];
            truth[j] = evaluate_phases(spec, phases);
        }
        const MeasurementOracle oracle = config.oracle.substream(
            {static_cast<std::uint64_t>(state.round), static_cast<std::uint64_t>(param), i});
        auto [first, second] = independent_pair_from_values(truth, degree, oracle);
        costs.push_back(PointCost{i, static_cast<double>(data[i].label), std::move(first), std::move(second)});
        maps.push_back(phase_map_for(spec, state.params, param, data[i]));
    }
    const std::function<double(double)> cost = estimated_cost_fn(std::move(costs), std::move(maps));

    const bool offset = site.role == ParameterSite::Role::Offset;
    const double lo = offset ? -std::numbers::pi : config.scale_lo;
    const double hi = offset ? std::numbers::pi : config.scale_hi;
    Minimum best = minimize_1d(cost, lo, hi, config.minimize);
    if (offset && best.argmin >= std::numbers::pi) {
        best.argmin -= 2.0 * std::numbers::pi;
    }
    // The current value is a candidate too, so an update never moves to a
    // worse point of the same estimated cost.
    const double current = state.params[static_cast<std::size_t>(param)];
    if (current >= lo && current < hi) {
        const double current_value = cost(current);
        if (current_value < best.value) {
            best = {current, current_value};
        }
    }

    state.params[static_cast<std::size_t>(param)] = best.argmin;
    if (!config.oracle.is_exact()) {
        state.shots += 2 * static_cast<std::int64_t>(schedule.phases.size()) * config.oracle.shots() *
                       static_cast<std::int64_t>(data.size());
    }
    state.trace.push_back(
        TraceEntry{state.round, param, best.argmin, best.value, exact_cost(spec, state.params, data), state.shots});
    return state;
}

TrainState train(const CircuitSpec &spec, std::span<const DataPoint> data, const TrainingConfig &config,
                 ParameterVector initial) {
    if (config.rounds < 0) {
        throw std::invalid_argument("train: negative round count");
    }
    if (!(config.scale_lo < config.scale_hi)) {
        throw std::invalid_argument("train: scale interval must satisfy lo < hi");
    }
    if (static_cast<int>(initial.size()) != spec.param_count()) {
        throw std::invalid_argument("train: initial parameter count mismatch");
    }
    const std::vector<int> order = visiting_order(spec, config);
    TrainState state{std::move(initial), 0, {}, 0};
    double previous = config.min_relative_improvement > 0.0 && config.oracle.is_exact()
                          ? exact_cost(spec, state.params, data)
                          : 0.0;
    for (int r = 0; r < config.rounds; ++r) {
        state.round = r;
        for (int param : order) {
            state = update_parameter(spec, std::move(state), data, param, config);
        }
        if (config.min_relative_improvement > 0.0 && config.oracle.is_exact()) {
            const double now = state.trace.back().exact_cost;
            const bool stalled = previous <= 0.0 || (previous - now) / previous < config.min_relative_improvement;
            previous = now;
            if (stalled) {
                state.round = r + 1;
                break;
            }
        }
        state.round = r + 1;
    }
    return state;
}

TrainState train(const CircuitSpec &spec, std::span<const DataPoint> data, const TrainingConfig &config) {
    return train(spec, data, config, initial_parameters(spec.param_count(), config.seed));
}

std::int64_t shot_budget(const TrainingConfig &config, const CircuitSpec &spec, std::size_t dataset_size) {
    if (config.oracle.is_exact()) {
        return 0;
    }
    return static_cast<std::int64_t>(config.rounds) * spec.param_count() * static_cast<std::int64_t>(dataset_size) *
           (2 * spec.photons() + 1) * 2 * config.oracle.shots();
}

}  // namespace phosmo
