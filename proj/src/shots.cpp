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

#include "phosmo/shots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace phosmo {

namespace {

constexpr double kProbabilitySlack = 1e-9;

double checked_probability(double p) {
    if (!(p >= -kProbabilitySlack && p <= 1.0 + kProbabilitySlack)) {
        throw std::domain_error("probability " + std::to_string(p) + " outside [0, 1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

int sample_by_inversion(int trials, double p, RandomStream &rng) {
    // Walk the CDF with the pmf recurrence; p <= 1/2 keeps pmf(0) representable.
    const double q = 1.0 - p;
    const double ratio = p / q;
    double pmf = std::pow(q, trials);
    double cdf = pmf;
    const double u = rng.uniform();
    int k = 0;
    while (u >= cdf && k < trials) {
        pmf *= ratio * static_cast<double>(trials - k) / static_cast<double>(k + 1);
        ++k;
        cdf += pmf;
    }
    return k;
}

}  // namespace

MeasurementOracle MeasurementOracle::exact() {
    return MeasurementOracle(Kind::Exact, 0, 0);
}

MeasurementOracle MeasurementOracle::binomial(int shots, std::uint64_t seed) {
    if (shots < 1) {
        throw std::invalid_argument("binomial oracle needs at least one shot, got " + std::to_string(shots));
    }
    return MeasurementOracle(Kind::Binomial, shots, seed);
}

MeasurementOracle MeasurementOracle::substream(std::initializer_list<std::uint64_t> key) const {
    return MeasurementOracle(kind_, shots_, derive_seed(stream_.seed(), key));
}

int sample_binomial(int trials, double p, RandomStream &rng) {
    if (trials < 0) {
        throw std::invalid_argument("sample_binomial: negative trial count");
    }
    p = checked_probability(p);
    if (p == 0.0) {
        return 0;
    }
    if (p == 1.0) {
        return trials;
    }
    if (trials <= 64 || trials > 1000) {
        int successes = 0;
        for (int t = 0; t < trials; ++t) {
            successes += rng.uniform() < p ? 1 : 0;
        }
        return successes;
    }
    if (p > 0.5) {
        return trials - sample_by_inversion(trials, 1.0 - p, rng);
    }
    return sample_by_inversion(trials, p, rng);
}

double estimate_probability(double p_true, MeasurementOracle &oracle) {
    if (oracle.is_exact()) {
        checked_probability(p_true);
        return p_true;
    }
    const int successes = sample_binomial(oracle.shots(), p_true, oracle.stream());
    return static_cast<double>(successes) / static_cast<double>(oracle.shots());
}

EstimatedPoly estimate_trigpoly_from_values(std::span<const double> true_values, int degree,
                                            const MeasurementOracle &oracle) {
    const auto count = static_cast<std::size_t>(2 * degree + 1);
    if (true_values.size() != count) {
        throw std::invalid_argument("estimate_trigpoly: expected " + std::to_string(count) + " probe values");
    }
    // One batch draws its probes in schedule order from a single stream.
    MeasurementOracle batch = oracle;
    std::vector<double> samples(count);
    for (std::size_t j = 0; j < count; ++j) {
        samples[j] = estimate_probability(true_values[j], batch);
    }
    const std::int64_t shots = oracle.is_exact() ? 0 : static_cast<std::int64_t>(count) * oracle.shots();
    return EstimatedPoly{reconstruct(samples, degree), shots};
}

EstimatedPoly estimate_trigpoly(const std::function<double(double)> &probe_fn, int degree,
                                const MeasurementOracle &oracle) {
    const ProbeSchedule schedule = probe_phases(degree);
    std::vector<double> values;
    values.reserve(schedule.phases.size());
    for (double phi : schedule.phases) {
        values.push_back(probe_fn(phi));
    }
    return estimate_trigpoly_from_values(values, degree, oracle);
}

std::pair<EstimatedPoly, EstimatedPoly> independent_pair_from_values(std::span<const double> true_values, int degree,
                                                                     const MeasurementOracle &oracle) {
    if (oracle.is_exact()) {
        EstimatedPoly exact = estimate_trigpoly_from_values(true_values, degree, oracle);
        return {exact, exact};
    }
    return {estimate_trigpoly_from_values(true_values, degree, oracle.substream({0})),
            estimate_trigpoly_from_values(true_values, degree, oracle.substream({1}))};
}

std::pair<EstimatedPoly, EstimatedPoly> independent_pair(const std::function<double(double)> &probe_fn, int degree,
                                                         const MeasurementOracle &oracle) {
    const ProbeSchedule schedule = probe_phases(degree);
    std::vector<double> values;
    values.reserve(schedule.phases.size());
    for (double phi : schedule.phases) {
        values.push_back(probe_fn(phi));
    }
    return independent_pair_from_values(values, degree, oracle);
}

}  // namespace phosmo
