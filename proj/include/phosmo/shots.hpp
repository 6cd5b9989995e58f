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
#include <initializer_list>
#include <span>
#include <utility>

#include "phosmo/random.hpp"
#include "phosmo/trigfit.hpp"

namespace phosmo {

/// Source of probability estimates: either the exact value or the success
/// frequency N_success / N_all of N_all simulated shots.
///
/// An oracle owns a random stream and is not meant to be shared between
/// concurrent tasks; hand each task its own substream() instead.
class MeasurementOracle {
  public:
    enum class Kind { Exact, Binomial };

    static MeasurementOracle exact();
    static MeasurementOracle binomial(int shots, std::uint64_t seed);

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ == Kind::Exact; }
    /// N_all; 0 for the exact oracle.
    int shots() const { return shots_; }
    std::uint64_t seed() const { return stream_.seed(); }
    RandomStream &stream() { return stream_; }

    /// Same kind and shot count, with a stream keyed by `key` under this one.
    MeasurementOracle substream(std::initializer_list<std::uint64_t> key) const;

  private:
    MeasurementOracle(Kind kind, int shots, std::uint64_t seed) : kind_(kind), shots_(shots), stream_(seed) {}

    Kind kind_;
    int shots_;
    RandomStream stream_;
};

/// Exact Binomial(trials, p) draw: Bernoulli summation up to 64 trials, CDF
/// inversion above.
int sample_binomial(int trials, double p, RandomStream &rng);

/// Exact: p_true. Binomial: N_success / N_all. Never clamped.
double estimate_probability(double p_true, MeasurementOracle &oracle);

struct EstimatedPoly {
    TrigPoly poly;
    std::int64_t shots_used = 0;
};

/// Estimates the probe values in schedule order from one copy of `oracle`'s
/// stream and reconstructs the polynomial. `true_values` are the exact probabilities at
/// probe_phases(degree).
EstimatedPoly estimate_trigpoly_from_values(std::span<const double> true_values, int degree,
                                            const MeasurementOracle &oracle);

EstimatedPoly estimate_trigpoly(const std::function<double(double)> &probe_fn, int degree,
                                const MeasurementOracle &oracle);

/// Two estimates from disjoint shot batches (keys 0 and 1 under `oracle`).
std::pair<EstimatedPoly, EstimatedPoly> independent_pair_from_values(std::span<const double> true_values, int degree,
                                                                     const MeasurementOracle &oracle);

std::pair<EstimatedPoly, EstimatedPoly> independent_pair(const std::function<double(double)> &probe_fn, int degree,
                                                         const MeasurementOracle &oracle);

}  // namespace phosmo
