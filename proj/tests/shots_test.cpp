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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "phosmo/random.hpp"

using namespace phosmo;

namespace {

constexpr double kPi = std::numbers::pi;

// A degree-2 polynomial with values in [0.05, 0.95] standing in for an
// output probability.
TrigPoly probability_like_poly() {
    TrigPoly p = TrigPoly::zero(2);
    p.coeffs = {0.5, 0.2, -0.1, 0.1, 0.05};
    return p;
}

std::vector<double> probe_values(const TrigPoly &p) {
    std::vector<double> v;
    for (double phi : probe_phases(p.degree).phases) {
        v.push_back(p(phi));
    }
    return v;
}

struct Moments {
    double mean = 0.0;
    double var = 0.0;
};

template <class F>
Moments moments(int trials, F &&draw) {
    double s = 0.0, ss = 0.0;
    for (int t = 0; t < trials; ++t) {
        const double v = draw(t);
        s += v;
        ss += v * v;
    }
    const double mean = s / trials;
    return {mean, (ss - trials * mean * mean) / (trials - 1)};
}

const std::vector<double> kFixedPhases{-3.0, -2.2, -1.4, -0.6, 0.2, 1.0, 1.8, 2.6};

}  // namespace

TEST(DeriveSeed, DistinctKeysGiveDistinctSeeds) {
    EXPECT_NE(derive_seed(1, {0}), derive_seed(1, {1}));
    EXPECT_NE(derive_seed(1, {0, 1}), derive_seed(1, {1, 0}));
    EXPECT_NE(derive_seed(1, {0}), derive_seed(2, {0}));
    EXPECT_EQ(derive_seed(7, {3, 4}), derive_seed(7, {3, 4}));
}

TEST(SampleBinomial, DegenerateProbabilities) {
    RandomStream rng(1);
    for (int n : {1, 10, 100, 5000}) {
        EXPECT_EQ(sample_binomial(n, 0.0, rng), 0);
        EXPECT_EQ(sample_binomial(n, 1.0, rng), n);
    }
    EXPECT_THROW(sample_binomial(10, 1.1, rng), std::domain_error);
    EXPECT_THROW(sample_binomial(10, -0.1, rng), std::domain_error);
}

TEST(SampleBinomial, MomentsMatchBinomialAcrossSamplerPaths) {
    RandomStream rng(2);
    for (int n : {1, 5, 64, 65, 200, 1000, 1001, 3000}) {
        for (double p : {0.02, 0.3, 0.5, 0.85}) {
            const int trials = 20000;
            const Moments m = moments(trials, [&](int) { return static_cast<double>(sample_binomial(n, p, rng)); });
            const double var = n * p * (1 - p);
            EXPECT_NEAR(m.mean, n * p, 5 * std::sqrt(var / trials)) << n << "," << p;
            EXPECT_NEAR(m.var / var, 1.0, 0.06) << n << "," << p;
        }
    }
}

TEST(SampleBinomial, PmfMatchesAtModerateTrialCount) {
    // Chi-square goodness of fit on the CDF-inversion path.
    RandomStream rng(3);
    const int n = 100;
    const double p = 0.3;
    const int draws = 200000;
    std::vector<int> hist(n + 1, 0);
    for (int t = 0; t < draws; ++t) {
        ++hist[sample_binomial(n, p, rng)];
    }
    double chi2 = 0.0;
    int dof = -1;
    double tail_expected = 0.0;
    int tail_observed = 0;
    for (int k = 0; k <= n; ++k) {
        const double pmf = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                                    k * std::log(p) + (n - k) * std::log(1 - p));
        const double expected = pmf * draws;
        if (expected < 20) {
            tail_expected += expected;
            tail_observed += hist[k];
            continue;
        }
        chi2 += (hist[k] - expected) * (hist[k] - expected) / expected;
        ++dof;
    }
    chi2 += (tail_observed - tail_expected) * (tail_observed - tail_expected) / tail_expected;
    ++dof;
    // Mean dof, sd sqrt(2 dof); 5 sd is far outside chance.
    EXPECT_LT(chi2, dof + 5 * std::sqrt(2.0 * dof));
}

TEST(EstimateProbability, ExactOracleReturnsTruth) {
    MeasurementOracle exact = MeasurementOracle::exact();
    EXPECT_DOUBLE_EQ(estimate_probability(0.37, exact), 0.37);
    EXPECT_THROW(estimate_probability(1.5, exact), std::domain_error);
}

TEST(EstimateProbability, SingleShotIsBinaryAndUnbiased) {
    MeasurementOracle oracle = MeasurementOracle::binomial(1, 4);
    const int trials = 100000;
    const Moments m = moments(trials, [&](int) {
        const double r = estimate_probability(0.3, oracle);
        EXPECT_TRUE(r == 0.0 || r == 1.0);
        return r;
    });
    EXPECT_NEAR(m.mean, 0.3, 5 * std::sqrt(0.3 * 0.7 / trials));
}

TEST(EstimateProbability, DegenerateInputsAreExactAtAnyShotCount) {
    for (int shots : {1, 2, 7}) {
        MeasurementOracle oracle = MeasurementOracle::binomial(shots, 5);
        EXPECT_EQ(estimate_probability(0.0, oracle), 0.0);
        EXPECT_EQ(estimate_probability(1.0, oracle), 1.0);
    }
    EXPECT_THROW(MeasurementOracle::binomial(0, 1), std::invalid_argument);
}

TEST(EstimateTrigpoly, CoefficientsAreUnbiased) {
    const TrigPoly truth = probability_like_poly();
    const auto values = probe_values(truth);
    const MeasurementOracle base = MeasurementOracle::binomial(2, 6);
    const int trials = 50000;
    std::vector<double> sum(5, 0.0), sum_sq(5, 0.0);
    for (int t = 0; t < trials; ++t) {
        const EstimatedPoly e = estimate_trigpoly_from_values(values, 2, base.substream({std::uint64_t(t)}));
        EXPECT_EQ(e.shots_used, 10);
        for (int c = 0; c < 5; ++c) {
            sum[c] += e.poly.coeffs[c];
            sum_sq[c] += e.poly.coeffs[c] * e.poly.coeffs[c];
        }
    }
    for (int c = 0; c < 5; ++c) {
        const double mean = sum[c] / trials;
        const double se = std::sqrt((sum_sq[c] / trials - mean * mean) / trials);
        EXPECT_NEAR(mean, truth.coeffs[c], 5 * se) << "coefficient " << c;
    }
}

TEST(EstimateTrigpoly, ExactOracleReproducesPolynomial) {
    const TrigPoly truth = probability_like_poly();
    const EstimatedPoly e = estimate_trigpoly([&](double phi) { return truth(phi); }, 2, MeasurementOracle::exact());
    EXPECT_EQ(e.shots_used, 0);
    for (int c = 0; c < 5; ++c) {
        EXPECT_NEAR(e.poly.coeffs[c], truth.coeffs[c], 1e-15);
    }
}

TEST(IndependentPair, ProductIsUnbiasedForSquare) {
    const TrigPoly truth = probability_like_poly();
    const auto values = probe_values(truth);
    const MeasurementOracle base = MeasurementOracle::binomial(1, 8);
    const int trials = 100000;
    const std::size_t phases = kFixedPhases.size();
    std::vector<double> s(phases, 0.0), ss(phases, 0.0), cov(phases, 0.0);
    for (int t = 0; t < trials; ++t) {
        const auto [a, b] = independent_pair_from_values(values, 2, base.substream({std::uint64_t(t)}));
        for (std::size_t i = 0; i < phases; ++i) {
            const double pa = a.poly(kFixedPhases[i]);
            const double pb = b.poly(kFixedPhases[i]);
            const double prod = pa * pb;
            s[i] += prod;
            ss[i] += prod * prod;
            cov[i] += (pa - truth(kFixedPhases[i])) * (pb - truth(kFixedPhases[i]));
        }
    }
    for (std::size_t i = 0; i < phases; ++i) {
        const double mean = s[i] / trials;
        const double se = std::sqrt((ss[i] / trials - mean * mean) / trials);
        const double p = truth(kFixedPhases[i]);
        EXPECT_NEAR(mean, p * p, 5 * se) << "phi=" << kFixedPhases[i];
        EXPECT_NEAR(cov[i] / trials, 0.0, 5 * se);
    }
}

TEST(IndependentPair, SquareOfSingleBatchIsBiased) {
    // The same-batch square overestimates p^2 by the estimator variance; this
    // is the bias the independent pair removes.
    const TrigPoly truth = probability_like_poly();
    const auto values = probe_values(truth);
    const MeasurementOracle base = MeasurementOracle::binomial(1, 9);
    const int trials = 50000;
    double s = 0.0;
    for (int t = 0; t < trials; ++t) {
        const double v = estimate_trigpoly_from_values(values, 2, base.substream({std::uint64_t(t)})).poly(0.2);
        s += v * v;
    }
    const double p = truth(0.2);
    EXPECT_GT(s / trials - p * p, 0.04);
}

TEST(IndependentPair, ExactModeReturnsIdenticalPolys) {
    const TrigPoly truth = probability_like_poly();
    const auto [a, b] = independent_pair([&](double phi) { return truth(phi); }, 2, MeasurementOracle::exact());
    EXPECT_EQ(a.poly.coeffs, b.poly.coeffs);
}

TEST(EstimateTrigpoly, VarianceScalesInverselyWithShots) {
    const TrigPoly truth = probability_like_poly();
    const auto values = probe_values(truth);
    std::vector<double> log_n, log_var;
    for (int shots : {1, 2, 5, 10, 50, 200}) {
        const MeasurementOracle base = MeasurementOracle::binomial(shots, 10 + shots);
        const int trials = 20000;
        const Moments m = moments(trials, [&](int t) {
            return estimate_trigpoly_from_values(values, 2, base.substream({std::uint64_t(t)})).poly(0.7);
        });
        log_n.push_back(std::log(shots));
        log_var.push_back(std::log(m.var));
    }
    EXPECT_NEAR(phosmo::testing::ols_slope(log_n, log_var), -1.0, 0.1);
}

TEST(EstimateTrigpoly, DeterministicForAFixedSeed) {
    const auto values = probe_values(probability_like_poly());
    const auto a = independent_pair_from_values(values, 2, MeasurementOracle::binomial(3, 99));
    const auto b = independent_pair_from_values(values, 2, MeasurementOracle::binomial(3, 99));
    EXPECT_EQ(a.first.poly.coeffs, b.first.poly.coeffs);
    EXPECT_EQ(a.second.poly.coeffs, b.second.poly.coeffs);
    const auto c = independent_pair_from_values(values, 2, MeasurementOracle::binomial(3, 100));
    EXPECT_NE(a.first.poly.coeffs, c.first.poly.coeffs);
}
