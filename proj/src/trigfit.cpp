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

#include "phosmo/trigfit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace phosmo {

TrigPoly TrigPoly::zero(int degree) {
    if (degree < 0) {
        throw std::invalid_argument("TrigPoly: negative degree");
    }
    return TrigPoly{degree, std::vector<double>(static_cast<std::size_t>(2 * degree + 1), 0.0)};
}

double TrigPoly::operator()(double phase) const {
    double total = coeffs[0];
    if (degree == 0) {
        return total;
    }
    const double c1 = std::cos(phase);
    const double s1 = std::sin(phase);
    double ck = c1;
    double sk = s1;
    for (int k = 1; k <= degree; ++k) {
        total += coeffs[static_cast<std::size_t>(2 * k - 1)] * ck + coeffs[static_cast<std::size_t>(2 * k)] * sk;
        const double next_c = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = next_c;
    }
    return total;
}

double eval(const TrigPoly &poly, double phase) {
    return poly(phase);
}

ProbeSchedule probe_phases(int degree) {
    if (degree < 1) {
        throw std::invalid_argument("probe_phases: degree must be >= 1");
    }
    ProbeSchedule schedule{degree, {}};
    const double step = 2.0 * std::numbers::pi / static_cast<double>(2 * degree + 1);
    schedule.phases.push_back(0.0);
    for (int k = 1; k <= degree; ++k) {
        schedule.phases.push_back(k * step);
        schedule.phases.push_back(-k * step);
    }
    return schedule;
}

Eigen::MatrixXd forward_matrix(const ProbeSchedule &schedule) {
    const int size = 2 * schedule.degree + 1;
    if (static_cast<int>(schedule.phases.size()) != size) {
        throw std::invalid_argument("forward_matrix: schedule has wrong number of phases");
    }
    Eigen::MatrixXd m(size, size);
    for (int j = 0; j < size; ++j) {
        const double phi = schedule.phases[static_cast<std::size_t>(j)];
        m(j, 0) = 1.0;
        for (int k = 1; k <= schedule.degree; ++k) {
            m(j, 2 * k - 1) = std::cos(k * phi);
            m(j, 2 * k) = std::sin(k * phi);
        }
    }
    return m;
}

namespace {

Eigen::MatrixXd build_inverse(int degree) {
    const ProbeSchedule schedule = probe_phases(degree);
    const int size = 2 * degree + 1;
    const double weight = 2.0 / static_cast<double>(size);
    Eigen::MatrixXd inv(size, size);
    for (int j = 0; j < size; ++j) {
        const double phi = schedule.phases[static_cast<std::size_t>(j)];
        inv(0, j) = 1.0 / static_cast<double>(size);
        for (int k = 1; k <= degree; ++k) {
            inv(2 * k - 1, j) = weight * std::cos(k * phi);
            inv(2 * k, j) = weight * std::sin(k * phi);
        }
    }
    return inv;
}

}  // namespace

const Eigen::MatrixXd &inverse_matrix(int degree) {
    if (degree < 1) {
        throw std::invalid_argument("inverse_matrix: degree must be >= 1");
    }
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const Eigen::MatrixXd>> cache;
    std::lock_guard lock(mutex);
    auto &slot = cache[degree];
    if (!slot) {
        slot = std::make_unique<const Eigen::MatrixXd>(build_inverse(degree));
    }
    return *slot;
}

TrigPoly reconstruct(std::span<const double> samples, int degree) {
    const auto size = static_cast<std::size_t>(2 * degree + 1);
    if (degree < 1 || samples.size() != size) {
        throw std::invalid_argument("reconstruct: expected " + std::to_string(size) + " samples for degree " +
                                    std::to_string(degree) + ", got " + std::to_string(samples.size()));
    }
    const Eigen::MatrixXd &inv = inverse_matrix(degree);
    TrigPoly poly = TrigPoly::zero(degree);
    for (std::size_t row = 0; row < size; ++row) {
        double acc = 0.0;
        for (std::size_t col = 0; col < size; ++col) {
            acc += inv(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) * samples[col];
        }
        poly.coeffs[row] = acc;
    }
    return poly;
}

namespace {

double checked(const std::function<double(double)> &f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "minimize_1d: objective is not finite at x = " << x;
        throw std::domain_error(msg.str());
    }
    return v;
}

constexpr std::size_t kMaxRefinedBrackets = 8;

Minimum golden_section(const std::function<double(double)> &f, double a, double b, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = checked(f, c);
    double fd = checked(f, d);
    while (b - a > tol && c < d) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = checked(f, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = checked(f, d);
        }
    }
    return fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
}

}  // namespace

Minimum minimize_1d(const std::function<double(double)> &f, double lo, double hi, const MinimizeOptions &opts) {
    if (!(lo < hi)) {
        throw std::invalid_argument("minimize_1d: need lo < hi");
    }
    if (opts.grid_points < 2) {
        throw std::invalid_argument("minimize_1d: need at least 2 grid points");
    }
    const int g = opts.grid_points;
    auto grid_x = [&](int i) {
        if (i == g - 1) {
            return hi;
        }
        return lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(g - 1));
    };

    std::vector<double> values(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) {
        values[static_cast<std::size_t>(i)] = checked(f, grid_x(i));
    }
    // Strict comparison keeps the smallest abscissa on ties.
    int best = 0;
    for (int i = 1; i < g; ++i) {
        if (values[static_cast<std::size_t>(i)] < values[static_cast<std::size_t>(best)]) {
            best = i;
        }
    }
    Minimum result{grid_x(best), values[static_cast<std::size_t>(best)]};

    // Refine the best bracket, plus any other discrete local minima that are
    // nearly as low: near-degenerate basins can swap order below grid resolution.
    std::vector<int> candidates{best};
    const double span = *std::max_element(values.begin(), values.end()) - result.value;
    for (int i = 0; i < g; ++i) {
        const double v = values[static_cast<std::size_t>(i)];
        const bool left_ok = i == 0 || v <= values[static_cast<std::size_t>(i - 1)];
        const bool right_ok = i == g - 1 || v <= values[static_cast<std::size_t>(i + 1)];
        if (i != best && left_ok && right_ok && v - result.value <= 1e-3 * span) {
            candidates.push_back(i);
        }
    }
    if (candidates.size() > kMaxRefinedBrackets) {
        std::sort(candidates.begin() + 1, candidates.end(), [&](int a, int b) {
            return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)];
        });
        candidates.resize(kMaxRefinedBrackets);
    }
    for (int i : candidates) {
        const Minimum refined = golden_section(f, grid_x(std::max(i - 1, 0)), grid_x(std::min(i + 1, g - 1)), opts.tol);
        if (refined.value < result.value || (refined.value == result.value && refined.argmin < result.argmin)) {
            result = refined;
        }
    }
    return result;
}

}  // namespace phosmo
