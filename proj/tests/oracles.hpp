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

// Independent reference implementations used by the tests. Nothing here calls
// into the library's numerical kernels; each oracle follows a different route
// to the same quantity so that agreement is meaningful.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace phosmo::testing {

using Complex = std::complex<double>;

/// Haar-random unitary from the QR decomposition of a complex Ginibre matrix,
/// with the phases of R's diagonal folded back into Q.
inline Eigen::MatrixXcd haar_unitary(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            g(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

inline double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) {
        f *= i;
    }
    return f;
}

/// Output state of a mode unitary applied to the occupation `in`, computed by
/// expanding prod_j (sum_i U(i,j) a_i^dag)^{in_j} |0> as a polynomial in the
/// creation operators. Keys are output occupations, values are amplitudes.
inline std::map<std::vector<int>, Complex> creation_polynomial_image(const Eigen::MatrixXcd &u,
                                                                     const std::vector<int> &in) {
    const int m = static_cast<int>(in.size());
    std::map<std::vector<int>, Complex> poly{{std::vector<int>(m, 0), Complex(1.0)}};
    double norm_in = 1.0;
    for (int j = 0; j < m; ++j) {
        norm_in *= factorial(in[j]);
        for (int rep = 0; rep < in[j]; ++rep) {
            std::map<std::vector<int>, Complex> next;
            for (const auto &[mono, c] : poly) {
                for (int i = 0; i < m; ++i) {
                    auto grown = mono;
                    ++grown[i];
                    next[grown] += c * u(i, j);
                }
            }
            poly = std::move(next);
        }
    }
    std::map<std::vector<int>, Complex> out;
    for (const auto &[mono, c] : poly) {
        double norm_out = 1.0;
        for (int k : mono) {
            norm_out *= factorial(k);
        }
        out[mono] = c * std::sqrt(norm_out / norm_in);
    }
    return out;
}

/// Permanent by brute-force enumeration of all permutations.
inline Complex brute_force_permanent(const Eigen::MatrixXcd &a) {
    const int n = static_cast<int>(a.rows());
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) {
        perm[i] = i;
    }
    Complex total = 0.0;
    do {
        Complex term = 1.0;
        for (int i = 0; i < n; ++i) {
            term *= a(i, perm[i]);
        }
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Least-squares fit of a degree-n trigonometric polynomial to samples at
/// arbitrary phases, solved with a QR factorisation of the design matrix.
inline std::vector<double> fit_trig_least_squares(const std::vector<double> &phases,
                                                  const std::vector<double> &values, int degree) {
    const int rows = static_cast<int>(phases.size());
    Eigen::MatrixXd design(rows, 2 * degree + 1);
    Eigen::VectorXd rhs(rows);
    for (int r = 0; r < rows; ++r) {
        design(r, 0) = 1.0;
        for (int k = 1; k <= degree; ++k) {
            design(r, 2 * k - 1) = std::cos(k * phases[r]);
            design(r, 2 * k) = std::sin(k * phases[r]);
        }
        rhs(r) = values[r];
    }
    const Eigen::VectorXd x = design.colPivHouseholderQr().solve(rhs);
    return {x.data(), x.data() + x.size()};
}

inline double trig_value(const std::vector<double> &coeffs, double phase) {
    double v = coeffs[0];
    const int degree = static_cast<int>(coeffs.size() - 1) / 2;
    for (int k = 1; k <= degree; ++k) {
        v += coeffs[2 * k - 1] * std::cos(k * phase) + coeffs[2 * k] * std::sin(k * phase);
    }
    return v;
}

/// Ordinary least-squares slope of y on x.
inline double ols_slope(const std::vector<double> &x, const std::vector<double> &y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace phosmo::testing
