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

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace phosmo {

/// Degree-n trigonometric polynomial
///   p(phi) = A_0 + sum_{k=1..n} A_{2k-1} cos(k phi) + A_{2k} sin(k phi).
/// The output probability of an n-photon circuit has exactly this form in
/// the phase of any single phase shifter.
struct TrigPoly {
    int degree = 0;
    std::vector<double> coeffs{0.0};  // 2 * degree + 1 entries

    static TrigPoly zero(int degree);
    double operator()(double phase) const;
};

double eval(const TrigPoly &poly, double phase);

/// The 2n+1 probe phases 0, +2pi/(2n+1), -2pi/(2n+1), +4pi/(2n+1), ...
struct ProbeSchedule {
    int degree = 0;
    std::vector<double> phases;
};

ProbeSchedule probe_phases(int degree);

/// Rows are probes, columns the basis functions 1, cos, sin, cos 2, sin 2, ...
/// so that forward_matrix * coeffs = samples.
Eigen::MatrixXd forward_matrix(const ProbeSchedule &schedule);

/// Closed-form inverse of forward_matrix(probe_phases(n)) from the discrete
/// Fourier transform on the equidistant probes:
///   A_0 = 1/(2n+1) sum_j r_j,  A_{2k-1} = 2/(2n+1) sum_j r_j cos(k phi_j),
///   A_{2k} = 2/(2n+1) sum_j r_j sin(k phi_j).
/// Built once per degree and shared.
const Eigen::MatrixXd &inverse_matrix(int degree);

/// Coefficients from samples taken at probe_phases(degree), in the same order.
TrigPoly reconstruct(std::span<const double> samples, int degree);

struct MinimizeOptions {
    int grid_points = 2048;
    double tol = 1e-10;
};

struct Minimum {
    double argmin = 0.0;
    double value = 0.0;
};

/// Global minimum on [lo, hi]: dense grid scan (endpoints included), then
/// golden-section refinement inside the bracket around the best grid point.
/// Ties go to the smallest abscissa. The result is never worse than the best
/// grid value.
Minimum minimize_1d(const std::function<double(double)> &f, double lo, double hi, const MinimizeOptions &opts = {});

}  // namespace phosmo
