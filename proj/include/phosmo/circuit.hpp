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

#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "phosmo/fock.hpp"

namespace phosmo {

/// Total phase = constant + params[offset_param] + params[scale_param] * x[feature].
struct PhaseExpr {
    std::optional<int> offset_param;
    std::optional<int> scale_param;
    std::optional<int> feature;
    double constant = 0.0;

    bool operator==(const PhaseExpr &) const = default;
};

struct PhaseShifter {
    int mode = 0;
    PhaseExpr expr;
};

struct Beamsplitter {
    int mode_a = 0;
    int mode_b = 1;
    Eigen::Matrix2cd matrix = beamsplitter_5050();
};

using Element = std::variant<PhaseShifter, Beamsplitter>;

using ParameterVector = std::vector<double>;

struct DataPoint {
    std::vector<double> features;
    int label = 0;
};

/// Where a trainable parameter enters the circuit.
struct ParameterSite {
    enum class Role { Offset, Scale };
    std::size_t element = 0;  // index into CircuitSpec::elements()
    Role role = Role::Offset;
    std::optional<int> feature;  // set for Role::Scale
};

/// A validated, immutable passive circuit: input state, element sequence and
/// the measured output occupation.
class CircuitSpec {
  public:
    CircuitSpec(int modes, int photons, std::vector<Element> elements, Eigen::VectorXcd input, Occupation outcome,
                int param_count);

    int modes() const { return sector_->modes(); }
    int photons() const { return sector_->photons(); }
    int param_count() const { return param_count_; }
    const SectorPtr &sector() const { return sector_; }
    const std::vector<Element> &elements() const { return elements_; }
    const StateVector &input() const { return input_; }
    const Occupation &outcome() const { return outcome_; }
    std::size_t outcome_index() const { return outcome_index_; }

    /// Element indices of the phase shifters, in circuit order.
    const std::vector<std::size_t> &shifters() const { return shifters_; }
    const ParameterSite &site(int param) const;

    /// Sector matrix of the beamsplitter at `element` (precomputed).
    const Eigen::MatrixXcd &lifted(std::size_t element) const;

  private:
    SectorPtr sector_;
    std::vector<Element> elements_;
    StateVector input_;
    Occupation outcome_;
    std::size_t outcome_index_ = 0;
    int param_count_ = 0;
    std::vector<std::size_t> shifters_;
    std::vector<ParameterSite> sites_;
    std::vector<std::shared_ptr<const Eigen::MatrixXcd>> lifted_;
};

double phase_of(const PhaseExpr &expr, std::span<const double> params, std::span<const double> features);

/// Concrete phases, one per phase shifter in circuit order.
std::vector<double> bind(const CircuitSpec &spec, std::span<const double> params, const DataPoint &x);

/// Output amplitudes for explicit shifter phases (one per shifter, circuit order).
Eigen::VectorXcd propagate(const CircuitSpec &spec, std::span<const double> phases);

/// Probability of the circuit's measured outcome for explicit shifter phases.
double evaluate_phases(const CircuitSpec &spec, std::span<const double> phases);

double evaluate(const CircuitSpec &spec, std::span<const double> params, const DataPoint &x);

/// As evaluate, with the total phase of the shifter at element `element`
/// replaced by `probe_phase`.
double evaluate_with_probe(const CircuitSpec &spec, std::span<const double> params, const DataPoint &x,
                           std::size_t element, double probe_phase);

/// Position of element `element` among the shifters; throws if it is not one.
std::size_t shifter_ordinal(const CircuitSpec &spec, std::size_t element);

/// Two modes, NOON input (|2,0> + |0,2>)/sqrt 2, outcome |1,1>; phase shifters
/// on mode 0 around a Mach-Zehnder: PS(x1) BS PS(x2) BS PS(x1). Shifter s has
/// offset parameter 2s and scale parameter 2s+1.
CircuitSpec default_reuploading_circuit();

}  // namespace phosmo
