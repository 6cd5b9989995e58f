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

#include "phosmo/circuit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace phosmo {

namespace {

void check_mode(int mode, int modes, const std::string &what) {
    if (mode < 0 || mode >= modes) {
        throw std::invalid_argument(what + ": mode " + std::to_string(mode) + " out of range for " +
                                    std::to_string(modes) + " modes");
    }
}

}  // namespace

CircuitSpec::CircuitSpec(int modes, int photons, std::vector<Element> elements, Eigen::VectorXcd input,
                         Occupation outcome, int param_count)
    : sector_(sector_basis(modes, photons)),
      elements_(std::move(elements)),
      input_(sector_, std::move(input)),
      outcome_(std::move(outcome)),
      param_count_(param_count) {
    if (param_count_ < 0) {
        throw std::invalid_argument("CircuitSpec: negative parameter count");
    }
    if (!input_.is_normalized(1e-12)) {
        throw std::invalid_argument("CircuitSpec: input state is not normalized");
    }
    outcome_index_ = sector_->require_index(outcome_);

    std::vector<int> uses(static_cast<std::size_t>(param_count_), 0);
    sites_.resize(static_cast<std::size_t>(param_count_));
    lifted_.resize(elements_.size());
    auto claim = [&](int param, ParameterSite site) {
        if (param < 0 || param >= param_count_) {
            throw std::invalid_argument("CircuitSpec: parameter index " + std::to_string(param) +
                                        " outside [0, " + std::to_string(param_count_) + ")");
        }
        if (++uses[static_cast<std::size_t>(param)] > 1) {
            throw std::invalid_argument("CircuitSpec: parameter " + std::to_string(param) +
                                        " appears in more than one phase expression slot");
        }
        sites_[static_cast<std::size_t>(param)] = site;
    };

    for (std::size_t e = 0; e < elements_.size(); ++e) {
        if (const auto *ps = std::get_if<PhaseShifter>(&elements_[e])) {
            check_mode(ps->mode, modes, "phase shifter");
            if (!std::isfinite(ps->expr.constant)) {
                throw std::invalid_argument("CircuitSpec: non-finite phase constant");
            }
            if (ps->expr.scale_param && !ps->expr.feature) {
                throw std::invalid_argument("CircuitSpec: scale parameter without a data feature");
            }
            if (ps->expr.feature && *ps->expr.feature < 0) {
                throw std::invalid_argument("CircuitSpec: negative feature index");
            }
            shifters_.push_back(e);
            if (ps->expr.offset_param) {
                claim(*ps->expr.offset_param, {e, ParameterSite::Role::Offset, std::nullopt});
            }
            if (ps->expr.scale_param) {
                claim(*ps->expr.scale_param, {e, ParameterSite::Role::Scale, ps->expr.feature});
            }
        } else {
            const auto &bs = std::get<Beamsplitter>(elements_[e]);
            check_mode(bs.mode_a, modes, "beamsplitter");
            check_mode(bs.mode_b, modes, "beamsplitter");
            if (bs.mode_a == bs.mode_b) {
                throw std::invalid_argument("CircuitSpec: beamsplitter modes must differ");
            }
            ModeUnitary u = ModeUnitary::embed(modes, bs.mode_a, bs.mode_b, bs.matrix);
            lifted_[e] = std::make_shared<const Eigen::MatrixXcd>(lift_mode_unitary(u, *sector_));
        }
    }
    for (int p = 0; p < param_count_; ++p) {
        if (uses[static_cast<std::size_t>(p)] == 0) {
            throw std::invalid_argument("CircuitSpec: parameter " + std::to_string(p) +
                                        " does not appear in any phase expression");
        }
    }
}

const ParameterSite &CircuitSpec::site(int param) const {
    if (param < 0 || param >= param_count_) {
        throw std::out_of_range("parameter " + std::to_string(param) + " not found in any shifter");
    }
    return sites_[static_cast<std::size_t>(param)];
}

const Eigen::MatrixXcd &CircuitSpec::lifted(std::size_t element) const {
    if (element >= lifted_.size() || !lifted_[element]) {
        throw std::out_of_range("element " + std::to_string(element) + " is not a beamsplitter");
    }
    return *lifted_[element];
}

double phase_of(const PhaseExpr &expr, std::span<const double> params, std::span<const double> features) {
    double phase = expr.constant;
    if (expr.offset_param) {
        phase += params[static_cast<std::size_t>(*expr.offset_param)];
    }
    if (expr.scale_param) {
        const auto f = static_cast<std::size_t>(*expr.feature);
        if (f >= features.size()) {
            throw std::out_of_range("feature index " + std::to_string(f) + " out of range for a " +
                                    std::to_string(features.size()) + "-dimensional data point");
        }
        phase += params[static_cast<std::size_t>(*expr.scale_param)] * features[f];
    }
    return phase;
}

std::vector<double> bind(const CircuitSpec &spec, std::span<const double> params, const DataPoint &x) {
    if (static_cast<int>(params.size()) != spec.param_count()) {
        throw std::invalid_argument("bind: expected " + std::to_string(spec.param_count()) + " parameters, got " +
                                    std::to_string(params.size()));
    }
    std::vector<double> phases;
    phases.reserve(spec.shifters().size());
    for (std::size_t e : spec.shifters()) {
        phases.push_back(phase_of(std::get<PhaseShifter>(spec.elements()[e]).expr, params, x.features));
    }
    return phases;
}

Eigen::VectorXcd propagate(const CircuitSpec &spec, std::span<const double> phases) {
    if (phases.size() != spec.shifters().size()) {
        throw std::invalid_argument("propagate: expected one phase per shifter");
    }
    Eigen::VectorXcd amps = spec.input().amplitudes();
    std::size_t next_phase = 0;
    for (std::size_t e = 0; e < spec.elements().size(); ++e) {
        if (const auto *ps = std::get_if<PhaseShifter>(&spec.elements()[e])) {
            apply_phase_shifter_inplace(*spec.sector(), amps, ps->mode, phases[next_phase++]);
        } else {
            amps = spec.lifted(e) * amps;
        }
    }
    return amps;
}

double evaluate_phases(const CircuitSpec &spec, std::span<const double> phases) {
    for (double phi : phases) {
        if (!std::isfinite(phi)) {
            throw std::invalid_argument("evaluate: non-finite bound phase");
        }
    }
    const Eigen::VectorXcd amps = propagate(spec, phases);
    return std::norm(amps(static_cast<Eigen::Index>(spec.outcome_index())));
}

double evaluate(const CircuitSpec &spec, std::span<const double> params, const DataPoint &x) {
    return evaluate_phases(spec, phosmo::bind(spec, params, x));
}

std::size_t shifter_ordinal(const CircuitSpec &spec, std::size_t element) {
    const auto &shifters = spec.shifters();
    for (std::size_t s = 0; s < shifters.size(); ++s) {
        if (shifters[s] == element) {
            return s;
        }
    }
    throw std::invalid_argument("element " + std::to_string(element) + " is not a phase shifter");
}

double evaluate_with_probe(const CircuitSpec &spec, std::span<const double> params, const DataPoint &x,
                           std::size_t element, double probe_phase) {
    const std::size_t ordinal = shifter_ordinal(spec, element);
    std::vector<double> phases = phosmo::bind(spec, params, x);
    phases[ordinal] = probe_phase;
    return evaluate_phases(spec, phases);
}

CircuitSpec default_reuploading_circuit() {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::VectorXcd noon(3);
    noon << s, 0.0, s;  // basis (2,0), (1,1), (0,2)
    auto shifter = [](int offset, int scale, int feature) {
        return PhaseShifter{0, PhaseExpr{offset, scale, feature, 0.0}};
    };
    std::vector<Element> elements{
        shifter(0, 1, 0), Beamsplitter{}, shifter(2, 3, 1), Beamsplitter{}, shifter(4, 5, 0),
    };
    return CircuitSpec(2, 2, std::move(elements), std::move(noon), Occupation{{1, 1}}, 6);
}

}  // namespace phosmo
