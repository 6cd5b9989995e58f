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

#include <optional>
#include <string>
#include <vector>

#include "phosmo/app/results.hpp"
#include "phosmo/classifier.hpp"

namespace phosmo::app {

/// Test points on [-1, 1]^2 colored by predicted class, the true class
/// boundary as an outline and "P = x.xxx" in the upper right corner.
std::string regions_svg(const std::vector<PredictionRow> &points, const std::optional<CircleRule> &boundary,
                        std::optional<double> p, const std::string &title, const std::string &provenance);

/// Mean P per N_all with standard deviation bars. Categories are ordered by
/// increasing shot count; exact training is the rightmost category ("inf").
std::string curve_svg(const std::vector<SummaryRow> &summary, const std::string &provenance);

/// Exact cost and estimated minimum per update.
std::string trace_svg(const std::vector<TraceEntry> &trace, const std::string &provenance);

/// Parses "circle(center=(cx,cy),radius=r)" as written by describe(LabelRule).
std::optional<CircleRule> parse_circle_rule(const std::string &text);

}  // namespace phosmo::app
