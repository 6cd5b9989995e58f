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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "phosmo/classifier.hpp"
#include "phosmo/smo.hpp"

namespace phosmo::app {

/// Provenance stamped into every output file.
struct FileMeta {
    std::uint64_t master_seed = 0;
    std::string config_hash;
    std::string rule;  // describe(LabelRule)
};

/// `# tool=phosmo version=... master_seed=... config_hash=... rule=...`
std::string meta_line(const FileMeta &meta);

std::string format_double(double v);

/// One row of results.csv; columns
///   n_all,seed,final_cost,tp,fp,tn,fn,tpr,tnr,p,shots,threshold
/// with n_all written as "exact" for exact training and undefined ratios as
/// "undefined".
struct ResultRow {
    int n_all = kExactShots;
    std::uint64_t seed = 0;
    double final_cost = 0.0;
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;
    std::optional<double> tpr;
    std::optional<double> tnr;
    std::optional<double> p;
    std::int64_t shots = 0;
    double threshold = 0.5;
    double wall_seconds = 0.0;  // timings.csv only
};

inline constexpr std::string_view kResultsHeader = "n_all,seed,final_cost,tp,fp,tn,fn,tpr,tnr,p,shots,threshold";
inline constexpr std::string_view kTraceHeader = "round,param_index,theta,est_min,exact_cost,cum_shots";
inline constexpr std::string_view kPredictionsHeader = "n_all,x1,x2,label,pred";

ResultRow to_row(const SweepCell &cell);

std::string results_csv(const std::vector<ResultRow> &rows, const FileMeta &meta);
std::string timings_csv(const std::vector<ResultRow> &rows, const FileMeta &meta);
std::string trace_csv(const std::vector<TraceEntry> &trace, const FileMeta &meta);

/// Parsed CSV: `#` lines kept verbatim, data rows split on commas. Throws
/// std::runtime_error when the header does not match.
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::vector<std::string>> rows;
};
CsvTable read_csv(std::string_view text, std::string_view expected_header);

std::vector<ResultRow> parse_results(const CsvTable &table);
std::vector<TraceEntry> parse_trace(const CsvTable &table);

struct PredictionRow {
    int n_all = kExactShots;
    double x1 = 0.0;
    double x2 = 0.0;
    int label = 0;
    int pred = 0;
};
std::vector<PredictionRow> parse_predictions(const CsvTable &table);
std::string predictions_csv(const std::vector<PredictionRow> &rows, const FileMeta &meta);

struct SummaryRow {
    int n_all = kExactShots;
    std::size_t count = 0;  // rows with a defined P
    double mean_p = 0.0;
    double std_p = 0.0;  // sample standard deviation, 0 for a single row
};

/// Per-N_all mean and standard deviation of P, in first-appearance order.
std::vector<SummaryRow> summarize(const std::vector<ResultRow> &rows);
nlohmann::json summary_json(const std::vector<SummaryRow> &summary, const FileMeta &meta);

/// Value of `key=` in the metadata comment lines, if present.
std::optional<std::string> meta_value(const std::vector<std::string> &comments, std::string_view key);

int parse_n_all(std::string_view text);

}  // namespace phosmo::app
