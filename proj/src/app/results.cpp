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

#include "phosmo/app/results.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "phosmo/app/config.hpp"

namespace phosmo::app {

namespace {

std::string opt(const std::optional<double> &v) {
    return v ? format_double(*v) : "undefined";
}

[[noreturn]] void malformed(std::size_t row, const std::string &why) {
    throw std::runtime_error("malformed results file, data row " + std::to_string(row + 1) + ": " + why);
}

double parse_double(std::size_t row, const std::string &s) {
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        malformed(row, "'" + s + "' is not a number");
    }
    return v;
}

std::int64_t parse_int(std::size_t row, const std::string &s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        malformed(row, "'" + s + "' is not an integer");
    }
    return v;
}

std::optional<double> parse_opt(std::size_t row, const std::string &s) {
    if (s == "undefined") {
        return std::nullopt;
    }
    return parse_double(row, s);
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string meta_line(const FileMeta &meta) {
    return std::string("# tool=") + kToolName + " version=" + kToolVersion +
           " master_seed=" + std::to_string(meta.master_seed) + " config_hash=" + meta.config_hash +
           " rule=" + meta.rule;
}

int parse_n_all(std::string_view text) {
    if (text == "exact" || text == "inf") {
        return kExactShots;
    }
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || v < 1) {
        throw std::runtime_error("malformed n_all value '" + std::string(text) + "'");
    }
    return v;
}

ResultRow to_row(const SweepCell &cell) {
    ResultRow r;
    r.n_all = cell.n_all;
    r.seed = cell.seed;
    r.final_cost = cell.final_cost;
    r.tp = cell.metrics.tp;
    r.fp = cell.metrics.fp;
    r.tn = cell.metrics.tn;
    r.fn = cell.metrics.fn;
    r.tpr = cell.metrics.tpr;
    r.tnr = cell.metrics.tnr;
    r.p = cell.metrics.p;
    r.shots = cell.state.shots;
    r.threshold = cell.threshold;
    r.wall_seconds = cell.wall_seconds;
    return r;
}

std::string results_csv(const std::vector<ResultRow> &rows, const FileMeta &meta) {
    std::ostringstream out;
    out << meta_line(meta) << "\n" << kResultsHeader << "\n";
    for (const auto &r : rows) {
        out << n_all_label(r.n_all) << ',' << r.seed << ',' << format_double(r.final_cost) << ',' << r.tp << ','
            << r.fp << ',' << r.tn << ',' << r.fn << ',' << opt(r.tpr) << ',' << opt(r.tnr) << ',' << opt(r.p) << ','
            << r.shots << ',' << format_double(r.threshold) << "\n";
    }
    return out.str();
}

std::string timings_csv(const std::vector<ResultRow> &rows, const FileMeta &meta) {
    std::ostringstream out;
    out << meta_line(meta) << "\nn_all,seed,wall_seconds\n";
    for (const auto &r : rows) {
        out << n_all_label(r.n_all) << ',' << r.seed << ',' << format_double(r.wall_seconds) << "\n";
    }
    return out.str();
}

std::string trace_csv(const std::vector<TraceEntry> &trace, const FileMeta &meta) {
    std::ostringstream out;
    out << meta_line(meta) << "\n" << kTraceHeader << "\n";
    for (const auto &t : trace) {
        out << t.round << ',' << t.param << ',' << format_double(t.theta) << ',' << format_double(t.est_min) << ','
            << format_double(t.exact_cost) << ',' << t.cum_shots << "\n";
    }
    return out.str();
}

std::string predictions_csv(const std::vector<PredictionRow> &rows, const FileMeta &meta) {
    std::ostringstream out;
    out << meta_line(meta) << "\n" << kPredictionsHeader << "\n";
    for (const auto &r : rows) {
        out << n_all_label(r.n_all) << ',' << format_double(r.x1) << ',' << format_double(r.x2) << ',' << r.label
            << ',' << r.pred << "\n";
    }
    return out.str();
}

CsvTable read_csv(std::string_view text, std::string_view expected_header) {
    CsvTable table;
    std::istringstream in{std::string(text)};
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            table.comments.push_back(line);
            continue;
        }
        if (!header_seen) {
            if (line != expected_header) {
                throw std::runtime_error("malformed results file: expected header '" + std::string(expected_header) +
                                         "', found '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        table.rows.push_back(std::move(fields));
    }
    if (!header_seen) {
        throw std::runtime_error("malformed results file: missing header '" + std::string(expected_header) + "'");
    }
    return table;
}

std::vector<ResultRow> parse_results(const CsvTable &table) {
    std::vector<ResultRow> rows;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto &f = table.rows[i];
        if (f.size() != 12) {
            malformed(i, "expected 12 fields, found " + std::to_string(f.size()));
        }
        ResultRow r;
        try {
            r.n_all = parse_n_all(f[0]);
        } catch (const std::runtime_error &ex) {
            malformed(i, ex.what());
        }
        r.seed = static_cast<std::uint64_t>(parse_int(i, f[1]));
        r.final_cost = parse_double(i, f[2]);
        r.tp = parse_int(i, f[3]);
        r.fp = parse_int(i, f[4]);
        r.tn = parse_int(i, f[5]);
        r.fn = parse_int(i, f[6]);
        r.tpr = parse_opt(i, f[7]);
        r.tnr = parse_opt(i, f[8]);
        r.p = parse_opt(i, f[9]);
        r.shots = parse_int(i, f[10]);
        r.threshold = parse_double(i, f[11]);
        rows.push_back(r);
    }
    return rows;
}

std::vector<TraceEntry> parse_trace(const CsvTable &table) {
    std::vector<TraceEntry> trace;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto &f = table.rows[i];
        if (f.size() != 6) {
            malformed(i, "expected 6 fields, found " + std::to_string(f.size()));
        }
        trace.push_back(TraceEntry{static_cast<int>(parse_int(i, f[0])), static_cast<int>(parse_int(i, f[1])),
                                   parse_double(i, f[2]), parse_double(i, f[3]), parse_double(i, f[4]),
                                   parse_int(i, f[5])});
    }
    return trace;
}

std::vector<PredictionRow> parse_predictions(const CsvTable &table) {
    std::vector<PredictionRow> rows;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto &f = table.rows[i];
        if (f.size() != 5) {
            malformed(i, "expected 5 fields, found " + std::to_string(f.size()));
        }
        PredictionRow r;
        try {
            r.n_all = parse_n_all(f[0]);
        } catch (const std::runtime_error &ex) {
            malformed(i, ex.what());
        }
        r.x1 = parse_double(i, f[1]);
        r.x2 = parse_double(i, f[2]);
        r.label = static_cast<int>(parse_int(i, f[3]));
        r.pred = static_cast<int>(parse_int(i, f[4]));
        rows.push_back(r);
    }
    return rows;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow> &rows) {
    std::vector<SummaryRow> out;
    std::vector<std::vector<double>> values;
    for (const auto &r : rows) {
        std::size_t k = 0;
        while (k < out.size() && out[k].n_all != r.n_all) {
            ++k;
        }
        if (k == out.size()) {
            out.push_back(SummaryRow{r.n_all, 0, 0.0, 0.0});
            values.emplace_back();
        }
        if (r.p) {
            values[k].push_back(*r.p);
        }
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        const auto &v = values[k];
        out[k].count = v.size();
        if (v.empty()) {
            out[k].mean_p = std::nan("");
            continue;
        }
        double sum = 0.0;
        for (double x : v) {
            sum += x;
        }
        const double mean = sum / static_cast<double>(v.size());
        double sq = 0.0;
        for (double x : v) {
            sq += (x - mean) * (x - mean);
        }
        out[k].mean_p = mean;
        out[k].std_p = v.size() > 1 ? std::sqrt(sq / static_cast<double>(v.size() - 1)) : 0.0;
    }
    return out;
}

nlohmann::json summary_json(const std::vector<SummaryRow> &summary, const FileMeta &meta) {
    nlohmann::json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["master_seed"] = meta.master_seed;
    doc["config_hash"] = meta.config_hash;
    doc["rule"] = meta.rule;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &s : summary) {
        nlohmann::json row;
        row["n_all"] = n_all_label(s.n_all);
        row["count"] = s.count;
        row["mean_p"] = s.count ? nlohmann::json(s.mean_p) : nlohmann::json(nullptr);
        row["std_p"] = s.std_p;
        rows.push_back(row);
    }
    doc["per_n_all"] = rows;
    return doc;
}

std::optional<std::string> meta_value(const std::vector<std::string> &comments, std::string_view key) {
    const std::string needle = " " + std::string(key) + "=";
    for (const auto &line : comments) {
        const auto pos = line.find(needle);
        if (pos == std::string::npos) {
            continue;
        }
        const auto start = pos + needle.size();
        const auto end = line.find(' ', start);
        return line.substr(start, end == std::string::npos ? std::string::npos : end - start);
    }
    return std::nullopt;
}

}  // namespace phosmo::app
