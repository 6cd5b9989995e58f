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

#include "phosmo/app/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "phosmo/app/config.hpp"

namespace phosmo::app {

namespace {

constexpr double kWidth = 480.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 56.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string &text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '-':
            // "--" is not allowed inside XML comments.
            out += (!out.empty() && out.back() == '-') ? " -" : "-";
            break;
        default: out += c;
        }
    }
    return out;
}

struct Frame {
    double x_lo, x_hi, y_lo, y_hi;

    double px(double x) const { return kMargin + (x - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin); }
    double py(double y) const { return kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kMargin); }
};

void open_svg(std::ostringstream &out, const std::string &provenance) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<!-- " << escape(provenance) << " -->\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
        << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\" font-family=\"sans-serif\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void axes(std::ostringstream &out, const std::string &x_label, const std::string &y_label) {
    out << "<rect x=\"" << num(kMargin) << "\" y=\"" << num(kMargin) << "\" width=\"" << num(kWidth - 2 * kMargin)
        << "\" height=\"" << num(kHeight - 2 * kMargin) << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(kHeight - 14) << "\" text-anchor=\"middle\" "
        << "font-size=\"13\">" << escape(x_label) << "</text>\n";
    out << "<text x=\"16\" y=\"" << num(kHeight / 2) << "\" text-anchor=\"middle\" font-size=\"13\" "
        << "transform=\"rotate(-90 16 " << num(kHeight / 2) << ")\">" << escape(y_label) << "</text>\n";
}

void y_ticks(std::ostringstream &out, const Frame &f, int count) {
    for (int i = 0; i <= count; ++i) {
        const double y = f.y_lo + (f.y_hi - f.y_lo) * i / count;
        out << "<line x1=\"" << num(kMargin - 4) << "\" y1=\"" << num(f.py(y)) << "\" x2=\"" << num(kMargin)
            << "\" y2=\"" << num(f.py(y)) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(kMargin - 6) << "\" y=\"" << num(f.py(y) + 4)
            << "\" text-anchor=\"end\" font-size=\"11\">" << num(y) << "</text>\n";
    }
}

}  // namespace

std::optional<CircleRule> parse_circle_rule(const std::string &text) {
    CircleRule rule;
    if (std::sscanf(text.c_str(), "circle(center=(%lf,%lf),radius=%lf)", &rule.center_x, &rule.center_y,
                    &rule.radius) == 3) {
        return rule;
    }
    return std::nullopt;
}

std::string regions_svg(const std::vector<PredictionRow> &points, const std::optional<CircleRule> &boundary,
                        std::optional<double> p, const std::string &title, const std::string &provenance) {
    const Frame f{-1.0, 1.0, -1.0, 1.0};
    std::ostringstream out;
    open_svg(out, provenance);
    axes(out, "x1", "x2");
    for (const auto &pt : points) {
        out << "<circle cx=\"" << num(f.px(pt.x1)) << "\" cy=\"" << num(f.py(pt.x2)) << "\" r=\"2.5\" fill=\""
            << (pt.pred ? "#d62728" : "#1f77b4") << "\"/>\n";
    }
    if (boundary) {
        const double scale = (kWidth - 2 * kMargin) / 2.0;
        out << "<ellipse cx=\"" << num(f.px(boundary->center_x)) << "\" cy=\"" << num(f.py(boundary->center_y))
            << "\" rx=\"" << num(boundary->radius * scale) << "\" ry=\"" << num(boundary->radius * scale)
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"34\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
        << "</text>\n";
    char label[48];
    if (p) {
        std::snprintf(label, sizeof label, "P = %.3f", *p);
    } else {
        std::snprintf(label, sizeof label, "P = undefined");
    }
    out << "<text x=\"" << num(kWidth - kMargin - 6) << "\" y=\"" << num(kMargin + 18)
        << "\" text-anchor=\"end\" font-size=\"14\">" << label << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

std::string curve_svg(const std::vector<SummaryRow> &summary, const std::string &provenance) {
    std::vector<SummaryRow> rows;
    for (const auto &s : summary) {
        if (s.count > 0) {
            rows.push_back(s);
        }
    }
    std::sort(rows.begin(), rows.end(), [](const SummaryRow &a, const SummaryRow &b) {
        const auto key = [](int n) { return n == kExactShots ? std::numeric_limits<int>::max() : n; };
        return key(a.n_all) < key(b.n_all);
    });
    double y_lo = 1.0;
    double y_hi = 0.0;
    for (const auto &r : rows) {
        y_lo = std::min(y_lo, r.mean_p - r.std_p);
        y_hi = std::max(y_hi, r.mean_p + r.std_p);
    }
    y_lo = std::max(0.0, std::floor(y_lo * 10.0 - 0.5) / 10.0);
    y_hi = std::min(1.0, std::ceil(y_hi * 10.0 + 0.5) / 10.0);
    if (!(y_lo < y_hi)) {
        y_lo = 0.0;
        y_hi = 1.0;
    }
    const double n = static_cast<double>(std::max<std::size_t>(rows.size(), 1));
    const Frame f{-0.5, n - 0.5, y_lo, y_hi};
    std::ostringstream out;
    open_svg(out, provenance);
    axes(out, "N_all (shots per probe estimate)", "average success probability P");
    y_ticks(out, f, 5);
    std::string path;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto &r = rows[i];
        const double x = f.px(static_cast<double>(i));
        path += (i ? " L " : "M ") + num(x) + ' ' + num(f.py(r.mean_p));
        out << "<line x1=\"" << num(x) << "\" y1=\"" << num(f.py(r.mean_p - r.std_p)) << "\" x2=\"" << num(x)
            << "\" y2=\"" << num(f.py(r.mean_p + r.std_p)) << "\" stroke=\"#444\"/>\n";
        out << "<circle cx=\"" << num(x) << "\" cy=\"" << num(f.py(r.mean_p)) << "\" r=\"4\" fill=\"#1f77b4\"/>\n";
        out << "<text x=\"" << num(x) << "\" y=\"" << num(kHeight - kMargin + 16)
            << "\" text-anchor=\"middle\" font-size=\"11\">" << (r.n_all == kExactShots ? "inf" : n_all_label(r.n_all))
            << "</text>\n";
    }
    if (!path.empty()) {
        out << "<path d=\"" << path << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string trace_svg(const std::vector<TraceEntry> &trace, const std::string &provenance) {
    double y_lo = std::numeric_limits<double>::infinity();
    double y_hi = -std::numeric_limits<double>::infinity();
    for (const auto &t : trace) {
        y_lo = std::min({y_lo, t.exact_cost, t.est_min});
        y_hi = std::max({y_hi, t.exact_cost, t.est_min});
    }
    if (trace.empty() || !(y_lo < y_hi)) {
        y_lo = trace.empty() ? 0.0 : y_lo - 0.5;
        y_hi = trace.empty() ? 1.0 : y_hi + 0.5;
    }
    const double pad = 0.05 * (y_hi - y_lo);
    const Frame f{0.0, static_cast<double>(std::max<std::size_t>(trace.size(), 2) - 1), y_lo - pad, y_hi + pad};
    std::ostringstream out;
    open_svg(out, provenance);
    axes(out, "update", "cost");
    y_ticks(out, f, 5);
    auto polyline = [&](auto value, const char *color) {
        std::string pts;
        for (std::size_t i = 0; i < trace.size(); ++i) {
            pts += num(f.px(static_cast<double>(i))) + ',' + num(f.py(value(trace[i]))) + ' ';
        }
        out << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    };
    polyline([](const TraceEntry &t) { return t.exact_cost; }, "#1f77b4");
    polyline([](const TraceEntry &t) { return t.est_min; }, "#ff7f0e");
    out << "<text x=\"" << num(kWidth - kMargin - 6) << "\" y=\"" << num(kMargin + 18)
        << "\" text-anchor=\"end\" font-size=\"12\" fill=\"#1f77b4\">exact cost</text>\n";
    out << "<text x=\"" << num(kWidth - kMargin - 6) << "\" y=\"" << num(kMargin + 34)
        << "\" text-anchor=\"end\" font-size=\"12\" fill=\"#ff7f0e\">estimated minimum</text>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace phosmo::app
