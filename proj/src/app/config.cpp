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

#include "phosmo/app/config.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "phosmo/app/circuit_io.hpp"

namespace phosmo::app {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

struct Entry {
    int line = 0;
    std::string value;
};

[[noreturn]] void fail(const std::string &key, const Entry &entry, const std::string &why) {
    throw ConfigError("config line " + std::to_string(entry.line) + ": " + key + ": " + why);
}

double to_double(const std::string &key, const Entry &e, const std::string &text) {
    if (text.empty()) {
        fail(key, e, "expected a number");
    }
    char *end = nullptr;
    errno = 0;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || errno == ERANGE) {
        fail(key, e, "'" + text + "' is not a number");
    }
    return v;
}

std::int64_t to_int(const std::string &key, const Entry &e, const std::string &text) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        fail(key, e, "'" + text + "' is not an integer");
    }
    return v;
}

bool to_bool(const std::string &key, const Entry &e) {
    if (e.value == "true") {
        return true;
    }
    if (e.value == "false") {
        return false;
    }
    fail(key, e, "expected true or false");
}

std::vector<std::string> to_list(const std::string &key, const Entry &e) {
    if (e.value.size() < 2 || e.value.front() != '[' || e.value.back() != ']') {
        fail(key, e, "expected a [bracketed, list]");
    }
    std::vector<std::string> items;
    const std::string inner = e.value.substr(1, e.value.size() - 2);
    if (trim(inner).empty()) {
        return items;
    }
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
        items.push_back(trim(item));
    }
    return items;
}

std::vector<std::int64_t> to_int_list(const std::string &key, const Entry &e) {
    std::vector<std::int64_t> out;
    for (const auto &item : to_list(key, e)) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(key, e, item));
            continue;
        }
        const auto lo = to_int(key, e, trim(item.substr(0, dots)));
        const auto hi = to_int(key, e, trim(item.substr(dots + 2)));
        if (hi < lo || hi - lo > 1'000'000) {
            fail(key, e, "bad range '" + item + "'");
        }
        for (auto v = lo; v <= hi; ++v) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<double> to_double_list(const std::string &key, const Entry &e, std::size_t expected) {
    std::vector<double> out;
    for (const auto &item : to_list(key, e)) {
        out.push_back(to_double(key, e, item));
    }
    if (out.size() != expected) {
        fail(key, e, "expected " + std::to_string(expected) + " numbers");
    }
    return out;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string n_all_label(int n_all) {
    return n_all == kExactShots ? "exact" : std::to_string(n_all);
}

RunConfig parse_config(std::string_view text) {
    std::map<std::string, Entry> entries;
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        if (trim(line).empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(number) + ": expected 'key = value'");
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (!entries.emplace(key, Entry{number, value}).second) {
            throw ConfigError("config line " + std::to_string(number) + ": duplicate key " + key);
        }
    }

    RunConfig c;
    for (const auto &[key, e] : entries) {
        if (key == "circuit") {
            c.circuit = e.value;
        } else if (key == "dataset.rule") {
            c.rule = e.value;
        } else if (key == "dataset.center") {
            const auto v = to_double_list(key, e, 2);
            c.center_x = v[0];
            c.center_y = v[1];
        } else if (key == "dataset.radius") {
            c.radius = to_double(key, e, e.value);
        } else if (key == "dataset.n") {
            c.train_size = to_int(key, e, e.value);
        } else if (key == "dataset.test_n") {
            c.test_size = to_int(key, e, e.value);
        } else if (key == "seed") {
            const auto v = to_int(key, e, e.value);
            if (v < 0) {
                fail(key, e, "seed must be non-negative");
            }
            c.master_seed = static_cast<std::uint64_t>(v);
        } else if (key == "seeds") {
            c.seeds.clear();
            for (auto v : to_int_list(key, e)) {
                if (v < 0) {
                    fail(key, e, "seeds must be non-negative");
                }
                c.seeds.push_back(static_cast<std::uint64_t>(v));
            }
        } else if (key == "train.rounds") {
            c.rounds = static_cast<int>(to_int(key, e, e.value));
        } else if (key == "train.n_all") {
            c.n_all.clear();
            for (const auto &item : to_list(key, e)) {
                if (item == "exact" || item == "inf") {
                    c.n_all.push_back(kExactShots);
                } else {
                    const auto v = to_int(key, e, item);
                    if (v < 1 || v > 1'000'000) {
                        fail(key, e, "shot counts must be in [1, 1000000] (use 'exact' for exact probabilities)");
                    }
                    c.n_all.push_back(static_cast<int>(v));
                }
            }
        } else if (key == "train.scale_interval") {
            const auto v = to_double_list(key, e, 2);
            c.scale_lo = v[0];
            c.scale_hi = v[1];
        } else if (key == "train.grid_points") {
            c.grid_points = static_cast<int>(to_int(key, e, e.value));
        } else if (key == "train.tol") {
            c.tol = to_double(key, e, e.value);
        } else if (key == "train.order") {
            c.order.clear();
            if (e.value != "natural") {
                for (auto v : to_int_list(key, e)) {
                    c.order.push_back(static_cast<int>(v));
                }
            }
        } else if (key == "train.min_improvement") {
            c.min_improvement = to_double(key, e, e.value);
        } else if (key == "classify.threshold") {
            c.threshold = to_double(key, e, e.value);
        } else if (key == "classify.calibrate") {
            c.calibrate = to_bool(key, e);
        } else if (key == "output.dir") {
            c.out_dir = e.value;
        } else if (key == "output.plot") {
            c.plot = to_bool(key, e);
        } else if (key == "threads") {
            c.threads = static_cast<int>(to_int(key, e, e.value));
        } else {
            fail(key, e, "unknown key");
        }
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

void validate(const RunConfig &c) {
    auto require = [](bool ok, const std::string &what) {
        if (!ok) {
            throw ConfigError("invalid config: " + what);
        }
    };
    require(!c.circuit.empty(), "circuit must be 'default' or a path");
    require(c.rule == "circle", "dataset.rule must be 'circle'");
    require(c.radius > 0.0, "dataset.radius must be positive");
    require(c.train_size >= 0, "dataset.n must be >= 0");
    require(c.test_size >= 1, "dataset.test_n must be >= 1");
    require(!c.seeds.empty(), "seeds must not be empty");
    require(c.rounds >= 0, "train.rounds must be >= 0");
    require(!c.n_all.empty(), "train.n_all must not be empty");
    require(c.scale_lo < c.scale_hi, "train.scale_interval must satisfy lo < hi");
    require(c.grid_points >= 2, "train.grid_points must be >= 2");
    require(c.tol > 0.0, "train.tol must be positive");
    require(c.min_improvement >= 0.0, "train.min_improvement must be >= 0");
    require(c.threshold > 0.0 && c.threshold < 1.0, "classify.threshold must lie in (0, 1)");
    require(!c.out_dir.empty(), "output.dir must not be empty");
    require(c.threads >= 0, "threads must be >= 0 (0 = all cores)");
    std::set<std::uint64_t> seen(c.seeds.begin(), c.seeds.end());
    require(seen.size() == c.seeds.size(), "seeds must be distinct");
    std::set<int> shots(c.n_all.begin(), c.n_all.end());
    require(shots.size() == c.n_all.size(), "train.n_all entries must be distinct");
}

std::string serialize_config(const RunConfig &c) {
    std::ostringstream out;
    auto join_ints = [](const auto &values) {
        std::string s = "[";
        for (std::size_t i = 0; i < values.size(); ++i) {
            s += (i ? ", " : "") + std::to_string(values[i]);
        }
        return s + "]";
    };
    out << "circuit = " << c.circuit << "\n";
    out << "dataset.rule = " << c.rule << "\n";
    out << "dataset.center = [" << fmt_double(c.center_x) << ", " << fmt_double(c.center_y) << "]\n";
    out << "dataset.radius = " << fmt_double(c.radius) << "\n";
    out << "dataset.n = " << c.train_size << "\n";
    out << "dataset.test_n = " << c.test_size << "\n";
    out << "seed = " << c.master_seed << "\n";
    out << "seeds = " << join_ints(c.seeds) << "\n";
    out << "train.rounds = " << c.rounds << "\n";
    out << "train.n_all = [";
    for (std::size_t i = 0; i < c.n_all.size(); ++i) {
        out << (i ? ", " : "") << n_all_label(c.n_all[i]);
    }
    out << "]\n";
    out << "train.scale_interval = [" << fmt_double(c.scale_lo) << ", " << fmt_double(c.scale_hi) << "]\n";
    out << "train.grid_points = " << c.grid_points << "\n";
    out << "train.tol = " << fmt_double(c.tol) << "\n";
    out << "train.order = " << (c.order.empty() ? std::string("natural") : join_ints(c.order)) << "\n";
    out << "train.min_improvement = " << fmt_double(c.min_improvement) << "\n";
    out << "classify.threshold = " << fmt_double(c.threshold) << "\n";
    out << "classify.calibrate = " << (c.calibrate ? "true" : "false") << "\n";
    out << "output.dir = " << c.out_dir << "\n";
    out << "output.plot = " << (c.plot ? "true" : "false") << "\n";
    out << "threads = " << c.threads << "\n";
    return out.str();
}

std::string config_hash(const RunConfig &config) {
    RunConfig normalized = config;
    const RunConfig defaults;
    normalized.out_dir = defaults.out_dir;
    normalized.plot = defaults.plot;
    normalized.threads = defaults.threads;
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : serialize_config(normalized)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SweepConfig to_sweep_config(const RunConfig &c, const std::filesystem::path &base_dir) {
    SweepConfig s;
    if (c.circuit != "default") {
        std::filesystem::path path(c.circuit);
        if (path.is_relative()) {
            path = base_dir / path;
        }
        s.circuit = load_circuit(path);
    }
    for (std::size_t e : s.circuit.shifters()) {
        const auto &expr = std::get<PhaseShifter>(s.circuit.elements()[e]).expr;
        if (expr.feature && *expr.feature >= 2) {
            throw ConfigError("circuit: feature index " + std::to_string(*expr.feature) +
                              " out of range for two-dimensional data");
        }
    }
    s.rule = CircleRule{c.center_x, c.center_y, c.radius};
    s.train_size = static_cast<std::size_t>(c.train_size);
    s.test_size = static_cast<std::size_t>(c.test_size);
    s.seeds = c.seeds;
    s.n_all = c.n_all;
    s.training.rounds = c.rounds;
    s.training.scale_lo = c.scale_lo;
    s.training.scale_hi = c.scale_hi;
    s.training.minimize = MinimizeOptions{c.grid_points, c.tol};
    s.training.order = c.order;
    s.training.min_relative_improvement = c.min_improvement;
    s.threshold = c.threshold;
    s.calibrate_threshold = c.calibrate;
    s.master_seed = c.master_seed;
    s.threads = c.threads;
    return s;
}

}  // namespace phosmo::app
