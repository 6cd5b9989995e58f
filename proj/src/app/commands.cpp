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

#include "phosmo/app/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>
#include <utility>
#include <vector>

#include "phosmo/app/config.hpp"
#include "phosmo/app/results.hpp"
#include "phosmo/app/svg.hpp"
#include "phosmo/classifier.hpp"

namespace phosmo::app {

namespace {

using OutputFiles = std::vector<std::pair<std::string, std::string>>;

struct Prepared {
    RunConfig config;
    SweepConfig sweep;
    FileMeta meta;
    std::filesystem::path out_dir;
};

Prepared prepare(const CommandOptions &options) {
    Prepared p;
    p.config = load_config(options.config);
    if (options.seed) {
        p.config.master_seed = *options.seed;
    }
    if (options.threads) {
        p.config.threads = *options.threads;
    }
    if (options.plot) {
        p.config.plot = *options.plot;
    }
    if (options.out_dir) {
        p.config.out_dir = options.out_dir->string();
    }
    validate(p.config);
    p.sweep = to_sweep_config(p.config, options.config.parent_path());
    if (p.sweep.threads == 0) {
        p.sweep.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }
    p.meta = FileMeta{p.config.master_seed, config_hash(p.config), describe(p.sweep.rule)};
    p.out_dir = p.config.out_dir;
    return p;
}

// Everything is rendered in memory first; files appear only once a command has
// fully succeeded, each via write-then-rename.
void write_outputs(const std::filesystem::path &dir, const OutputFiles &files) {
    std::filesystem::create_directories(dir);
    for (const auto &[name, content] : files) {
        const auto target = dir / name;
        const auto tmp = dir / (name + ".tmp");
        {
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            if (!f) {
                throw std::runtime_error("cannot write " + tmp.string());
            }
            f << content;
            if (!f) {
                throw std::runtime_error("write failed for " + tmp.string());
            }
        }
        std::filesystem::rename(tmp, target);
    }
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

template <typename Fn>
int guarded(std::ostream &err, Fn &&fn) {
    try {
        return fn();
    } catch (const ConfigError &ex) {
        err << "config error: " << ex.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception &ex) {
        err << "error: " << ex.what() << "\n";
        return kExitRuntimeError;
    }
}

std::string provenance_of(const CsvTable &table) {
    for (const auto &c : table.comments) {
        if (c.rfind("# tool=", 0) == 0) {
            return c.substr(2);
        }
    }
    return std::string("tool=") + kToolName + " version=" + kToolVersion;
}

std::string p_text(const std::optional<double> &p) {
    if (!p) {
        return "undefined";
    }
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << *p;
    return s.str();
}

}  // namespace

int cmd_train(const CommandOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        Prepared p = prepare(options);
        if (p.config.train_size < 1) {
            throw ConfigError("invalid config: training needs dataset.n >= 1");
        }
        const std::uint64_t seed = p.config.seeds.front();
        const int n_all = p.config.n_all.front();
        const CellSeeds seeds = cell_seeds(p.sweep.master_seed, seed, n_all);
        const Dataset data = generate_dataset(p.sweep.rule, p.sweep.train_size, seeds.train_data);

        TrainingConfig training = p.sweep.training;
        training.seed = seeds.init;
        training.oracle =
            n_all == kExactShots ? MeasurementOracle::exact() : MeasurementOracle::binomial(n_all, seeds.shots);
        const ParameterVector initial = initial_parameters(p.sweep.circuit.param_count(), seeds.init);
        const TrainState state = train(p.sweep.circuit, data.points, training, initial);
        const double cost = exact_cost(p.sweep.circuit, state.params, data.points);

        nlohmann::json params;
        params["tool"] = kToolName;
        params["version"] = kToolVersion;
        params["master_seed"] = p.meta.master_seed;
        params["config_hash"] = p.meta.config_hash;
        params["seed"] = seed;
        params["n_all"] = n_all_label(n_all);
        params["rounds_completed"] = state.round;
        params["initial"] = initial;
        params["params"] = state.params;
        params["final_cost"] = cost;
        params["shots"] = state.shots;

        OutputFiles files{{"trace.csv", trace_csv(state.trace, p.meta)}, {"params.json", params.dump(2) + "\n"}};
        if (p.config.plot) {
            files.emplace_back("trace.svg", trace_svg(state.trace, meta_line(p.meta).substr(2)));
        }
        write_outputs(p.out_dir, files);
        out << "trained " << state.trace.size() << " updates (N_all=" << n_all_label(n_all) << ", seed=" << seed
            << "): final exact cost " << format_double(cost) << ", shots " << state.shots << "\n";
        out << "wrote " << (p.out_dir / "trace.csv").string() << " and " << (p.out_dir / "params.json").string()
            << "\n";
        return static_cast<int>(kExitOk);
    });
}

int cmd_sweep(const CommandOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        Prepared p = prepare(options);
        if (p.config.train_size < 1) {
            throw ConfigError("invalid config: a sweep needs dataset.n >= 1");
        }
        const SweepResult result = run_nall_sweep(p.sweep);

        std::vector<ResultRow> rows;
        for (const auto &cell : result.cells) {
            rows.push_back(to_row(cell));
            for (const auto &w : cell.metrics.warnings) {
                err << "warning: N_all=" << n_all_label(cell.n_all) << " seed=" << cell.seed << ": " << w << "\n";
            }
        }
        const auto summary = summarize(rows);

        const std::uint64_t first_seed = p.sweep.seeds.front();
        const Dataset test = generate_dataset(p.sweep.rule, p.sweep.test_size,
                                              cell_seeds(p.sweep.master_seed, first_seed, kExactShots).test_data);
        std::vector<PredictionRow> predictions;
        for (const auto &cell : result.cells) {
            if (cell.seed != first_seed) {
                continue;
            }
            for (std::size_t i = 0; i < test.points.size(); ++i) {
                const auto &x = test.points[i];
                predictions.push_back(
                    PredictionRow{cell.n_all, x.features[0], x.features[1], x.label, cell.test_predictions[i]});
            }
        }

        OutputFiles files{{"results.csv", results_csv(rows, p.meta)},
                          {"timings.csv", timings_csv(rows, p.meta)},
                          {"summary.json", summary_json(summary, p.meta).dump(2) + "\n"},
                          {"predictions.csv", predictions_csv(predictions, p.meta)}};
        if (p.config.plot) {
            const std::string prov = meta_line(p.meta).substr(2);
            files.emplace_back("curve.svg", curve_svg(summary, prov));
            for (const auto &cell : result.cells) {
                if (cell.seed != first_seed) {
                    continue;
                }
                std::vector<PredictionRow> panel;
                for (const auto &row : predictions) {
                    if (row.n_all == cell.n_all) {
                        panel.push_back(row);
                    }
                }
                const std::string title = cell.n_all == kExactShots ? "exact probabilities"
                                                                    : "N_all = " + n_all_label(cell.n_all);
                files.emplace_back("regions_" + n_all_label(cell.n_all) + ".svg",
                                   regions_svg(panel, std::get<CircleRule>(p.sweep.rule), cell.metrics.p, title,
                                               prov + " seed=" + std::to_string(first_seed)));
            }
        }
        write_outputs(p.out_dir, files);

        out << std::left << std::setw(8) << "n_all" << std::setw(8) << "seeds" << std::setw(10) << "mean_P"
            << "std_P\n";
        for (const auto &s : summary) {
            out << std::left << std::setw(8) << n_all_label(s.n_all) << std::setw(8) << s.count << std::setw(10)
                << p_text(s.count ? std::optional<double>(s.mean_p) : std::nullopt) << p_text(s.std_p) << "\n";
        }
        out << "wrote " << files.size() << " files to " << p.out_dir.string() << "\n";
        return static_cast<int>(kExitOk);
    });
}

int cmd_budget(const CommandOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        Prepared p = prepare(options);
        const CircuitSpec &circuit = p.sweep.circuit;
        const auto n = static_cast<std::size_t>(p.config.train_size);
        const std::int64_t probes = 2 * circuit.photons() + 1;
        const std::int64_t baseline = static_cast<std::int64_t>(p.config.rounds) * circuit.param_count() *
                                      static_cast<std::int64_t>(n) * probes * 200;

        out << meta_line(p.meta) << "\n";
        out << "rounds=" << p.config.rounds << " params=" << circuit.param_count() << " training_points=" << n
            << " probes=" << probes << " batches=2\n";
        out << "baseline_single_batch_200=" << baseline << "\n";
        out << "n_all,shots,baseline_over_shots\n";
        for (int shots : p.config.n_all) {
            TrainingConfig training = p.sweep.training;
            training.oracle =
                shots == kExactShots ? MeasurementOracle::exact() : MeasurementOracle::binomial(shots, 0);
            const std::int64_t total = shot_budget(training, circuit, n);
            out << n_all_label(shots) << ',' << total << ',';
            if (total > 0) {
                out << format_double(static_cast<double>(baseline) / static_cast<double>(total));
            } else {
                out << "-";
            }
            out << "\n";
            if (shots == kExactShots) {
                err << "note: exact probabilities consume no shots\n";
            }
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_plot(const std::filesystem::path &input, const std::string &kind,
             const std::optional<std::filesystem::path> &out_dir, std::ostream &out, std::ostream &err) {
    if (kind != "curve" && kind != "regions" && kind != "trace") {
        err << "config error: unknown plot kind '" << kind << "' (expected curve, regions or trace)\n";
        return kExitConfigError;
    }
    return guarded(err, [&] {
        const std::string text = read_file(input);
        std::filesystem::path dir = out_dir ? *out_dir : input.parent_path();
        if (dir.empty()) {
            dir = ".";
        }
        OutputFiles files;
        if (kind == "curve") {
            const CsvTable table = read_csv(text, kResultsHeader);
            const auto rows = parse_results(table);
            if (rows.empty()) {
                throw std::runtime_error("results file has no rows");
            }
            files.emplace_back("curve.svg", curve_svg(summarize(rows), provenance_of(table)));
        } else if (kind == "regions") {
            const CsvTable table = read_csv(text, kPredictionsHeader);
            const auto rows = parse_predictions(table);
            if (rows.empty()) {
                throw std::runtime_error("predictions file has no rows");
            }
            std::optional<CircleRule> boundary;
            if (auto rule = meta_value(table.comments, "rule")) {
                boundary = parse_circle_rule(*rule);
            }
            std::vector<int> order;
            for (const auto &r : rows) {
                if (std::find(order.begin(), order.end(), r.n_all) == order.end()) {
                    order.push_back(r.n_all);
                }
            }
            for (int n_all : order) {
                std::vector<PredictionRow> panel;
                std::vector<int> preds;
                std::vector<int> labels;
                for (const auto &r : rows) {
                    if (r.n_all == n_all) {
                        panel.push_back(r);
                        preds.push_back(r.pred);
                        labels.push_back(r.label);
                    }
                }
                const Metrics m = compute_metrics(preds, labels);
                const std::string title =
                    n_all == kExactShots ? "exact probabilities" : "N_all = " + n_all_label(n_all);
                files.emplace_back("regions_" + n_all_label(n_all) + ".svg",
                                   regions_svg(panel, boundary, m.p, title, provenance_of(table)));
            }
        } else {
            const CsvTable table = read_csv(text, kTraceHeader);
            const auto trace = parse_trace(table);
            if (trace.empty()) {
                throw std::runtime_error("trace file has no rows");
            }
            files.emplace_back("trace.svg", trace_svg(trace, provenance_of(table)));
        }
        write_outputs(dir, files);
        for (const auto &f : files) {
            out << "wrote " << (dir / f.first).string() << "\n";
        }
        return static_cast<int>(kExitOk);
    });
}

}  // namespace phosmo::app
