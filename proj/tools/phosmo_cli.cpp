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

// Command-line front end: train, sweep, budget, plot.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "phosmo/app/commands.hpp"
#include "phosmo/app/config.hpp"

namespace {

struct RunFlags {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    bool plot = false;
    bool no_plot = false;
};

void add_run_flags(CLI::App *cmd, RunFlags &flags) {
    cmd->add_option("--config", flags.config, "Run configuration file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", flags.out, "Output directory (overrides output.dir)");
    cmd->add_option("--seed", flags.seed, "Master seed (overrides seed)");
    cmd->add_option("--threads", flags.threads, "Worker threads, 0 = all cores (overrides threads)")
        ->check(CLI::NonNegativeNumber);
    auto *plot = cmd->add_flag("--plot", flags.plot, "Write SVG plots");
    auto *no_plot = cmd->add_flag("--no-plot", flags.no_plot, "Do not write SVG plots");
    plot->excludes(no_plot);
}

phosmo::app::CommandOptions to_options(const RunFlags &flags) {
    phosmo::app::CommandOptions options;
    options.config = flags.config;
    if (!flags.out.empty()) {
        options.out_dir = flags.out;
    }
    options.seed = flags.seed;
    options.threads = flags.threads;
    if (flags.plot) {
        options.plot = true;
    } else if (flags.no_plot) {
        options.plot = false;
    }
    return options;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Sequential minimum optimization with small-sample estimators for linear-optics circuits"};
    app.set_version_flag("--version", std::string(phosmo::app::kToolName) + " " + phosmo::app::kToolVersion);
    app.require_subcommand(1);

    RunFlags train_flags;
    auto *train = app.add_subcommand("train", "Train the circuit once; write trace.csv and params.json");
    add_run_flags(train, train_flags);

    RunFlags sweep_flags;
    auto *sweep = app.add_subcommand("sweep", "Run the N_all x seed sweep; write results.csv and summary.json");
    add_run_flags(sweep, sweep_flags);

    RunFlags budget_flags;
    auto *budget = app.add_subcommand("budget", "Print the shot budget per N_all");
    add_run_flags(budget, budget_flags);

    std::string plot_input;
    std::string plot_kind;
    std::string plot_out;
    auto *plot = app.add_subcommand("plot", "Render SVG plots from a results, predictions or trace file");
    plot->add_option("input", plot_input, "results.csv, predictions.csv or trace.csv")->required();
    plot->add_option("--kind", plot_kind, "curve, regions or trace")->required();
    plot->add_option("--out", plot_out, "Output directory (default: the input's directory)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : phosmo::app::kExitConfigError;
    }

    if (*train) {
        return phosmo::app::cmd_train(to_options(train_flags), std::cout, std::cerr);
    }
    if (*sweep) {
        return phosmo::app::cmd_sweep(to_options(sweep_flags), std::cout, std::cerr);
    }
    if (*budget) {
        return phosmo::app::cmd_budget(to_options(budget_flags), std::cout, std::cerr);
    }
    std::optional<std::filesystem::path> out;
    if (!plot_out.empty()) {
        out = plot_out;
    }
    return phosmo::app::cmd_plot(plot_input, plot_kind, out, std::cout, std::cerr);
}
