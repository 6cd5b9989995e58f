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

#include "phosmo/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace phosmo {

int label_of(const LabelRule &rule, std::span<const double> features) {
    if (const auto *circle = std::get_if<CircleRule>(&rule)) {
        const double dx = features[0] - circle->center_x;
        const double dy = features[1] - circle->center_y;
        return dx * dx + dy * dy <= circle->radius * circle->radius ? 1 : 0;
    }
    return std::get<PredicateRule>(rule).predicate(features) != 0 ? 1 : 0;
}

std::string describe(const LabelRule &rule) {
    if (const auto *circle = std::get_if<CircleRule>(&rule)) {
        std::ostringstream out;
        out.precision(17);
        out << "circle(center=(" << circle->center_x << "," << circle->center_y << "),radius=" << circle->radius
            << ")";
        return out.str();
    }
    return "predicate(" + std::get<PredicateRule>(rule).name + ")";
}

Dataset generate_dataset(const LabelRule &rule, std::size_t count, std::uint64_t seed) {
    if (count < 1) {
        throw std::invalid_argument("generate_dataset: count must be >= 1");
    }
    RandomStream rng(seed);
    Dataset data{{}, seed};
    data.points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        DataPoint x;
        x.features = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        x.label = label_of(rule, x.features);
        data.points.push_back(std::move(x));
    }
    return data;
}

int classify_point(const CircuitSpec &spec, std::span<const double> params, const DataPoint &x, double threshold) {
    return evaluate(spec, params, x) >= threshold ? 1 : 0;
}

Metrics compute_metrics(std::span<const int> predictions, std::span<const int> labels) {
    if (predictions.size() != labels.size()) {
        throw std::invalid_argument("compute_metrics: " + std::to_string(predictions.size()) + " predictions for " +
                                    std::to_string(labels.size()) + " labels");
    }
    Metrics m;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool predicted = predictions[i] != 0;
        if (labels[i] != 0) {
            (predicted ? m.tp : m.fn) += 1;
        } else {
            (predicted ? m.fp : m.tn) += 1;
        }
    }
    if (m.tp + m.fn > 0) {
        m.tpr = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
    }
    if (m.tn + m.fp > 0) {
        m.tnr = static_cast<double>(m.tn) / static_cast<double>(m.tn + m.fp);
    }
    if (m.tpr && m.tnr) {
        m.p = 0.5 * *m.tpr + 0.5 * *m.tnr;
    } else if (m.tnr) {
        m.p = m.tnr;
        m.warnings.push_back("TPR undefined (no positive labels); P is TNR alone");
    } else if (m.tpr) {
        m.p = m.tpr;
        m.warnings.push_back("TNR undefined (no negative labels); P is TPR alone");
    } else {
        m.warnings.push_back("no labels; TPR, TNR and P undefined");
    }
    return m;
}

double calibrate_threshold(const CircuitSpec &spec, std::span<const double> params, std::span<const DataPoint> data) {
    std::vector<double> probs;
    std::vector<int> labels;
    for (const auto &x : data) {
        probs.push_back(evaluate(spec, params, x));
        labels.push_back(x.label);
    }
    double best_threshold = 0.5;
    double best_p = -1.0;
    std::vector<int> predictions(probs.size());
    for (int k = 0; k <= 100; ++k) {
        const double t = (k + 0.5) / 101.0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            predictions[i] = probs[i] >= t ? 1 : 0;
        }
        const Metrics m = compute_metrics(predictions, labels);
        if (m.p && *m.p > best_p) {
            best_p = *m.p;
            best_threshold = t;
        }
    }
    return best_threshold;
}

CellSeeds cell_seeds(std::uint64_t master_seed, std::uint64_t seed, int n_all) {
    return CellSeeds{derive_seed(master_seed, {seed, 1}), derive_seed(master_seed, {seed, 2}),
                     derive_seed(master_seed, {seed, 3}),
                     derive_seed(master_seed, {seed, 4, static_cast<std::uint64_t>(n_all)})};
}

SweepCell run_sweep_cell(const SweepConfig &config, int n_all, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    const CellSeeds seeds = cell_seeds(config.master_seed, seed, n_all);
    const Dataset train_set = generate_dataset(config.rule, config.train_size, seeds.train_data);
    const Dataset test_set = generate_dataset(config.rule, config.test_size, seeds.test_data);

    TrainingConfig training = config.training;
    training.seed = seeds.init;
    training.oracle = n_all == kExactShots ? MeasurementOracle::exact() : MeasurementOracle::binomial(n_all, seeds.shots);

    SweepCell cell;
    cell.n_all = n_all;
    cell.seed = seed;
    cell.initial = initial_parameters(config.circuit.param_count(), seeds.init);
    cell.state = train(config.circuit, train_set.points, training, cell.initial);
    cell.final_cost = exact_cost(config.circuit, cell.state.params, train_set.points);
    cell.threshold = config.calibrate_threshold
                         ? calibrate_threshold(config.circuit, cell.state.params, train_set.points)
                         : config.threshold;
    std::vector<int> labels;
    labels.reserve(test_set.points.size());
    cell.test_predictions.reserve(test_set.points.size());
    for (const auto &x : test_set.points) {
        cell.test_predictions.push_back(classify_point(config.circuit, cell.state.params, x, cell.threshold));
        labels.push_back(x.label);
    }
    cell.metrics = compute_metrics(cell.test_predictions, labels);
    cell.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return cell;
}

SweepResult run_nall_sweep(const SweepConfig &config) {
    if (config.n_all.empty() || config.seeds.empty()) {
        throw std::invalid_argument("run_nall_sweep: need at least one N_all value and one seed");
    }
    for (int n : config.n_all) {
        if (n < 0) {
            throw std::invalid_argument("run_nall_sweep: negative N_all");
        }
    }
    if (!(config.threshold > 0.0 && config.threshold < 1.0)) {
        throw std::invalid_argument("run_nall_sweep: threshold must lie in (0, 1)");
    }
    const std::size_t cell_count = config.n_all.size() * config.seeds.size();
    SweepResult result;
    result.cells.resize(cell_count);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t k = next++; k < cell_count; k = next++) {
            const int n_all = config.n_all[k / config.seeds.size()];
            const std::uint64_t seed = config.seeds[k % config.seeds.size()];
            try {
                result.cells[k] = run_sweep_cell(config, n_all, seed);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    const int threads = std::max(1, std::min<int>(config.threads, static_cast<int>(cell_count)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return result;
}

}  // namespace phosmo
