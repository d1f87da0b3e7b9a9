// Copyright 2026 The cvqnn Authors
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

#include "cvqnn/datasets.hpp"
#include "cvqnn/fock.hpp"
#include "cvqnn/mlp.hpp"
#include "cvqnn/optimizer.hpp"
#include "cvqnn/qnn.hpp"
#include "cvqnn/regressors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

namespace cvqnn {

enum class Strategy { kLayers, kParameters };

inline std::string_view strategy_name(Strategy s) {
  return s == Strategy::kLayers ? "layers" : "parameters";
}

inline Strategy parse_strategy(std::string_view name) {
  if (name == "layers") return Strategy::kLayers;
  if (name == "parameters") return Strategy::kParameters;
  throw std::invalid_argument("unknown strategy '" + std::string(name) +
                              "' (expected layers or parameters)");
}

enum class ModelFamily { kQnn, kChain, kMlp };

inline constexpr std::string_view kQuantumLabel = "quantum";

/// What to train: a QNN of depth L, a single-neuron chain of depth L, or an
/// MLP with explicit hidden widths.
struct ModelDescriptor {
  ModelFamily family = ModelFamily::kQnn;
  std::size_t layers = 1;
  std::vector<std::size_t> hidden;
  Activation activation = Activation::kTanh;

  static ModelDescriptor qnn(std::size_t l) { return {ModelFamily::kQnn, l, {}, {}}; }
  static ModelDescriptor chain(std::size_t l, Activation a) {
    return {ModelFamily::kChain, l, {}, a};
  }
  static ModelDescriptor mlp(std::vector<std::size_t> widths, Activation a) {
    const std::size_t depth = widths.size() + 1;
    return {ModelFamily::kMlp, depth, std::move(widths), a};
  }

  /// "qnn", "chain", or "mlp_<w1>-<w2>-..."
  std::string model_id() const {
    switch (family) {
      case ModelFamily::kQnn: return "qnn";
      case ModelFamily::kChain: return "chain";
      case ModelFamily::kMlp: {
        std::string id = "mlp_";
        for (std::size_t i = 0; i < hidden.size(); ++i) {
          if (i > 0) id += '-';
          id += std::to_string(hidden[i]);
        }
        return id;
      }
    }
    return "unknown";
  }

  std::string activation_label() const {
    return family == ModelFamily::kQnn ? std::string(kQuantumLabel)
                                       : std::string(activation_name(activation));
  }

  /// Depth counted in weight layers (quantum neurons for the QNN).
  std::size_t layer_count() const {
    return family == ModelFamily::kMlp ? hidden.size() + 1 : layers;
  }

  std::size_t param_count() const {
    switch (family) {
      case ModelFamily::kQnn: return QnnLayerParams::kCount * layers;
      case ModelFamily::kChain: return chain_param_count(layers);
      case ModelFamily::kMlp: return cvqnn::param_count(hidden);
    }
    return 0;
  }
};

/// Hidden-width combinations per parameter count for the parameter-matched
/// comparison.
inline const std::map<std::size_t, std::vector<std::vector<std::size_t>>>&
table1_configs() {
  static const std::map<std::size_t, std::vector<std::vector<std::size_t>>> table = {
      {10, {{3}}},
      {15, {{1, 4}, {4, 1}, {1, 2, 2}, {2, 2, 1}}},
      {20, {{1, 1, 5}, {1, 5, 1}, {2, 1, 4}, {3, 1, 3}, {4, 1, 2}, {5, 1, 1}}},
      {25, {{8}, {2, 5}, {5, 2}}},
  };
  return table;
}

struct ExperimentSpec {
  Strategy strategy = Strategy::kLayers;
  TargetKind target = TargetKind::kSine;
  std::vector<std::size_t> depths = {1, 2, 3, 4, 5};
  std::vector<std::size_t> param_counts = {10, 15, 20, 25};
  std::vector<Activation> activations = {Activation::kTanh, Activation::kSigmoid,
                                         Activation::kRelu};
  bool include_quantum = true;
  std::size_t seeds = 10;
  std::uint64_t seed_base = 0;
  AdamConfig optimizer;
  CutoffConfig cutoff;
  std::size_t train_points = 20;
  std::size_t test_points = 200;
  std::size_t workers = 0;  // 0: one per hardware thread

  void validate() const {
    optimizer.validate();
    if (seeds == 0) throw std::invalid_argument("seeds must be >= 1");
    if (train_points < 2) throw std::invalid_argument("train_points must be >= 2");
    if (test_points < 2) throw std::invalid_argument("test_points must be >= 2");
    if (strategy == Strategy::kLayers) {
      if (depths.empty()) throw std::invalid_argument("depths must not be empty");
      for (std::size_t d : depths) {
        if (d == 0) throw std::invalid_argument("depths entries must be >= 1");
      }
    } else {
      if (param_counts.empty()) {
        throw std::invalid_argument("param_counts must not be empty");
      }
      for (std::size_t c : param_counts) {
        if (!table1_configs().contains(c)) {
          throw std::invalid_argument("param_counts entry " + std::to_string(c) +
                                      " has no configurations (use 10, 15, 20 or 25)");
        }
      }
    }
  }
};

/// Models run by a layers-strategy sweep: per depth, one chain per
/// activation and then the QNN.
inline std::vector<ModelDescriptor> layer_sweep_models(const ExperimentSpec& spec) {
  std::vector<ModelDescriptor> models;
  for (std::size_t l : spec.depths) {
    for (Activation a : spec.activations) models.push_back(ModelDescriptor::chain(l, a));
    if (spec.include_quantum) models.push_back(ModelDescriptor::qnn(l));
  }
  return models;
}

/// Models run by a parameters-strategy sweep: per count, the QNN with 5L
/// equal to the count, then every table combination under every activation.
inline std::vector<ModelDescriptor> parameter_sweep_models(const ExperimentSpec& spec) {
  std::vector<ModelDescriptor> models;
  for (std::size_t count : spec.param_counts) {
    if (spec.include_quantum) {
      models.push_back(ModelDescriptor::qnn(count / QnnLayerParams::kCount));
    }
    for (const auto& widths : table1_configs().at(count)) {
      for (Activation a : spec.activations) models.push_back(ModelDescriptor::mlp(widths, a));
    }
  }
  for (const auto& m : models) {
    if (m.param_count() % QnnLayerParams::kCount != 0 ||
        std::find(spec.param_counts.begin(), spec.param_counts.end(),
                  m.param_count()) == spec.param_counts.end()) {
      throw std::logic_error("parameter-matched pairing broken for " + m.model_id());
    }
  }
  return models;
}

struct RunResult {
  std::string model_id;
  TargetKind target = TargetKind::kSine;
  Strategy strategy = Strategy::kLayers;
  std::size_t layers = 0;
  std::size_t params = 0;
  std::string activation;
  std::uint64_t seed = 0;
  double train_mse = 0.0;
  double test_mse = 0.0;
  bool leakage_flag = false;
  double runtime_seconds = 0.0;
  std::vector<CurvePoint> fit_curve;
  bool failed = false;
  std::string failure;
};

/// File-name stem for a run's group, e.g. "qnn_L3", "chain_tanh_L2",
/// "mlp_2-5_relu".
inline std::string group_label(const RunResult& r) {
  std::string label = r.model_id;
  if (r.activation != kQuantumLabel) label += "_" + r.activation;
  if (r.model_id == "qnn" || r.model_id == "chain") {
    label += "_L" + std::to_string(r.layers);
  }
  return label;
}

/// Train one model on one seed.
inline RunResult run_single(const ModelDescriptor& model, const RegressionTask& task,
                            Strategy strategy, const AdamConfig& opt,
                            std::uint64_t seed,
                            const std::shared_ptr<const QnnModel>& qnn_sim) {
  TrainOutcome outcome;
  if (model.family == ModelFamily::kQnn) {
    outcome = train(QnnRegressor(model.layers, qnn_sim), task, opt, seed);
  } else {
    const std::vector<std::size_t> widths =
        model.family == ModelFamily::kChain
            ? std::vector<std::size_t>(model.layers - 1, 1)
            : model.hidden;
    outcome = train(MlpRegressor(widths, model.activation), task, opt, seed);
  }
  RunResult r;
  r.model_id = model.model_id();
  r.target = task.train.target_kind;
  r.strategy = strategy;
  r.layers = model.layer_count();
  r.params = model.param_count();
  r.activation = model.activation_label();
  r.seed = seed;
  r.train_mse = outcome.train_mse;
  r.test_mse = outcome.test_mse;
  r.leakage_flag = outcome.leakage_flag();
  r.runtime_seconds = outcome.runtime_seconds;
  r.fit_curve = std::move(outcome.fit_curve);
  r.failed = outcome.failed;
  r.failure = std::move(outcome.failure);
  return r;
}

using ProgressFn =
    std::function<void(const RunResult&, std::size_t done, std::size_t total)>;

/// Trains every (model, seed) pair on a bounded worker pool. Results come
/// back in model-major, seed-minor order regardless of scheduling.
inline std::vector<RunResult> run_models(const ExperimentSpec& spec,
                                         const std::vector<ModelDescriptor>& models,
                                         const ProgressFn& progress = {}) {
  spec.validate();
  const RegressionTask task =
      RegressionTask::make(spec.target, spec.train_points, spec.test_points);
  const bool needs_qnn = std::any_of(models.begin(), models.end(), [](const auto& m) {
    return m.family == ModelFamily::kQnn;
  });
  std::shared_ptr<const QnnModel> qnn_sim;
  if (needs_qnn) qnn_sim = std::make_shared<const QnnModel>(spec.cutoff);

  const std::size_t total = models.size() * spec.seeds;
  std::vector<RunResult> results(total);
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex progress_mutex;

  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      const ModelDescriptor& model = models[job / spec.seeds];
      const std::uint64_t seed = spec.seed_base + job % spec.seeds;
      results[job] = run_single(model, task, spec.strategy, spec.optimizer, seed, qnn_sim);
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(results[job], ++done, total);
      }
    }
  };

  std::size_t workers = spec.workers != 0 ? spec.workers
                                          : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(total, 1));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  return results;
}

inline std::vector<RunResult> run_strategy_layers(const ExperimentSpec& spec,
                                                  const ProgressFn& progress = {}) {
  if (spec.strategy != Strategy::kLayers) {
    throw std::invalid_argument("run_strategy_layers needs strategy = layers");
  }
  return run_models(spec, layer_sweep_models(spec), progress);
}

inline std::vector<RunResult> run_strategy_parameters(const ExperimentSpec& spec,
                                                      const ProgressFn& progress = {}) {
  if (spec.strategy != Strategy::kParameters) {
    throw std::invalid_argument("run_strategy_parameters needs strategy = parameters");
  }
  return run_models(spec, parameter_sweep_models(spec), progress);
}

inline std::vector<RunResult> run_experiment(const ExperimentSpec& spec,
                                             const ProgressFn& progress = {}) {
  return spec.strategy == Strategy::kLayers ? run_strategy_layers(spec, progress)
                                            : run_strategy_parameters(spec, progress);
}

struct AggregateRow {
  std::string model_id;
  TargetKind target = TargetKind::kSine;
  Strategy strategy = Strategy::kLayers;
  std::size_t layers = 0;
  std::size_t params = 0;
  std::string activation;
  std::size_t n_seeds = 0;
  double mean_mse = 0.0;
  double std_mse = 0.0;
  double min_mse = 0.0;

  friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

namespace detail {
inline auto group_key(const RunResult& r) {
  return std::make_tuple(r.model_id, r.target, r.strategy, r.layers, r.params,
                         r.activation);
}
}  // namespace detail

/// Mean, population standard deviation and minimum of test MSE per group.
/// Groups appear in order of first occurrence; failed runs are skipped and
/// a group with no successful run produces no row.
inline std::vector<AggregateRow> aggregate(const std::vector<RunResult>& results) {
  using Key = decltype(detail::group_key(std::declval<const RunResult&>()));
  std::vector<Key> order;
  std::map<Key, std::vector<double>> groups;
  for (const auto& r : results) {
    const Key key = detail::group_key(r);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    if (!r.failed && std::isfinite(r.test_mse)) it->second.push_back(r.test_mse);
  }
  std::vector<AggregateRow> rows;
  for (const Key& key : order) {
    const auto& mses = groups.at(key);
    if (mses.empty()) continue;
    AggregateRow row;
    std::tie(row.model_id, row.target, row.strategy, row.layers, row.params,
             row.activation) = key;
    row.n_seeds = mses.size();
    double sum = 0.0;
    for (double v : mses) sum += v;
    row.mean_mse = sum / static_cast<double>(mses.size());
    double sq = 0.0;
    for (double v : mses) sq += (v - row.mean_mse) * (v - row.mean_mse);
    row.std_mse = std::sqrt(sq / static_cast<double>(mses.size()));
    const auto [lo, hi] = std::minmax_element(mses.begin(), mses.end());
    row.min_mse = *lo;
    row.mean_mse = std::clamp(row.mean_mse, *lo, *hi);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cvqnn
