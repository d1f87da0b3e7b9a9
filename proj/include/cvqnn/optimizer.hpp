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
#include "cvqnn/model.hpp"
#include "cvqnn/random.hpp"

#include <chrono>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvqnn {

/// Mean of squared residuals.
inline double mse(std::span<const double> predictions,
                  std::span<const double> targets) {
  if (predictions.size() != targets.size()) {
    throw std::invalid_argument("mse: " + std::to_string(predictions.size()) +
                                " predictions vs " +
                                std::to_string(targets.size()) + " targets");
  }
  if (predictions.empty()) throw std::invalid_argument("mse: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double r = predictions[i] - targets[i];
    sum += r * r;
  }
  return sum / static_cast<double>(predictions.size());
}

struct AdamConfig {
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t epochs = 10000;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const {
    auto fail = [](const std::string& field, const std::string& rule, double v) {
      std::ostringstream os;
      os << field << " " << rule << ", got " << v;
      throw std::invalid_argument(os.str());
    };
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
      fail("learning_rate", "must be > 0", learning_rate);
    }
    if (!(beta1 >= 0.0 && beta1 < 1.0)) fail("beta1", "must be in [0, 1)", beta1);
    if (!(beta2 >= 0.0 && beta2 < 1.0)) fail("beta2", "must be in [0, 1)", beta2);
    if (!(epsilon > 0.0)) fail("epsilon", "must be > 0", epsilon);
  }
};

struct TrainState {
  std::vector<double> parameters;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::size_t step_count = 0;

  static TrainState start(std::vector<double> params) {
    TrainState s;
    const std::size_t n = params.size();
    s.parameters = std::move(params);
    s.first_moment.assign(n, 0.0);
    s.second_moment.assign(n, 0.0);
    return s;
  }
};

class NonFiniteGradient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One bias-corrected Adam update.
inline TrainState adam_step(TrainState state, std::span<const double> gradient,
                            const AdamConfig& cfg) {
  const std::size_t n = state.parameters.size();
  if (gradient.size() != n || state.first_moment.size() != n ||
      state.second_moment.size() != n) {
    throw std::invalid_argument("adam_step: gradient has length " +
                                std::to_string(gradient.size()) +
                                ", parameters have length " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(gradient[i])) {
      throw NonFiniteGradient("adam_step: gradient component " +
                              std::to_string(i) + " is not finite at step " +
                              std::to_string(state.step_count + 1));
    }
  }
  state.step_count += 1;
  const double t = static_cast<double>(state.step_count);
  const double correction1 = 1.0 - std::pow(cfg.beta1, t);
  const double correction2 = 1.0 - std::pow(cfg.beta2, t);
  for (std::size_t i = 0; i < n; ++i) {
    const double g = gradient[i];
    state.first_moment[i] = cfg.beta1 * state.first_moment[i] + (1.0 - cfg.beta1) * g;
    state.second_moment[i] =
        cfg.beta2 * state.second_moment[i] + (1.0 - cfg.beta2) * g * g;
    const double m_hat = state.first_moment[i] / correction1;
    const double v_hat = state.second_moment[i] / correction2;
    state.parameters[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
  }
  return state;
}

/// Anything train() can fit: flat parameters, batch prediction and the
/// batch MSE gradient.
template <typename M>
concept TrainableModel =
    requires(const M& m, std::span<const double> p, std::span<const double> xs,
             std::span<const double> ys, Rng& rng) {
      { m.parameter_count() } -> std::convertible_to<std::size_t>;
      { m.initial_parameters(rng) } -> std::same_as<std::vector<double>>;
      { m.predict(p, xs) } -> std::same_as<Prediction>;
      { m.loss_gradient(p, xs, ys) } -> std::same_as<LossGradient>;
    };

inline constexpr double kDivergenceThreshold = 1e6;

struct CurvePoint {
  double x = 0.0;
  double y_pred = 0.0;
  double y_true = 0.0;
};

struct TrainOutcome {
  std::vector<double> parameters;
  double initial_train_mse = 0.0;
  double train_mse = 0.0;
  double test_mse = 0.0;
  double max_leakage = 0.0;
  std::vector<CurvePoint> fit_curve;  // one point per test input
  double runtime_seconds = 0.0;
  std::size_t epochs_run = 0;
  bool failed = false;
  std::string failure;

  bool leakage_flag() const { return max_leakage > kLeakageThreshold; }
};

/// Full-batch Adam on the training MSE. Parameters are drawn from the
/// model's initializer seeded with `seed`; everything else is
/// deterministic, so equal (model, task, cfg, seed) give equal outcomes.
/// Divergence or a non-finite gradient ends the run with failed = true.
template <TrainableModel M>
TrainOutcome train(const M& model, const RegressionTask& task,
                   const AdamConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  Rng rng(seed);
  TrainState state = TrainState::start(model.initial_parameters(rng));
  const std::span<const double> xs = task.train.inputs;
  const std::span<const double> ys = task.train.targets;

  TrainOutcome out;
  out.initial_train_mse = mse(model.predict(state.parameters, xs).values, ys);
  try {
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
      const LossGradient lg = model.loss_gradient(state.parameters, xs, ys);
      if (!std::isfinite(lg.loss) || lg.loss > kDivergenceThreshold) {
        std::ostringstream os;
        os << "diverged at epoch " << epoch << ": train MSE " << lg.loss;
        throw NonFiniteGradient(os.str());
      }
      state = adam_step(std::move(state), lg.gradient, cfg);
      out.epochs_run = epoch + 1;
    }
  } catch (const NonFiniteGradient& e) {
    out.failed = true;
    out.failure = e.what();
  }

  out.parameters = state.parameters;
  if (!out.failed) {
    out.train_mse = mse(model.predict(state.parameters, xs).values, ys);
    const Prediction test = model.predict(state.parameters, task.test.inputs);
    out.test_mse = mse(test.values, task.test.targets);
    out.max_leakage = test.max_leakage;
    out.fit_curve.reserve(task.test.size());
    for (std::size_t i = 0; i < task.test.size(); ++i) {
      out.fit_curve.push_back(
          {task.test.inputs[i], test.values[i], task.test.targets[i]});
    }
    if (!std::isfinite(out.train_mse) || out.train_mse > kDivergenceThreshold) {
      out.failed = true;
      out.failure = "diverged after final update";
    }
  }
  if (out.failed) {
    out.train_mse = std::numeric_limits<double>::quiet_NaN();
    out.test_mse = std::numeric_limits<double>::quiet_NaN();
    out.fit_curve.clear();
  }
  out.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace cvqnn
