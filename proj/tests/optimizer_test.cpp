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

#include "cvqnn/optimizer.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cvqnn/regressors.hpp"

using namespace cvqnn;

TEST(Mse, examples) {
  EXPECT_DOUBLE_EQ(mse(std::vector<double>{1, 2}, std::vector<double>{1, 0}), 2.0);
  const std::vector<double> v = {0.3, -1.2, 5.0};
  EXPECT_EQ(mse(v, v), 0.0);
  EXPECT_DOUBLE_EQ(mse(std::vector<double>{0.5}, std::vector<double>{-0.5}), 1.0);
}

TEST(Mse, rejects_mismatched_or_empty_inputs) {
  EXPECT_THROW(mse(std::vector<double>{1, 2}, std::vector<double>{1}), std::invalid_argument);
  EXPECT_THROW(mse(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
}

TEST(Mse, invariant_under_joint_permutation) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::pair<double, double>> pairs(9);
    for (auto& [p, t] : pairs) p = rng.uniform(-2, 2), t = rng.uniform(-2, 2);
    auto split = [](const auto& ps) {
      std::vector<double> a, b;
      for (const auto& [p, t] : ps) a.push_back(p), b.push_back(t);
      return std::make_pair(a, b);
    };
    const auto [p0, t0] = split(pairs);
    std::reverse(pairs.begin(), pairs.end());
    std::rotate(pairs.begin(), pairs.begin() + 4, pairs.end());
    const auto [p1, t1] = split(pairs);
    EXPECT_NEAR(mse(p0, t0), mse(p1, t1), 1e-14);
    EXPECT_GE(mse(p0, t0), 0.0);
  }
}

TEST(AdamConfig, defaults_and_validation) {
  AdamConfig cfg;
  EXPECT_EQ(cfg.learning_rate, 0.01);
  EXPECT_EQ(cfg.beta1, 0.9);
  EXPECT_EQ(cfg.beta2, 0.999);
  EXPECT_EQ(cfg.epsilon, 1e-8);
  EXPECT_EQ(cfg.epochs, 10000u);
  EXPECT_NO_THROW(cfg.validate());
  cfg.learning_rate = -0.1;
  try {
    cfg.validate();
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("learning_rate"), std::string::npos);
  }
  cfg.learning_rate = 0.01;
  cfg.beta2 = 1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(AdamStep, zero_gradient_leaves_parameters) {
  const TrainState start = TrainState::start({1.0, -2.0});
  const TrainState next = adam_step(start, std::vector<double>{0.0, 0.0}, AdamConfig{});
  EXPECT_EQ(next.parameters, start.parameters);
  EXPECT_EQ(next.step_count, 1u);
}

TEST(AdamStep, first_step_moves_by_learning_rate_against_gradient_sign) {
  const AdamConfig cfg;
  const TrainState next =
      adam_step(TrainState::start({0.0, 0.0, 0.0}), std::vector<double>{3.0, -0.02, 1e-3}, cfg);
  EXPECT_NEAR(next.parameters[0], -0.01, 1e-6);
  EXPECT_NEAR(next.parameters[1], 0.01, 1e-6);
  EXPECT_NEAR(next.parameters[2], -0.01, 1e-6);
}

TEST(AdamStep, drift_decays_after_gradient_stops) {
  const AdamConfig cfg;
  TrainState s = adam_step(TrainState::start({0.0}), std::vector<double>{1.0}, cfg);
  const double p1 = s.parameters[0];
  s = adam_step(s, std::vector<double>{0.0}, cfg);
  const double p2 = s.parameters[0];
  s = adam_step(s, std::vector<double>{0.0}, cfg);
  const double p3 = s.parameters[0];
  EXPECT_LT(p2, p1);
  EXPECT_LT(p3, p2);
  EXPECT_LT(std::abs(p3 - p2), std::abs(p2 - p1));
  EXPECT_EQ(s.step_count, 3u);
}

TEST(AdamStep, rejects_non_finite_and_mismatched_gradients) {
  const TrainState s = TrainState::start({0.0, 0.0});
  EXPECT_THROW(adam_step(s, std::vector<double>{0.0, std::nan("")}, AdamConfig{}),
               NonFiniteGradient);
  EXPECT_THROW(adam_step(s, std::vector<double>{0.0}, AdamConfig{}), std::invalid_argument);
}

namespace {

RegressionTask line_task() {
  RegressionTask task = RegressionTask::make(TargetKind::kSine, 20, 200);
  for (Dataset* d : {&task.train, &task.test}) {
    for (std::size_t i = 0; i < d->size(); ++i) d->targets[i] = 0.5 * d->inputs[i] - 0.2;
  }
  return task;
}

/// Model whose loss explodes on the first evaluation.
struct ExplodingModel {
  std::size_t parameter_count() const { return 1; }
  std::vector<double> initial_parameters(Rng&) const { return {0.0}; }
  Prediction predict(std::span<const double>, std::span<const double> xs) const {
    return {std::vector<double>(xs.size(), 0.0), 0.0};
  }
  LossGradient loss_gradient(std::span<const double>, std::span<const double>,
                             std::span<const double>) const {
    return {1e7, {1.0}};
  }
};

}  // namespace

TEST(Train, linear_model_fits_a_line) {
  const TrainOutcome out =
      train(MlpRegressor({}, Activation::kTanh), line_task(), AdamConfig{}, 1);
  EXPECT_FALSE(out.failed);
  EXPECT_LT(out.train_mse, 1e-10);
  EXPECT_EQ(out.epochs_run, 10000u);
  EXPECT_EQ(out.fit_curve.size(), 200u);
}

TEST(Train, zero_epochs_reports_initial_error) {
  AdamConfig cfg;
  cfg.epochs = 0;
  const RegressionTask task = RegressionTask::make(TargetKind::kSine);
  const MlpRegressor model({3}, Activation::kTanh);
  const TrainOutcome out = train(model, task, cfg, 7);
  EXPECT_EQ(out.train_mse, out.initial_train_mse);
  Rng rng(7);
  EXPECT_EQ(out.parameters, model.initial_parameters(rng));
}

TEST(Train, same_seed_same_outcome) {
  AdamConfig cfg;
  cfg.epochs = 300;
  const RegressionTask task = RegressionTask::make(TargetKind::kHeaviside);
  const QnnRegressor qnn(2, CutoffConfig(20));
  const TrainOutcome a = train(qnn, task, cfg, 11);
  const TrainOutcome b = train(qnn, task, cfg, 11);
  EXPECT_EQ(a.parameters, b.parameters);
  EXPECT_EQ(a.test_mse, b.test_mse);
  const TrainOutcome c = train(qnn, task, cfg, 12);
  EXPECT_NE(a.parameters, c.parameters);
}

TEST(Train, divergence_is_a_failed_run_not_an_exception) {
  const TrainOutcome out =
      train(ExplodingModel{}, RegressionTask::make(TargetKind::kSine), AdamConfig{}, 0);
  EXPECT_TRUE(out.failed);
  EXPECT_NE(out.failure.find("diverged"), std::string::npos);
  EXPECT_TRUE(std::isnan(out.test_mse));
}

TEST(Train, final_error_not_above_initial_on_sine) {
  AdamConfig cfg;
  cfg.epochs = 1000;
  const RegressionTask task = RegressionTask::make(TargetKind::kSine);
  const QnnRegressor qnn(1, CutoffConfig(30));
  const MlpRegressor mlp({3}, Activation::kTanh);
  int qnn_ok = 0, mlp_ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TrainOutcome q = train(qnn, task, cfg, seed);
    const TrainOutcome m = train(mlp, task, cfg, seed);
    qnn_ok += q.train_mse <= q.initial_train_mse;
    mlp_ok += m.train_mse <= m.initial_train_mse;
  }
  EXPECT_GE(qnn_ok, 19);
  EXPECT_GE(mlp_ok, 19);
}
