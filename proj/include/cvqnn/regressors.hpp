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

#include "cvqnn/mlp.hpp"
#include "cvqnn/model.hpp"
#include "cvqnn/optimizer.hpp"
#include "cvqnn/qnn.hpp"
#include "cvqnn/random.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace cvqnn {

/// L-layer QNN as a TrainableModel. Initial parameters ~ Normal(0, 0.1).
class QnnRegressor {
 public:
  static constexpr double kInitStddev = 0.1;

  QnnRegressor(std::size_t layers, CutoffConfig cfg)
      : layers_(layers), model_(std::make_shared<const QnnModel>(cfg)) {}
  QnnRegressor(std::size_t layers, std::shared_ptr<const QnnModel> model)
      : layers_(layers), model_(std::move(model)) {}

  std::size_t layer_count() const { return layers_; }
  std::size_t parameter_count() const { return QnnLayerParams::kCount * layers_; }
  const QnnModel& model() const { return *model_; }

  std::vector<double> initial_parameters(Rng& rng) const {
    std::vector<double> p(parameter_count());
    for (auto& v : p) v = rng.normal(0.0, kInitStddev);
    return p;
  }

  Prediction predict(std::span<const double> params,
                     std::span<const double> xs) const {
    return model_->forward_batch(xs, params);
  }

  LossGradient loss_gradient(std::span<const double> params,
                             std::span<const double> xs,
                             std::span<const double> ys) const {
    return model_->loss_gradient(params, xs, ys);
  }

 private:
  std::size_t layers_;
  std::shared_ptr<const QnnModel> model_;
};

/// Fixed-architecture MLP as a TrainableModel.
class MlpRegressor {
 public:
  MlpRegressor(std::vector<std::size_t> hidden_widths, Activation activation)
      : shape_(std::move(hidden_widths), activation) {}
  explicit MlpRegressor(MlpNetwork shape) : shape_(std::move(shape)) {}

  std::size_t parameter_count() const { return shape_.parameter_count(); }
  const MlpNetwork& shape() const { return shape_; }

  std::vector<double> initial_parameters(Rng& rng) const {
    MlpNetwork net = shape_;
    net.initialize(rng);
    return net.flatten();
  }

  MlpNetwork with_parameters(std::span<const double> params) const {
    MlpNetwork net = shape_;
    net.assign(params);
    return net;
  }

  Prediction predict(std::span<const double> params,
                     std::span<const double> xs) const {
    return {with_parameters(params).forward_batch(xs), 0.0};
  }

  LossGradient loss_gradient(std::span<const double> params,
                             std::span<const double> xs,
                             std::span<const double> ys) const {
    const MlpNetwork net = with_parameters(params);
    const std::vector<double> yhat = net.forward_batch(xs);
    const double n = static_cast<double>(xs.size());
    std::vector<double> weights(xs.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double r = yhat[j] - ys[j];
      sum += r * r;
      weights[j] = 2.0 * r / n;
    }
    return {sum / n, net.weighted_gradient(xs, weights)};
  }

 private:
  MlpNetwork shape_;
};

static_assert(TrainableModel<QnnRegressor>);
static_assert(TrainableModel<MlpRegressor>);

}  // namespace cvqnn
