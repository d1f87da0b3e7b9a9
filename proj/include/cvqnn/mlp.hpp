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

#include "cvqnn/model.hpp"
#include "cvqnn/random.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cvqnn {

enum class Activation { kTanh, kSigmoid, kRelu };

inline std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::kTanh: return "tanh";
    case Activation::kSigmoid: return "sigmoid";
    case Activation::kRelu: return "relu";
  }
  return "unknown";
}

inline Activation parse_activation(std::string_view name) {
  if (name == "tanh") return Activation::kTanh;
  if (name == "sigmoid") return Activation::kSigmoid;
  if (name == "relu") return Activation::kRelu;
  throw std::invalid_argument("unknown activation '" + std::string(name) +
                              "' (expected tanh, sigmoid or relu)");
}

namespace detail {

inline Eigen::MatrixXd activate(Activation a, const Eigen::MatrixXd& z) {
  switch (a) {
    case Activation::kTanh: return z.array().tanh().matrix();
    case Activation::kSigmoid:
      return (1.0 / (1.0 + (-z.array()).exp())).matrix();
    case Activation::kRelu: return z.cwiseMax(0.0);
  }
  return z;
}

/// Derivative expressed through pre-activation z and output a. ReLU'(0) = 0.
inline Eigen::MatrixXd activation_slope(Activation a, const Eigen::MatrixXd& z,
                                        const Eigen::MatrixXd& out) {
  switch (a) {
    case Activation::kTanh: return (1.0 - out.array().square()).matrix();
    case Activation::kSigmoid: return (out.array() * (1.0 - out.array())).matrix();
    case Activation::kRelu: return (z.array() > 0.0).cast<double>().matrix();
  }
  return Eigen::MatrixXd::Ones(z.rows(), z.cols());
}

}  // namespace detail

/// Trainable parameters of one fully connected layer: weights is
/// fan_out x fan_in.
struct DenseLayer {
  Eigen::MatrixXd weights;
  Eigen::VectorXd biases;

  std::size_t parameter_count() const {
    return static_cast<std::size_t>(weights.size() + biases.size());
  }
};

/// Parameters of a 1-input, 1-output network with the given hidden widths.
inline std::size_t param_count(std::span<const std::size_t> hidden_widths) {
  std::size_t fan_in = 1;
  std::size_t total = 0;
  for (std::size_t w : hidden_widths) {
    if (w == 0) throw std::invalid_argument("hidden layer width must be >= 1");
    total += (fan_in + 1) * w;
    fan_in = w;
  }
  return total + fan_in + 1;
}

inline std::size_t param_count(std::initializer_list<std::size_t> hidden) {
  return param_count(std::span<const std::size_t>(hidden.begin(), hidden.size()));
}

/// Feedforward network of the form y = W_L G(... G(W_1 x + b_1) ...) + b_L.
/// Every hidden layer applies the activation; the output neuron is linear.
class MlpNetwork {
 public:
  MlpNetwork() = default;

  /// All weights and biases zero.
  MlpNetwork(std::vector<std::size_t> hidden_widths, Activation activation)
      : hidden_(std::move(hidden_widths)), activation_(activation) {
    std::size_t fan_in = 1;
    auto add = [&](std::size_t fan_out) {
      layers_.push_back(
          {Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(fan_out),
                                 static_cast<Eigen::Index>(fan_in)),
           Eigen::VectorXd::Zero(static_cast<Eigen::Index>(fan_out))});
      fan_in = fan_out;
    };
    for (std::size_t w : hidden_) {
      if (w == 0) throw std::invalid_argument("hidden layer width must be >= 1");
      add(w);
    }
    add(1);
  }

  const std::vector<std::size_t>& hidden_widths() const { return hidden_; }
  Activation activation() const { return activation_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers_) n += l.parameter_count();
    return n;
  }

  /// Weights uniform on +-sqrt(1/fan_in), biases zero.
  void initialize(Rng& rng) {
    for (auto& layer : layers_) {
      const double bound = std::sqrt(1.0 / static_cast<double>(layer.weights.cols()));
      for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
        for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
          layer.weights(r, c) = rng.uniform(-bound, bound);
        }
      }
      layer.biases.setZero();
    }
  }

  /// Layout per layer: weights row-major, then biases.
  std::vector<double> flatten() const {
    std::vector<double> flat;
    flat.reserve(parameter_count());
    for (const auto& l : layers_) {
      for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
        for (Eigen::Index c = 0; c < l.weights.cols(); ++c) {
          flat.push_back(l.weights(r, c));
        }
      }
      for (Eigen::Index r = 0; r < l.biases.size(); ++r) flat.push_back(l.biases[r]);
    }
    return flat;
  }

  void assign(std::span<const double> flat) {
    if (flat.size() != parameter_count()) {
      throw std::invalid_argument("MLP parameter vector has length " +
                                  std::to_string(flat.size()) + ", expected " +
                                  std::to_string(parameter_count()));
    }
    std::size_t i = 0;
    for (auto& l : layers_) {
      for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
        for (Eigen::Index c = 0; c < l.weights.cols(); ++c) l.weights(r, c) = flat[i++];
      }
      for (Eigen::Index r = 0; r < l.biases.size(); ++r) l.biases[r] = flat[i++];
    }
  }

  double forward(double x) const {
    return forward_batch(std::span<const double>(&x, 1))[0];
  }

  std::vector<double> forward_batch(std::span<const double> xs) const {
    Eigen::MatrixXd a = row_of(xs);
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      Eigen::MatrixXd z = affine(layers_[l], a);
      a = is_hidden(l) ? detail::activate(activation_, z) : std::move(z);
    }
    return {a.data(), a.data() + a.size()};
  }

  /// Gradient of sum_j w_j * yhat_j w.r.t. every parameter, flat layout.
  std::vector<double> weighted_gradient(std::span<const double> xs,
                                        std::span<const double> weights,
                                        std::vector<double>* outputs = nullptr) const {
    const std::size_t depth = layers_.size();
    std::vector<Eigen::MatrixXd> inputs(depth);
    std::vector<Eigen::MatrixXd> pre(depth);
    std::vector<Eigen::MatrixXd> post(depth);
    Eigen::MatrixXd a = row_of(xs);
    for (std::size_t l = 0; l < depth; ++l) {
      inputs[l] = a;
      pre[l] = affine(layers_[l], a);
      post[l] = is_hidden(l) ? detail::activate(activation_, pre[l]) : pre[l];
      a = post[l];
    }
    if (outputs != nullptr) outputs->assign(a.data(), a.data() + a.size());

    Eigen::MatrixXd delta = row_of(weights);
    std::vector<DenseLayer> grads(depth);
    for (std::size_t l = depth; l-- > 0;) {
      if (is_hidden(l)) {
        delta = delta.cwiseProduct(
            detail::activation_slope(activation_, pre[l], post[l]));
      }
      grads[l].weights = delta * inputs[l].transpose();
      grads[l].biases = delta.rowwise().sum();
      if (l > 0) delta = layers_[l].weights.transpose() * delta;
    }
    std::vector<double> flat;
    flat.reserve(parameter_count());
    for (const auto& g : grads) {
      for (Eigen::Index r = 0; r < g.weights.rows(); ++r) {
        for (Eigen::Index c = 0; c < g.weights.cols(); ++c) flat.push_back(g.weights(r, c));
      }
      for (Eigen::Index r = 0; r < g.biases.size(); ++r) flat.push_back(g.biases[r]);
    }
    return flat;
  }

 private:
  bool is_hidden(std::size_t l) const { return l + 1 < layers_.size(); }

  static Eigen::MatrixXd row_of(std::span<const double> v) {
    Eigen::MatrixXd m(1, static_cast<Eigen::Index>(v.size()));
    for (std::size_t j = 0; j < v.size(); ++j) m(0, static_cast<Eigen::Index>(j)) = v[j];
    return m;
  }

  static Eigen::MatrixXd affine(const DenseLayer& layer, const Eigen::MatrixXd& a) {
    Eigen::MatrixXd z = layer.weights * a;
    z.colwise() += layer.biases;
    return z;
  }

  std::vector<std::size_t> hidden_;
  Activation activation_ = Activation::kTanh;
  std::vector<DenseLayer> layers_;
};

inline double forward(double x, const MlpNetwork& net) { return net.forward(x); }

/// Gradient of (yhat - target)^2 in the network's flat parameter layout.
inline std::vector<double> backward(double x, double target, const MlpNetwork& net) {
  const double weight = 2.0 * (net.forward(x) - target);
  return net.weighted_gradient(std::span<const double>(&x, 1),
                               std::span<const double>(&weight, 1));
}

/// L single-neuron layers: L-1 activated hidden neurons and a linear
/// output neuron, 2L parameters in total.
inline MlpNetwork chain_network(std::size_t layer_count, Activation activation) {
  if (layer_count == 0) throw std::invalid_argument("chain network needs L >= 1");
  return MlpNetwork(std::vector<std::size_t>(layer_count - 1, 1), activation);
}

/// Parameter count of a chain of L single-neuron layers.
inline std::size_t chain_param_count(std::size_t layer_count) {
  return 2 * layer_count;
}

}  // namespace cvqnn
