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

#include "cvqnn/fock.hpp"
#include "cvqnn/gates.hpp"
#include "cvqnn/model.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvqnn {

/// One quantum neuron K(chi) D(alpha) R(theta2) S(xi) R(theta1). Fields are
/// listed in order of application.
struct QnnLayerParams {
  double theta1 = 0.0;
  double xi = 0.0;
  double theta2 = 0.0;
  double alpha = 0.0;
  double chi = 0.0;

  static constexpr std::size_t kCount = 5;
  static constexpr std::array<GateKind, kCount> kGateOrder = {
      GateKind::kRotation, GateKind::kSqueeze, GateKind::kRotation,
      GateKind::kDisplacement, GateKind::kKerr};

  std::array<double, kCount> values() const {
    return {theta1, xi, theta2, alpha, chi};
  }

  friend bool operator==(const QnnLayerParams&, const QnnLayerParams&) = default;
};

class QnnParams {
 public:
  QnnParams() = default;
  explicit QnnParams(std::vector<QnnLayerParams> layers)
      : layers_(std::move(layers)) {
    validate();
  }

  /// All-zero parameters for an L-layer network.
  static QnnParams zeros(std::size_t layer_count) {
    return QnnParams(std::vector<QnnLayerParams>(layer_count));
  }

  /// Inverse of flatten(): five consecutive values per layer.
  static QnnParams from_flat(std::span<const double> flat) {
    if (flat.empty() || flat.size() % QnnLayerParams::kCount != 0) {
      throw std::invalid_argument(
          "QNN parameter vector length must be a positive multiple of 5, got " +
          std::to_string(flat.size()));
    }
    std::vector<QnnLayerParams> layers(flat.size() / QnnLayerParams::kCount);
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const double* p = flat.data() + l * QnnLayerParams::kCount;
      layers[l] = {p[0], p[1], p[2], p[3], p[4]};
    }
    return QnnParams(std::move(layers));
  }

  std::vector<double> flatten() const {
    std::vector<double> flat;
    flat.reserve(parameter_count());
    for (const auto& layer : layers_) {
      for (double v : layer.values()) flat.push_back(v);
    }
    return flat;
  }

  std::size_t layer_count() const { return layers_.size(); }
  std::size_t parameter_count() const {
    return QnnLayerParams::kCount * layers_.size();
  }
  const std::vector<QnnLayerParams>& layers() const { return layers_; }

 private:
  void validate() const {
    if (layers_.empty()) {
      throw std::invalid_argument("QNN needs at least one layer");
    }
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      for (double v : layers_[l].values()) {
        if (!std::isfinite(v)) {
          throw std::invalid_argument("QNN layer " + std::to_string(l) +
                                      " has a non-finite parameter");
        }
      }
    }
  }

  std::vector<QnnLayerParams> layers_;
};

/// Single-mode CV network simulator at a fixed cutoff.
///
/// Displacement and squeezing generators do not depend on the gate
/// parameter, so each is diagonalized once here; every gate application is
/// then two dense products with a phase in between. Gradients use the
/// adjoint method: d exp(pG)/dp = G exp(pG), so each parameter's derivative
/// is 2 Re <lambda|G|phi> with phi the state just after the gate and lambda
/// the observable pulled back to the same point.
class QnnModel {
 public:
  explicit QnnModel(CutoffConfig cfg = CutoffConfig())
      : cfg_(cfg),
        disp_(displacement_generator(cfg)),
        squeeze_(squeeze_generator(cfg)),
        rot_diag_(phase_generator_diagonal(GateKind::kRotation, cfg)),
        kerr_diag_(phase_generator_diagonal(GateKind::kKerr, cfg)) {
    const auto d = cfg_.index_dim();
    sqrt_n_.resize(d);
    for (Eigen::Index n = 0; n < d; ++n) {
      sqrt_n_[n] = std::sqrt(static_cast<double>(n));
    }
    vacuum_in_disp_basis_ = disp_.vectors_adjoint().col(0);
  }

  const CutoffConfig& cutoff() const { return cfg_; }

  /// D(x)|0>.
  FockVector encode(double x) const {
    detail::require_finite(x, "encoding");
    if (x == 0.0) return FockVector::vacuum(cfg_);
    ComplexMatrix state = encode_batch(std::span<const double>(&x, 1));
    return FockVector(state.col(0));
  }

  FockVector evolve(double x, const QnnParams& params) const {
    ComplexMatrix state = encode_batch(std::span<const double>(&x, 1));
    const auto flat = params.flatten();
    for (std::size_t k = 0; k < flat.size(); ++k) {
      apply_gate(gate_kind(k), flat[k], state, false);
    }
    return FockVector(state.col(0));
  }

  /// <X> of the evolved state.
  double forward(double x, const QnnParams& params) const {
    const auto out = forward_batch(std::span<const double>(&x, 1),
                                   params.flatten());
    return out.values[0];
  }

  /// d<X>/dp for all 5L parameters, in flatten() order.
  std::vector<double> gradient(double x, const QnnParams& params) const {
    const double weight = 1.0;
    const auto flat = params.flatten();
    const auto t = trace(std::span<const double>(&x, 1), flat);
    return backprop(t, flat, std::span<const double>(&weight, 1));
  }

  Prediction forward_batch(std::span<const double> xs,
                               std::span<const double> flat_params) const {
    check_params(flat_params);
    ComplexMatrix state = encode_batch(xs);
    for (std::size_t k = 0; k < flat_params.size(); ++k) {
      apply_gate(gate_kind(k), flat_params[k], state, false);
    }
    Prediction out;
    out.values = quadrature_means(state);
    out.max_leakage = max_leakage(state);
    return out;
  }

  /// Mean squared error over (xs, ys) and its gradient w.r.t. the flat
  /// parameter vector.
  LossGradient loss_gradient(std::span<const double> flat_params,
                             std::span<const double> xs,
                             std::span<const double> ys) const {
    if (xs.size() != ys.size() || xs.empty()) {
      throw std::invalid_argument("loss_gradient: inputs/targets size mismatch");
    }
    const auto t = trace(xs, flat_params);
    const double n = static_cast<double>(xs.size());
    std::vector<double> residual_weights(xs.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double r = t.outputs[j] - ys[j];
      sum += r * r;
      residual_weights[j] = 2.0 * r / n;
    }
    LossGradient out;
    out.loss = sum / n;
    out.gradient = backprop(t, flat_params, residual_weights);
    return out;
  }

 private:
  static GateKind gate_kind(std::size_t flat_index) {
    return QnnLayerParams::kGateOrder[flat_index % QnnLayerParams::kCount];
  }

  static void check_params(std::span<const double> flat) {
    if (flat.empty() || flat.size() % QnnLayerParams::kCount != 0) {
      throw std::invalid_argument(
          "QNN parameter vector length must be a positive multiple of 5");
    }
  }

  ComplexMatrix encode_batch(std::span<const double> xs) const {
    const auto d = cfg_.index_dim();
    const auto n = static_cast<Eigen::Index>(xs.size());
    ComplexMatrix coeffs(d, n);
    const auto& lambda = disp_.eigenvalues();
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < d; ++k) {
        coeffs(k, j) = std::polar(1.0, xs[static_cast<std::size_t>(j)] * lambda[k]) *
                       vacuum_in_disp_basis_[k];
      }
    }
    return disp_.vectors() * coeffs;
  }

  void apply_gate(GateKind kind, double p, ComplexMatrix& state,
                  bool inverse) const {
    const double t = inverse ? -p : p;
    switch (kind) {
      case GateKind::kRotation:
        apply_diagonal(rot_diag_, t, state);
        break;
      case GateKind::kKerr:
        apply_diagonal(kerr_diag_, t, state);
        break;
      case GateKind::kDisplacement:
        apply_eigen(disp_, t, state);
        break;
      case GateKind::kSqueeze:
        apply_eigen(squeeze_, t, state);
        break;
    }
  }

  static void apply_diagonal(const Eigen::VectorXd& diag, double t,
                             ComplexMatrix& state) {
    if (t == 0.0) return;
    for (Eigen::Index r = 0; r < state.rows(); ++r) {
      state.row(r) *= std::polar(1.0, t * diag[r]);
    }
  }

  static void apply_eigen(const GeneratorEigenbasis& basis, double t,
                          ComplexMatrix& state) {
    if (t == 0.0) return;
    ComplexMatrix rotated = basis.vectors_adjoint() * state;
    rotated = basis.phases(t).asDiagonal() * rotated;
    state.noalias() = basis.vectors() * rotated;
  }

  /// G * state for the generator of `kind` (G anti-Hermitian).
  ComplexMatrix apply_generator(GateKind kind, const ComplexMatrix& s) const {
    const Eigen::Index d = s.rows();
    ComplexMatrix out = ComplexMatrix::Zero(d, s.cols());
    const Complex i(0.0, 1.0);
    switch (kind) {
      case GateKind::kRotation:
        for (Eigen::Index n = 0; n < d; ++n) out.row(n) = (i * rot_diag_[n]) * s.row(n);
        break;
      case GateKind::kKerr:
        for (Eigen::Index n = 0; n < d; ++n) out.row(n) = (i * kerr_diag_[n]) * s.row(n);
        break;
      case GateKind::kDisplacement:
        // (a^dagger - a) s: sqrt(n) s[n-1] - sqrt(n+1) s[n+1]
        for (Eigen::Index n = 0; n < d; ++n) {
          if (n > 0) out.row(n) += sqrt_n_[n] * s.row(n - 1);
          if (n + 1 < d) out.row(n) -= sqrt_n_[n + 1] * s.row(n + 1);
        }
        break;
      case GateKind::kSqueeze:
        // (a^2 - a^dagger^2)/2 s
        for (Eigen::Index n = 0; n < d; ++n) {
          if (n + 2 < d) {
            out.row(n) += 0.5 * sqrt_n_[n + 1] * sqrt_n_[n + 2] * s.row(n + 2);
          }
          if (n >= 2) out.row(n) -= 0.5 * sqrt_n_[n] * sqrt_n_[n - 1] * s.row(n - 2);
        }
        break;
    }
    return out;
  }

  /// X * state, X = (a + a^dagger)/sqrt(2).
  ComplexMatrix apply_quadrature(const ComplexMatrix& s) const {
    const Eigen::Index d = s.rows();
    ComplexMatrix out = ComplexMatrix::Zero(d, s.cols());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index n = 0; n < d; ++n) {
      if (n > 0) out.row(n) += (inv_sqrt2 * sqrt_n_[n]) * s.row(n - 1);
      if (n + 1 < d) out.row(n) += (inv_sqrt2 * sqrt_n_[n + 1]) * s.row(n + 1);
    }
    return out;
  }

  std::vector<double> quadrature_means(const ComplexMatrix& state) const {
    const ComplexMatrix xs = apply_quadrature(state);
    std::vector<double> out(static_cast<std::size_t>(state.cols()));
    for (Eigen::Index j = 0; j < state.cols(); ++j) {
      out[static_cast<std::size_t>(j)] = state.col(j).dot(xs.col(j)).real();
    }
    return out;
  }

  static double max_leakage(const ComplexMatrix& state) {
    const Eigen::Index d = state.rows();
    const Eigen::Index top = std::min<Eigen::Index>(kLeakageLevels, d);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < state.cols(); ++j) {
      const double total = state.col(j).squaredNorm();
      const double high = state.col(j).tail(top).squaredNorm();
      if (total > 0.0) worst = std::max(worst, high / total);
    }
    return worst;
  }

  struct ForwardTrace {
    std::vector<ComplexMatrix> after;  // state after each gate
    std::vector<double> outputs;
  };

  ForwardTrace trace(std::span<const double> xs,
                     std::span<const double> flat) const {
    check_params(flat);
    ForwardTrace t;
    t.after.resize(flat.size());
    ComplexMatrix state = encode_batch(xs);
    for (std::size_t k = 0; k < flat.size(); ++k) {
      apply_gate(gate_kind(k), flat[k], state, false);
      t.after[k] = state;
    }
    t.outputs = quadrature_means(state);
    return t;
  }

  /// Sum_j w_j d<X>_j/dp for every parameter p.
  std::vector<double> backprop(const ForwardTrace& t,
                               std::span<const double> flat,
                               std::span<const double> weights) const {
    ComplexMatrix lambda = apply_quadrature(t.after.back());
    for (std::size_t j = 0; j < weights.size(); ++j) {
      lambda.col(static_cast<Eigen::Index>(j)) *= weights[j];
    }
    std::vector<double> grad(flat.size(), 0.0);
    for (std::size_t k = flat.size(); k-- > 0;) {
      const GateKind kind = gate_kind(k);
      const ComplexMatrix g_phi = apply_generator(kind, t.after[k]);
      grad[k] = 2.0 * lambda.conjugate().cwiseProduct(g_phi).sum().real();
      apply_gate(kind, flat[k], lambda, true);
    }
    return grad;
  }

  CutoffConfig cfg_;
  GeneratorEigenbasis disp_;
  GeneratorEigenbasis squeeze_;
  Eigen::VectorXd rot_diag_;
  Eigen::VectorXd kerr_diag_;
  Eigen::VectorXd sqrt_n_;
  ComplexVector vacuum_in_disp_basis_;
};

inline FockVector encode(double x, const CutoffConfig& cfg) {
  return QnnModel(cfg).encode(x);
}

inline double forward(double x, const QnnParams& params, const CutoffConfig& cfg) {
  return QnnModel(cfg).forward(x, params);
}

inline std::vector<double> gradient(double x, const QnnParams& params,
                                    const CutoffConfig& cfg) {
  return QnnModel(cfg).gradient(x, params);
}

}  // namespace cvqnn
