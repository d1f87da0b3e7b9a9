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

#include "cvqnn/qnn.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "cvqnn/numdiff.hpp"
#include "oracles.hpp"

using namespace cvqnn;

namespace {

const CutoffConfig kCfg(30);
const double kSqrt2 = std::sqrt(2.0);

const QnnModel& model() {
  static const QnnModel m(kCfg);
  return m;
}

std::vector<double> random_flat(Rng& rng, std::size_t layers, double magnitude) {
  std::vector<double> p(5 * layers);
  for (auto& v : p) v = rng.uniform(-magnitude, magnitude);
  return p;
}

/// <X> by multiplying the dense gate matrices built one at a time.
double dense_forward(double x, const QnnParams& params) {
  FockVector psi = displacement(x, kCfg) * FockVector::vacuum(kCfg);
  for (const auto& l : params.layers()) {
    psi = rotation(l.theta1, kCfg) * psi;
    psi = squeeze(l.xi, kCfg) * psi;
    psi = rotation(l.theta2, kCfg) * psi;
    psi = displacement(l.alpha, kCfg) * psi;
    psi = kerr(l.chi, kCfg) * psi;
  }
  return expectation(quadrature_x_op(kCfg), psi);
}

}  // namespace

TEST(QnnParams, flat_layout_and_count) {
  const std::vector<double> flat = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const QnnParams p = QnnParams::from_flat(flat);
  EXPECT_EQ(p.layer_count(), 2u);
  EXPECT_EQ(p.parameter_count(), 10u);
  EXPECT_EQ(p.layers()[1].theta1, 6);
  EXPECT_EQ(p.layers()[1].xi, 7);
  EXPECT_EQ(p.layers()[1].theta2, 8);
  EXPECT_EQ(p.layers()[1].alpha, 9);
  EXPECT_EQ(p.layers()[1].chi, 10);
  EXPECT_EQ(p.flatten(), flat);
  for (std::size_t l = 1; l <= 5; ++l) EXPECT_EQ(QnnParams::zeros(l).parameter_count(), 5 * l);
}

TEST(QnnParams, rejects_malformed_inputs) {
  EXPECT_THROW(QnnParams::from_flat(std::vector<double>{1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(QnnParams::from_flat(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(QnnParams::zeros(0), std::invalid_argument);
  std::vector<double> bad(5, 0.0);
  bad[3] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(QnnParams::from_flat(bad), std::invalid_argument);
}

TEST(Encode, examples) {
  EXPECT_EQ(model().encode(0.0).amplitudes(), FockVector::vacuum(kCfg).amplitudes());
  EXPECT_NEAR(expectation(quadrature_x_op(kCfg), model().encode(0.3)), 0.4242641, 1e-7);
  EXPECT_NEAR(expectation(quadrature_x_op(kCfg), model().encode(0.3)), kSqrt2 * 0.3, 1e-9);

  const FockVector one = model().encode(1.0);
  double tail = 0.0;
  for (std::size_t n = 27; n < 30; ++n) tail += one.population(n);
  EXPECT_LT(tail, 1e-20);
  EXPECT_LT(std::abs(one.squared_norm() - 1.0), 1e-10);

  const auto expected = oracle::coherent_amplitudes(-0.7, 30);
  const FockVector minus = encode(-0.7, kCfg);
  for (std::size_t n = 0; n < 30; ++n) EXPECT_NEAR(std::abs(minus[n] - expected[n]), 0.0, 1e-12);
}

TEST(Forward, zero_parameters_read_back_the_encoding) {
  for (std::size_t layers : {1u, 3u, 5u}) {
    for (int i = 0; i <= 10; ++i) {
      const double x = -1.0 + 0.2 * i;
      EXPECT_NEAR(model().forward(x, QnnParams::zeros(layers)), kSqrt2 * x, 1e-9);
    }
  }
}

TEST(Forward, phase_gates_leave_vacuum_at_zero) {
  QnnLayerParams layer;
  layer.theta1 = 0.4;
  layer.theta2 = -1.3;
  layer.chi = 0.8;
  EXPECT_NEAR(model().forward(0.0, QnnParams({layer, layer, layer})), 0.0, 1e-9);
}

TEST(Forward, displacements_compose) {
  QnnLayerParams layer;
  layer.alpha = 0.2;
  EXPECT_NEAR(forward(0.5, QnnParams({layer}), kCfg), kSqrt2 * 0.7, 1e-8);
}

TEST(Forward, agrees_with_dense_gate_products) {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t layers = 1 + static_cast<std::size_t>(trial % 4);
    const QnnParams p = QnnParams::from_flat(random_flat(rng, layers, 0.8));
    const double x = rng.uniform(-1.0, 1.0);
    EXPECT_NEAR(model().forward(x, p), dense_forward(x, p), 1e-10);
    const FockVector psi = model().evolve(x, p);
    EXPECT_LT(std::abs(psi.squared_norm() - 1.0), 1e-10);
  }
}

TEST(Forward, deterministic_and_bounded) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t layers = 1 + static_cast<std::size_t>(trial % 5);
    const QnnParams p = QnnParams::from_flat(random_flat(rng, layers, 1.0));
    const double x = rng.uniform(-1.0, 1.0);
    const double a = model().forward(x, p);
    const double b = model().forward(x, p);
    EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
    EXPECT_LT(std::abs(a), 20.0);
  }
}

TEST(Gradient, displacement_derivative_at_zero_is_sqrt2) {
  const auto g = gradient(0.3, QnnParams::zeros(1), kCfg);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_NEAR(g[3], kSqrt2, 1e-6);
}

TEST(Gradient, rotation_derivative_vanishes_on_vacuum) {
  const auto g = model().gradient(0.0, QnnParams::zeros(2));
  EXPECT_NEAR(g[0], 0.0, 1e-12);
  EXPECT_NEAR(g[5], 0.0, 1e-12);
}

TEST(Gradient, matches_central_differences) {
  Rng rng(99);
  auto check = [&](double x, const std::vector<double>& flat) {
    const auto analytic = model().gradient(x, QnnParams::from_flat(flat));
    const auto numeric = central_difference(
        [&](std::span<const double> p) { return model().forward(x, QnnParams::from_flat(p)); },
        flat, 1e-5);
    for (std::size_t i = 0; i < flat.size(); ++i) {
      EXPECT_LE(tolerance_ratio(analytic[i], numeric[i], kQnnGradientTolerance), 1.0)
          << "component " << i << ": " << analytic[i] << " vs " << numeric[i];
    }
  };
  check(0.4, random_flat(rng, 3, 0.5));
  for (int draw = 0; draw < 20; ++draw) {
    const std::size_t layers = 1 + static_cast<std::size_t>(draw % 3);
    check(rng.uniform(-1.0, 1.0), random_flat(rng, layers, 0.5));
  }
}

TEST(LossGradient, matches_central_differences_of_mse) {
  Rng rng(8);
  const std::vector<double> xs = {-0.9, -0.3, 0.2, 0.8};
  const std::vector<double> ys = {0.1, -0.5, 0.7, 0.0};
  const auto flat = random_flat(rng, 2, 0.5);
  const LossGradient lg = model().loss_gradient(flat, xs, ys);
  const auto numeric = central_difference(
      [&](std::span<const double> p) { return model().loss_gradient(p, xs, ys).loss; }, flat,
      1e-5);
  for (std::size_t i = 0; i < flat.size(); ++i) {
    EXPECT_LE(tolerance_ratio(lg.gradient[i], numeric[i], kQnnGradientTolerance), 1.0) << i;
  }
  double mse = 0.0;
  const auto out = model().forward_batch(xs, flat);
  for (std::size_t j = 0; j < xs.size(); ++j) mse += std::pow(out.values[j] - ys[j], 2);
  EXPECT_NEAR(lg.loss, mse / 4.0, 1e-14);
  EXPECT_THROW(model().loss_gradient(flat, xs, std::vector<double>{1.0}),
               std::invalid_argument);
}

TEST(Leakage, reported_for_large_displacements) {
  const std::vector<double> xs = {0.0, 1.0};
  std::vector<double> flat(5, 0.0);
  EXPECT_LT(model().forward_batch(xs, flat).max_leakage, 1e-20);
  flat[3] = 4.0;
  EXPECT_GT(model().forward_batch(xs, flat).max_leakage, kLeakageThreshold);
}
