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

#include "cvqnn/gates.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "oracles.hpp"

using namespace cvqnn;

namespace {

const CutoffConfig kCfg(30);

double variance_x(const FockVector& psi) {
  const GateMatrix x = quadrature_x_op(kCfg);
  const double mean = expectation(x, psi);
  return expectation(x * x, psi) - mean * mean;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

TEST(Displacement, zero_is_identity) {
  EXPECT_EQ(displacement(0.0, kCfg).entries(), ComplexMatrix::Identity(30, 30));
}

TEST(Displacement, vacuum_becomes_coherent_state) {
  const FockVector psi = displacement(0.5, kCfg) * FockVector::vacuum(kCfg);
  EXPECT_NEAR(expectation(number_op(kCfg), psi), 0.25, 1e-8);
  const auto expected = oracle::coherent_amplitudes(0.5, 30);
  for (std::size_t n = 0; n < 20; ++n) {
    EXPECT_NEAR(std::abs(psi[n] - expected[n]), 0.0, 1e-12) << n;
  }
}

TEST(Displacement, quadrature_mean_is_sqrt2_alpha) {
  const FockVector psi = displacement(0.3, kCfg) * FockVector::vacuum(kCfg);
  EXPECT_NEAR(expectation(quadrature_x_op(kCfg), psi), 0.4242640687, 1e-9);
}

TEST(Displacement, composition_up_to_phase) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = rng.uniform(-0.5, 0.5);
    const double b = rng.uniform(-0.5, 0.5);
    const Complex lhs = (displacement(a, kCfg) * displacement(b, kCfg))(0, 0);
    const Complex rhs = displacement(a + b, kCfg)(0, 0);
    EXPECT_NEAR(std::abs(lhs), std::abs(rhs), 1e-8);
  }
}

TEST(Squeeze, zero_is_identity) {
  EXPECT_EQ(squeeze(0.0, kCfg).entries(), ComplexMatrix::Identity(30, 30));
}

TEST(Squeeze, vacuum_variance_and_parity) {
  const FockVector psi = squeeze(0.5, kCfg) * FockVector::vacuum(kCfg);
  EXPECT_NEAR(variance_x(psi), std::exp(-1.0) / 2.0, 1e-6);
  EXPECT_NEAR(variance_x(psi), 0.1839397, 1e-6);
  EXPECT_NEAR(std::abs(psi[1]), 0.0, 1e-12);
  for (std::size_t n = 1; n < 30; n += 2) EXPECT_NEAR(std::abs(psi[n]), 0.0, 1e-12);
}

TEST(Squeeze, matches_squeezed_vacuum_amplitudes) {
  // S(r)|0> = cosh(r)^-1/2 sum_m (-tanh r)^m sqrt((2m)!) / (2^m m!) |2m>
  const double r = 0.4;
  const FockVector psi = squeeze(r, kCfg) * FockVector::vacuum(kCfg);
  for (int m = 0; m < 8; ++m) {
    const double expected = std::pow(-std::tanh(r), m) * std::sqrt(factorial(2 * m)) /
                            (std::pow(2.0, m) * factorial(m)) / std::sqrt(std::cosh(r));
    EXPECT_NEAR(std::abs(psi[2 * static_cast<std::size_t>(m)] - expected), 0.0, 1e-9) << m;
  }
}

TEST(Squeeze, variance_within_tolerance_at_default_cutoff) {
  for (double r : {0.1, 0.5}) {
    const FockVector psi = squeeze(r, kCfg) * FockVector::vacuum(kCfg);
    EXPECT_NEAR(variance_x(psi), std::exp(-2.0 * r) / 2.0, 1e-6) << r;
  }
}

TEST(Squeeze, strong_squeezing_is_truncation_limited) {
  // At r = 0.75 the D = 30 error sits near 1e-5 and vanishes as D grows.
  const double r = 0.75;
  const double exact = std::exp(-2.0 * r) / 2.0;
  double previous = 1.0;
  for (std::size_t d : {30u, 36u, 40u, 60u}) {
    const CutoffConfig cfg(d);
    const FockVector psi = squeeze(r, cfg) * FockVector::vacuum(cfg);
    const GateMatrix x = quadrature_x_op(cfg);
    const double mean = expectation(x, psi);
    const double err = std::abs(expectation(x * x, psi) - mean * mean - exact);
    EXPECT_LT(err, previous) << d;
    previous = err;
    if (d == 30) {
      EXPECT_GT(err, 1e-6);
    } else {
      EXPECT_LT(err, 1e-6) << d;
    }
  }
  EXPECT_LT(previous, 1e-10);
}

TEST(Rotation, examples) {
  EXPECT_EQ(rotation(0.0, kCfg).entries(), ComplexMatrix::Identity(30, 30));
  EXPECT_NEAR(std::abs(rotation(std::numbers::pi, kCfg)(1, 1) - Complex(-1.0)), 0.0, 1e-15);
  const FockVector psi = rotation(1.234, kCfg) * FockVector::vacuum(kCfg);
  EXPECT_EQ(psi.amplitudes(), FockVector::vacuum(kCfg).amplitudes());
}

TEST(Kerr, examples) {
  const FockVector psi = kerr(2.5, kCfg) * FockVector::vacuum(kCfg);
  EXPECT_EQ(psi.amplitudes(), FockVector::vacuum(kCfg).amplitudes());
  EXPECT_NEAR(std::abs(kerr(std::numbers::pi, kCfg)(2, 2) - Complex(1.0)), 0.0, 1e-14);
  EXPECT_LT(max_abs((kerr(0.1, kCfg) * kerr(-0.1, kCfg)).entries() -
                    ComplexMatrix::Identity(30, 30)),
            1e-12);
  EXPECT_EQ(kerr(0.0, kCfg).entries(), ComplexMatrix::Identity(30, 30));
}

TEST(Gates, all_unitary_over_random_parameters) {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const double small = rng.uniform(-1.0, 1.0);
    const double angle = rng.uniform(-std::numbers::pi, std::numbers::pi);
    EXPECT_LT(displacement(small, kCfg).unitarity_error(), 1e-12);
    EXPECT_LT(squeeze(small, kCfg).unitarity_error(), 1e-12);
    EXPECT_LT(rotation(angle, kCfg).unitarity_error(), 1e-12);
    EXPECT_LT(kerr(angle, kCfg).unitarity_error(), 1e-12);
  }
}

TEST(Gates, rotation_and_kerr_commute_exactly) {
  const GateMatrix r = rotation(0.37, kCfg);
  const GateMatrix k = kerr(-1.1, kCfg);
  EXPECT_EQ((r * k).entries(), (k * r).entries());
}

TEST(Gates, reject_non_finite_parameters) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(displacement(nan, kCfg), std::invalid_argument);
  EXPECT_THROW(squeeze(inf, kCfg), std::invalid_argument);
  EXPECT_THROW(rotation(nan, kCfg), std::invalid_argument);
  EXPECT_THROW(kerr(inf, kCfg), std::invalid_argument);
  EXPECT_THROW(GateParam(GateKind::kKerr, nan), std::invalid_argument);
}

TEST(GateParam, soft_bound_applies_to_gaussian_gates_only) {
  EXPECT_TRUE(GateParam(GateKind::kDisplacement, 4.9).within_soft_bound());
  EXPECT_FALSE(GateParam(GateKind::kSqueeze, -5.1).within_soft_bound());
  EXPECT_TRUE(GateParam(GateKind::kRotation, 100.0).within_soft_bound());
  const GateMatrix d = make_gate(GateParam(GateKind::kDisplacement, 0.2), kCfg);
  EXPECT_LT(max_abs(d.entries() - displacement(0.2, kCfg).entries()), 1e-15);
}
