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

// Independent reference computations used only by the tests.

#pragma once

#include "cvqnn/fock.hpp"
#include "cvqnn/random.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace cvqnn::oracle {

/// exp(M) by scaling and squaring of a truncated Taylor series.
inline ComplexMatrix taylor_expm(const ComplexMatrix& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scaled = norm;
  while (scaled > 0.25) {
    scaled /= 2.0;
    ++squarings;
  }
  const ComplexMatrix a = m / std::pow(2.0, squarings);
  ComplexMatrix result = ComplexMatrix::Identity(m.rows(), m.cols());
  ComplexMatrix term = result;
  for (int k = 1; k <= 30; ++k) {
    term = (term * a / static_cast<double>(k)).eval();
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = (result * result).eval();
  return result;
}

/// Random anti-Hermitian matrix with max row-sum norm equal to `norm`.
inline ComplexMatrix random_anti_hermitian(Rng& rng, Eigen::Index dim, double norm) {
  ComplexMatrix h(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      h(r, c) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
  }
  ComplexMatrix g = h - h.adjoint();
  const double current = g.cwiseAbs().rowwise().sum().maxCoeff();
  return g * (norm / current);
}

inline FockVector random_state(Rng& rng, Eigen::Index dim) {
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    v[i] = Complex(rng.normal(0.0, 1.0), rng.normal(0.0, 1.0));
  }
  v.normalize();
  return FockVector(v);
}

/// Coherent-state amplitudes exp(-a^2/2) a^n / sqrt(n!) for real a.
inline std::vector<double> coherent_amplitudes(double alpha, std::size_t dim) {
  std::vector<double> c(dim);
  double term = std::exp(-alpha * alpha / 2.0);
  for (std::size_t n = 0; n < dim; ++n) {
    c[n] = term;
    term *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return c;
}

}  // namespace cvqnn::oracle
