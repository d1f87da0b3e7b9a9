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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cvqnn {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Number of Fock levels |0>..|D-1> kept in the truncated single-mode space.
class CutoffConfig {
 public:
  static constexpr std::size_t kDefaultDim = 30;

  CutoffConfig() = default;
  explicit CutoffConfig(std::size_t dim) : dim_(dim) {
    if (dim < 2) {
      throw std::invalid_argument("cutoff dimension must be >= 2, got " +
                                  std::to_string(dim));
    }
  }

  std::size_t dim() const { return dim_; }
  Eigen::Index index_dim() const { return static_cast<Eigen::Index>(dim_); }

  friend bool operator==(const CutoffConfig&, const CutoffConfig&) = default;

 private:
  std::size_t dim_ = kDefaultDim;
};

/// Largest entry magnitude. All matrix tolerances in this library use it.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Pure state c_n |n> in the truncated Fock basis.
class FockVector {
 public:
  FockVector() = default;
  explicit FockVector(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() < 2) {
      throw std::invalid_argument("FockVector needs at least 2 levels");
    }
  }

  static FockVector basis(const CutoffConfig& cfg, std::size_t n) {
    if (n >= cfg.dim()) {
      throw std::out_of_range("Fock level " + std::to_string(n) +
                              " outside cutoff " + std::to_string(cfg.dim()));
    }
    ComplexVector v = ComplexVector::Zero(cfg.index_dim());
    v[static_cast<Eigen::Index>(n)] = 1.0;
    return FockVector(std::move(v));
  }
  static FockVector vacuum(const CutoffConfig& cfg) { return basis(cfg, 0); }

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const ComplexVector& amplitudes() const { return amps_; }
  Complex operator[](std::size_t n) const {
    return amps_[static_cast<Eigen::Index>(n)];
  }
  double squared_norm() const { return amps_.squaredNorm(); }

  /// Population of level n.
  double population(std::size_t n) const { return std::norm((*this)[n]); }

 private:
  ComplexVector amps_;
};

/// Dense D x D operator on the truncated space.
class GateMatrix {
 public:
  GateMatrix() = default;
  explicit GateMatrix(ComplexMatrix entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) {
      throw std::invalid_argument("GateMatrix must be square");
    }
  }

  static GateMatrix identity(const CutoffConfig& cfg) {
    return GateMatrix(ComplexMatrix::Identity(cfg.index_dim(), cfg.index_dim()));
  }

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& entries() const { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const {
    return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  GateMatrix adjoint() const { return GateMatrix(m_.adjoint()); }

  /// max |U^dagger U - I|
  double unitarity_error() const {
    return max_abs(m_.adjoint() * m_ -
                   ComplexMatrix::Identity(m_.rows(), m_.cols()));
  }
  double hermiticity_error() const { return max_abs(m_ - m_.adjoint()); }
  double anti_hermiticity_error() const { return max_abs(m_ + m_.adjoint()); }

  FockVector apply(const FockVector& psi) const {
    check_dim(psi.dim());
    return FockVector(m_ * psi.amplitudes());
  }

  friend GateMatrix operator*(const GateMatrix& a, const GateMatrix& b) {
    a.check_dim(b.dim());
    return GateMatrix(a.m_ * b.m_);
  }
  friend FockVector operator*(const GateMatrix& a, const FockVector& psi) {
    return a.apply(psi);
  }

 private:
  void check_dim(std::size_t other) const {
    if (other != dim()) {
      std::ostringstream os;
      os << "dimension mismatch: operator is " << dim() << "x" << dim()
         << ", operand has dimension " << other;
      throw std::invalid_argument(os.str());
    }
  }

  ComplexMatrix m_;
};

inline GateMatrix annihilation_op(const CutoffConfig& cfg) {
  const auto d = cfg.index_dim();
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return GateMatrix(std::move(a));
}

inline GateMatrix creation_op(const CutoffConfig& cfg) {
  return annihilation_op(cfg).adjoint();
}

inline GateMatrix number_op(const CutoffConfig& cfg) {
  const auto d = cfg.index_dim();
  ComplexMatrix n = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
  return GateMatrix(std::move(n));
}

/// X = (a^dagger + a) / sqrt(2). Real symmetric tridiagonal.
inline GateMatrix quadrature_x_op(const CutoffConfig& cfg) {
  const auto d = cfg.index_dim();
  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) {
    const double v = std::sqrt(static_cast<double>(n) / 2.0);
    x(n - 1, n) = v;
    x(n, n - 1) = v;
  }
  return GateMatrix(std::move(x));
}

inline constexpr double kAntiHermitianTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-6;

/// Eigendecomposition of a generator G = iH with H Hermitian, so that
/// exp(t G) = V diag(exp(i t lambda)) V^dagger for any real t.
class GeneratorEigenbasis {
 public:
  GeneratorEigenbasis() = default;
  explicit GeneratorEigenbasis(const GateMatrix& generator) {
    const double err = generator.anti_hermiticity_error();
    if (!(err < kAntiHermitianTolerance)) {
      std::ostringstream os;
      os << "matrix_exp: generator is not anti-Hermitian: max|G + G^dagger| = "
         << err << " exceeds " << kAntiHermitianTolerance;
      throw std::invalid_argument(os.str());
    }
    // H = -iG, symmetrized to remove rounding asymmetry before the solver.
    ComplexMatrix h = Complex(0.0, -1.0) * generator.entries();
    h = (0.5 * (h + h.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("matrix_exp: Hermitian eigensolver failed");
    }
    vectors_ = solver.eigenvectors();
    vectors_adj_ = vectors_.adjoint();
    values_ = solver.eigenvalues();
  }

  std::size_t dim() const { return static_cast<std::size_t>(values_.size()); }
  const ComplexMatrix& vectors() const { return vectors_; }
  const ComplexMatrix& vectors_adjoint() const { return vectors_adj_; }
  const Eigen::VectorXd& eigenvalues() const { return values_; }

  /// exp(i t lambda_k) for every eigenvalue.
  ComplexVector phases(double t) const {
    ComplexVector p(values_.size());
    for (Eigen::Index k = 0; k < values_.size(); ++k) {
      p[k] = std::polar(1.0, t * values_[k]);
    }
    return p;
  }

  /// exp(t G) as a dense matrix.
  GateMatrix exponentiate(double t = 1.0) const {
    return GateMatrix(vectors_ * phases(t).asDiagonal() * vectors_adj_);
  }

 private:
  ComplexMatrix vectors_;
  ComplexMatrix vectors_adj_;
  Eigen::VectorXd values_;
};

/// exp(G) for anti-Hermitian G. Throws std::invalid_argument otherwise.
inline GateMatrix matrix_exp(const GateMatrix& generator) {
  return GeneratorEigenbasis(generator).exponentiate(1.0);
}

/// <psi|op|psi>. The operator must be Hermitian and the state normalized.
inline double expectation(const GateMatrix& op, const FockVector& psi) {
  if (op.dim() != psi.dim()) {
    throw std::invalid_argument("expectation: operator/state dimension mismatch");
  }
  const double herm = op.hermiticity_error();
  if (!(herm < kHermitianTolerance)) {
    std::ostringstream os;
    os << "expectation: operator is not Hermitian: max|O - O^dagger| = " << herm;
    throw std::invalid_argument(os.str());
  }
  const double norm_dev = std::abs(psi.squared_norm() - 1.0);
  if (!(norm_dev < kNormTolerance)) {
    std::ostringstream os;
    os << "expectation: state is not normalized: | |psi|^2 - 1 | = " << norm_dev;
    throw std::invalid_argument(os.str());
  }
  const Complex v = psi.amplitudes().dot(op.entries() * psi.amplitudes());
  if (std::abs(v.imag()) > 1e-10) {
    std::ostringstream os;
    os << "expectation: imaginary residue " << v.imag() << " above 1e-10";
    throw std::runtime_error(os.str());
  }
  return v.real();
}

inline constexpr std::size_t kLeakageLevels = 3;

/// Population held in the top `levels` Fock levels, the truncation-error
/// diagnostic.
inline double leakage(const FockVector& psi,
                      std::size_t levels = kLeakageLevels) {
  const std::size_t d = psi.dim();
  const std::size_t first = d > levels ? d - levels : 0;
  double p = 0.0;
  for (std::size_t n = first; n < d; ++n) p += psi.population(n);
  return p;
}

}  // namespace cvqnn
