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

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cvqnn {

enum class GateKind { kDisplacement, kSqueeze, kRotation, kKerr };

inline std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kDisplacement: return "displacement";
    case GateKind::kSqueeze: return "squeeze";
    case GateKind::kRotation: return "rotation";
    case GateKind::kKerr: return "kerr";
  }
  return "unknown";
}

/// A gate kind together with its real parameter (alpha, xi, theta or chi).
struct GateParam {
  GateKind kind;
  double value;

  GateParam(GateKind k, double v) : kind(k), value(v) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string(gate_name(k)) +
                                  " parameter must be finite");
    }
  }

  /// Above this magnitude displacement/squeeze at D=30 can leak out of the
  /// truncated space; callers should look at leakage().
  static constexpr double kSoftBound = 5.0;
  bool within_soft_bound() const {
    return kind == GateKind::kRotation || kind == GateKind::kKerr ||
           std::abs(value) <= kSoftBound;
  }
};

namespace detail {
inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " parameter must be finite");
  }
}
}  // namespace detail

/// a^dagger - a. exp(alpha * this) is the displacement for real alpha.
inline GateMatrix displacement_generator(const CutoffConfig& cfg) {
  const ComplexMatrix a = annihilation_op(cfg).entries();
  return GateMatrix(a.adjoint() - a);
}

/// (a^2 - a^dagger^2) / 2. Positive xi squeezes the X quadrature.
inline GateMatrix squeeze_generator(const CutoffConfig& cfg) {
  const ComplexMatrix a = annihilation_op(cfg).entries();
  const ComplexMatrix a2 = a * a;
  return GateMatrix(0.5 * (a2 - a2.adjoint()));
}

/// Diagonal of i*n (rotation) or i*n^2 (Kerr), the generators of the
/// phase gates.
inline Eigen::VectorXd phase_generator_diagonal(GateKind kind,
                                                const CutoffConfig& cfg) {
  Eigen::VectorXd g(cfg.index_dim());
  for (Eigen::Index n = 0; n < g.size(); ++n) {
    const double nd = static_cast<double>(n);
    g[n] = kind == GateKind::kKerr ? nd * nd : nd;
  }
  return g;
}

inline GateMatrix diagonal_phase_gate(const Eigen::VectorXd& generator_diag,
                                      double angle) {
  ComplexVector d(generator_diag.size());
  for (Eigen::Index n = 0; n < d.size(); ++n) {
    d[n] = std::polar(1.0, angle * generator_diag[n]);
  }
  return GateMatrix(ComplexMatrix(d.asDiagonal()));
}

/// D(alpha) = exp(alpha a^dagger - alpha a), real alpha.
inline GateMatrix displacement(double alpha, const CutoffConfig& cfg) {
  detail::require_finite(alpha, "displacement");
  if (alpha == 0.0) return GateMatrix::identity(cfg);
  const ComplexMatrix g = alpha * displacement_generator(cfg).entries();
  return matrix_exp(GateMatrix(g));
}

/// S(xi) = exp((xi a^2 - xi a^dagger^2) / 2), real xi.
inline GateMatrix squeeze(double xi, const CutoffConfig& cfg) {
  detail::require_finite(xi, "squeeze");
  if (xi == 0.0) return GateMatrix::identity(cfg);
  const ComplexMatrix g = xi * squeeze_generator(cfg).entries();
  return matrix_exp(GateMatrix(g));
}

/// R(theta) = exp(i theta n).
inline GateMatrix rotation(double theta, const CutoffConfig& cfg) {
  detail::require_finite(theta, "rotation");
  return diagonal_phase_gate(phase_generator_diagonal(GateKind::kRotation, cfg),
                             theta);
}

/// Ideal Kerr gate K(chi) = exp(i chi n^2).
inline GateMatrix kerr(double chi, const CutoffConfig& cfg) {
  detail::require_finite(chi, "kerr");
  return diagonal_phase_gate(phase_generator_diagonal(GateKind::kKerr, cfg), chi);
}

inline GateMatrix make_gate(const GateParam& p, const CutoffConfig& cfg) {
  switch (p.kind) {
    case GateKind::kDisplacement: return displacement(p.value, cfg);
    case GateKind::kSqueeze: return squeeze(p.value, cfg);
    case GateKind::kRotation: return rotation(p.value, cfg);
    case GateKind::kKerr: return kerr(p.value, cfg);
  }
  throw std::invalid_argument("unknown gate kind");
}

}  // namespace cvqnn
