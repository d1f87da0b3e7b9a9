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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace cvqnn {

/// Central finite-difference gradient of f at params with step h.
template <typename F>
std::vector<double> central_difference(F&& f, std::span<const double> params, double h) {
  std::vector<double> grad(params.size());
  std::vector<double> probe(params.begin(), params.end());
  for (std::size_t i = 0; i < params.size(); ++i) {
    probe[i] = params[i] + h;
    const double up = f(std::span<const double>(probe));
    probe[i] = params[i] - h;
    const double down = f(std::span<const double>(probe));
    probe[i] = params[i];
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

/// Agreement bound between two gradient components: relative error when
/// the larger magnitude is at least `small_magnitude`, absolute otherwise.
struct GradientTolerance {
  double relative;
  double absolute;
  double small_magnitude;
};

/// Error divided by the applicable bound; <= 1 means the components agree.
inline double tolerance_ratio(double a, double b, const GradientTolerance& tol) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale < tol.small_magnitude) return std::abs(a - b) / tol.absolute;
  return std::abs(a - b) / scale / tol.relative;
}

inline constexpr GradientTolerance kQnnGradientTolerance{1e-4, 1e-7, 1e-3};
inline constexpr GradientTolerance kMlpGradientTolerance{1e-5, 1e-8, 1e-4};

}  // namespace cvqnn
