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

#include <vector>

namespace cvqnn {

/// Leakage fraction above which a run is flagged as truncation-limited.
inline constexpr double kLeakageThreshold = 1e-4;

/// Batch loss value and its gradient w.r.t. a flat parameter vector.
struct LossGradient {
  double loss = 0.0;
  std::vector<double> gradient;
};

/// Batch model outputs. max_leakage is the worst truncation diagnostic over
/// the batch; classical models report 0.
struct Prediction {
  std::vector<double> values;
  double max_leakage = 0.0;
};

}  // namespace cvqnn
