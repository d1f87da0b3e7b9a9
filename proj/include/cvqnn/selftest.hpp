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
#include "cvqnn/harness.hpp"
#include "cvqnn/mlp.hpp"
#include "cvqnn/numdiff.hpp"
#include "cvqnn/qnn.hpp"
#include "cvqnn/random.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace cvqnn {

struct CheckResult {
  bool passed = false;
  std::string detail;
};

struct SelfCheck {
  std::string name;
  std::function<CheckResult(const CutoffConfig&)> run;
};

namespace detail {

inline CheckResult worst_case(double worst, double tol, const std::string& what) {
  std::ostringstream os;
  os << what << ": worst deviation " << worst << " (tolerance " << tol << ")";
  return {worst < tol, os.str()};
}

inline double variance_x(const FockVector& psi, const CutoffConfig& cfg) {
  const GateMatrix x = quadrature_x_op(cfg);
  const double mean = expectation(x, psi);
  const double second = expectation(x * x, psi);
  return second - mean * mean;
}

}  // namespace detail

/// Fast analytic checks of the simulator and the classical networks.
inline std::vector<SelfCheck> selftest_checks() {
  std::vector<SelfCheck> checks;

  checks.push_back({"gate_unitarity", [](const CutoffConfig& cfg) {
    Rng rng(2024);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double small = rng.uniform(-1.0, 1.0);
      const double angle = rng.uniform(-std::numbers::pi, std::numbers::pi);
      worst = std::max({worst, displacement(small, cfg).unitarity_error(),
                        squeeze(small, cfg).unitarity_error(),
                        rotation(angle, cfg).unitarity_error(),
                        kerr(angle, cfg).unitarity_error()});
    }
    return detail::worst_case(worst, 1e-12, "max|U^dagger U - I| over 100 draws");
  }});

  checks.push_back({"coherent_photon_number", [](const CutoffConfig& cfg) {
    const GateMatrix n = number_op(cfg);
    double worst = 0.0;
    for (double alpha : {0.1, 0.5, 1.0}) {
      const FockVector psi = displacement(alpha, cfg) * FockVector::vacuum(cfg);
      worst = std::max(worst, std::abs(expectation(n, psi) - alpha * alpha));
    }
    return detail::worst_case(worst, 1e-6, "<n> = alpha^2");
  }});

  checks.push_back({"encode_quadrature", [](const CutoffConfig& cfg) {
    const QnnModel model(cfg);
    const GateMatrix x_op = quadrature_x_op(cfg);
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i) {
      const double x = -1.0 + 0.2 * i;
      worst = std::max(worst,
                       std::abs(expectation(x_op, model.encode(x)) - std::sqrt(2.0) * x));
    }
    return detail::worst_case(worst, 1e-9, "<X> = sqrt(2) x");
  }});

  // r = 0.75 is left out: at D = 30 its truncated tail alone shifts Var(X)
  // by about 4e-6.
  checks.push_back({"squeezed_variance", [](const CutoffConfig& cfg) {
    double worst = 0.0;
    for (double r : {0.1, 0.5}) {
      const FockVector psi = squeeze(r, cfg) * FockVector::vacuum(cfg);
      worst = std::max(worst, std::abs(detail::variance_x(psi, cfg) -
                                       std::exp(-2.0 * r) / 2.0));
    }
    return detail::worst_case(worst, 1e-6, "Var(X) = exp(-2r)/2");
  }});

  checks.push_back({"squeezed_parity", [](const CutoffConfig& cfg) {
    const FockVector psi = squeeze(0.5, cfg) * FockVector::vacuum(cfg);
    double worst = 0.0;
    for (std::size_t n = 1; n < psi.dim(); n += 2) worst = std::max(worst, std::abs(psi[n]));
    return detail::worst_case(worst, 1e-12, "odd amplitudes of squeezed vacuum");
  }});

  checks.push_back({"phase_gates", [](const CutoffConfig& cfg) {
    const GateMatrix r = rotation(std::numbers::pi, cfg);
    const GateMatrix k = kerr(0.7, cfg);
    const double worst =
        std::max(std::abs(r(1, 1) - Complex(-1.0, 0.0)),
                 max_abs((r * k).entries() - (k * r).entries()));
    return detail::worst_case(worst, 1e-12, "R(pi)[1,1] = -1 and [R, K] = 0");
  }});

  checks.push_back({"qnn_gradient", [](const CutoffConfig& cfg) {
    const QnnModel model(cfg);
    Rng rng(7);
    double worst = 0.0;
    for (int draw = 0; draw < 5; ++draw) {
      const std::size_t layers = 1 + static_cast<std::size_t>(draw % 3);
      std::vector<double> flat(5 * layers);
      for (auto& v : flat) v = rng.uniform(-0.5, 0.5);
      const double x = rng.uniform(-1.0, 1.0);
      const auto analytic = model.gradient(x, QnnParams::from_flat(flat));
      const auto numeric = central_difference(
          [&](std::span<const double> p) { return model.forward(x, QnnParams::from_flat(p)); },
          flat, 1e-5);
      for (std::size_t i = 0; i < flat.size(); ++i) {
        worst = std::max(worst,
                         tolerance_ratio(analytic[i], numeric[i], kQnnGradientTolerance));
      }
    }
    return detail::worst_case(worst, 1.0, "adjoint vs central differences (error/bound)");
  }});

  checks.push_back({"mlp_backprop", [](const CutoffConfig&) {
    Rng rng(11);
    double worst = 0.0;
    for (Activation act : {Activation::kTanh, Activation::kSigmoid, Activation::kRelu}) {
      for (int draw = 0; draw < 5; ++draw) {
        MlpNetwork net({2, 3}, act);
        net.initialize(rng);
        auto flat = net.flatten();
        for (auto& v : flat) v += rng.uniform(-0.3, 0.3);
        net.assign(flat);
        const double x = rng.uniform(-1.0, 1.0);
        const double y = rng.uniform(-1.0, 1.0);
        const auto analytic = backward(x, y, net);
        const auto numeric = central_difference(
            [&](std::span<const double> p) {
              MlpNetwork probe = net;
              probe.assign(p);
              const double r = probe.forward(x) - y;
              return r * r;
            },
            flat, 1e-6);
        for (std::size_t i = 0; i < flat.size(); ++i) {
          worst = std::max(worst,
                           tolerance_ratio(analytic[i], numeric[i], kMlpGradientTolerance));
        }
      }
    }
    return detail::worst_case(worst, 1.0, "backprop vs central differences (error/bound)");
  }});

  checks.push_back({"table1_param_counts", [](const CutoffConfig&) {
    std::size_t mismatches = 0, total = 0;
    for (const auto& [count, combos] : table1_configs()) {
      for (const auto& widths : combos) {
        ++total;
        if (param_count(widths) != count) ++mismatches;
      }
    }
    for (std::size_t l = 1; l <= 5; ++l) {
      ++total;
      if (QnnParams::zeros(l).parameter_count() != 5 * l) ++mismatches;
    }
    return CheckResult{mismatches == 0 && total == 19,
                       std::to_string(total - mismatches) + "/" + std::to_string(total) +
                           " configurations match"};
  }});

  return checks;
}

/// Runs every check, printing one line each. True iff all pass.
inline bool run_selftest(const CutoffConfig& cfg, std::ostream& os) {
  bool all = true;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& check : selftest_checks()) {
    CheckResult r;
    try {
      r = check.run(cfg);
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    all = all && r.passed;
    os << (r.passed ? "PASS " : "FAIL ") << check.name << "  " << r.detail << '\n';
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s in %.2f s (cutoff %zu)\n",
                all ? "all checks passed" : "some checks FAILED", secs, cfg.dim());
  os << buf;
  return all;
}

}  // namespace cvqnn
