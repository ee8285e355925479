/*
 Copyright 2026 The ltviqc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "ltviqc/riccati/gain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "ltviqc/common/errors.hpp"
#include "ltviqc/riccati/oracles.hpp"

namespace ltviqc {

const char* to_string(GainKind kind) {
  return kind == GainKind::InducedL2 ? "l2" : "l2e";
}

GainKind gain_kind_from_string(const std::string& s) {
  if (s == "l2") return GainKind::InducedL2;
  if (s == "l2e") return GainKind::L2ToEuclidean;
  throw std::invalid_argument("unknown performance measure '" + s + "' (expected l2 or l2e)");
}

std::optional<GainBound> bisect_gamma(const GammaTest& test, double lo, double hi,
                                      double rel_tol, int max_doublings) {
  if (!(hi > 0.0) || lo < 0.0 || !(rel_tol > 0.0)) {
    throw std::invalid_argument("bisect_gamma: need 0 <= lo, 0 < hi and rel_tol > 0");
  }
  if (lo >= hi) lo = 0.0;
  GainBound out;
  std::optional<RdeSolution> cert = test(hi);
  ++out.iterations;
  for (int k = 0; !cert; ++k) {
    if (k >= max_doublings) return std::nullopt;
    lo = hi;
    hi *= 2.0;
    cert = test(hi);
    ++out.iterations;
  }
  if (lo > 0.0) {
    for (int k = 0;; ++k) {
      if (k >= max_doublings) {
        lo = 0.0;
        break;
      }
      auto s = test(lo);
      ++out.iterations;
      if (!s) break;
      hi = lo;
      cert = std::move(s);
      lo *= 0.5;
    }
  }
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    auto s = test(mid);
    ++out.iterations;
    if (s) {
      hi = mid;
      cert = std::move(s);
    } else {
      lo = mid;
    }
  }
  out.lower = lo;
  out.upper = hi;
  out.certificate = std::move(*cert);
  return out;
}

std::optional<RdeSolution> nominal_rde_at(const LtvSystem& sys, GainKind kind, double gamma,
                                          const RdeOptions& options) {
  const QuadraticCost cost = kind == GainKind::InducedL2 ? cost_for_l2_gain(sys, gamma)
                                                         : cost_for_l2e_gain(sys, gamma);
  if (!cost.r_negative_definite(options.r_threshold)) return std::nullopt;
  RdeSolution sol = integrate_rde_backward(sys.A(), sys.B(), cost, options);
  if (!sol.converged()) return std::nullopt;
  return sol;
}

GainBound bisect_gain(const LtvSystem& sys, GainKind kind,
                      std::optional<std::pair<double, double>> bracket,
                      const BisectionOptions& options) {
  double lo = 0.0, hi = 0.0;
  if (bracket) {
    std::tie(lo, hi) = *bracket;
  } else {
    const double est = kind == GainKind::InducedL2 ? lifted_l2_gain_oracle(sys, 200)
                                                   : lifted_l2e_estimate(sys, 200);
    hi = std::max(2.0 * est, 1e-6);
    if (kind == GainKind::InducedL2) {
      // gamma below the largest singular value of D makes R indefinite.
      for (const auto& D : sys.D().samples()) {
        if (D.size() > 0) lo = std::max(lo, Eigen::JacobiSVD<Eigen::MatrixXd>(D).singularValues()(0));
      }
      if (lo >= hi) hi = 2.0 * lo;
    }
  }
  auto test = [&](double g) { return nominal_rde_at(sys, kind, g, options.rde); };
  auto res = bisect_gamma(test, lo, hi, options.rel_tol, options.max_doublings);
  if (!res) throw NumericalError("bisect_gain: no feasible gamma found");
  return std::move(*res);
}

}  // namespace ltviqc
