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

#include "ltviqc/iteration/fixed_multiplier.hpp"

#include <cmath>

namespace ltviqc {

FixedMultiplierResult rde_bisect_fixed_M(const ExtendedSystem& ext, const MatrixSignal& M,
                                         GainKind kind, double hint,
                                         const FixedMultiplierOptions& options) {
  const GammaAffineCost data = robust_cost_data(ext, kind, M);
  FixedMultiplierResult out;
  auto test = [&](double gamma) -> std::optional<RdeSolution> {
    ++out.rde_calls;
    const QuadraticCost cost = data.at(gamma);
    if (!cost.r_negative_definite(options.rde.r_threshold)) return std::nullopt;
    RdeSolution sol = integrate_rde_backward(ext.A, ext.B, cost, options.rde);
    if (!sol.converged()) return std::nullopt;
    return sol;
  };
  double lo = 0.0, hi = 1.0;
  if (hint > 0.0 && std::isfinite(hint)) {
    lo = 0.97 * hint;
    hi = 1.03 * hint;
  }
  auto res = bisect_gamma(test, lo, hi, options.rel_tol, options.max_doublings);
  if (!res) return out;
  out.gamma = res->upper;
  out.lower = res->lower;
  out.P = std::move(res->certificate);
  return out;
}

}  // namespace ltviqc
