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

#pragma once

#include "ltviqc/iqc/extended_system.hpp"
#include "ltviqc/ltv/quadratic_cost.hpp"
#include "ltviqc/riccati/gain.hpp"

namespace ltviqc {

/// [C2 D2]'[C2 D2] - gamma^2 diag(0, I_nd) on [x; w, d], F = 0.
QuadraticCost robust_l2_cost(const ExtendedSystem& ext, double gamma);

/// Q = 0, S = 0, R = -gamma^2 diag(0, I_nd), F = C2(T)'C2(T).
/// Requires D2(T) = 0.
QuadraticCost robust_l2e_cost(const ExtendedSystem& ext, double gamma);

/// Adds the factored term [C1 D1]' M [C1 D1] to the running cost.
QuadraticCost merge_iqc_into_cost(const QuadraticCost& cost, const ExtendedSystem& ext,
                                  const MatrixSignal& M);

/// Robust cost with the multiplier merged in, written as
///   R(gamma) = R0 - gamma^2 G,  with Q, S, F and the factored terms
/// independent of gamma.
struct GammaAffineCost {
  MatrixSignal Q, S, R0;
  Eigen::MatrixXd F, G;
  std::vector<FactoredTerm> terms;

  QuadraticCost at(double gamma) const;
};

GammaAffineCost robust_cost_data(const ExtendedSystem& ext, GainKind kind,
                                 const MatrixSignal& M);

}  // namespace ltviqc
