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

#include <limits>
#include <optional>

#include "ltviqc/iqc/extended_system.hpp"
#include "ltviqc/iqc/robust_cost.hpp"
#include "ltviqc/riccati/gain.hpp"
#include "ltviqc/riccati/rde.hpp"

namespace ltviqc {

struct FixedMultiplierResult {
  double gamma = std::numeric_limits<double>::infinity();  // +inf: no certificate
  double lower = 0.0;
  std::optional<RdeSolution> P;
  int rde_calls = 0;

  bool finite() const { return P.has_value(); }
};

struct FixedMultiplierOptions {
  double rel_tol = 1e-4;
  int max_doublings = 30;
  RdeOptions rde;
};

/// Smallest gamma for which the robust RDE with multiplier M exists on [0, T].
/// At each trial gamma the merged R(t) must be negative definite on the grid,
/// otherwise that gamma counts as infeasible. `hint` (> 0) seeds the bracket.
FixedMultiplierResult rde_bisect_fixed_M(const ExtendedSystem& ext, const MatrixSignal& M,
                                         GainKind kind, double hint = 0.0,
                                         const FixedMultiplierOptions& options = {});

}  // namespace ltviqc
