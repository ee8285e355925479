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

#include <functional>
#include <optional>
#include <utility>

#include "ltviqc/ltv/ltv_system.hpp"
#include "ltviqc/riccati/rde.hpp"

namespace ltviqc {

enum class GainKind { InducedL2, L2ToEuclidean };

const char* to_string(GainKind kind);
GainKind gain_kind_from_string(const std::string& s);

struct GainBound {
  double lower = 0.0;
  double upper = 0.0;
  RdeSolution certificate;  // RDE solution at gamma = upper
  int iterations = 0;       // number of RDE integrations
};

struct BisectionOptions {
  double rel_tol = 1e-3;
  int max_doublings = 60;
  RdeOptions rde;
};

/// Returns the RDE solution when it exists on all of [0, T] at gamma,
/// nullopt when it escapes or R(t) is not negative definite.
using GammaTest = std::function<std::optional<RdeSolution>(double gamma)>;

/// Generic bisection: expands `hi` by doubling until feasible, shrinks `lo` by
/// halving until infeasible, then bisects to (hi - lo) / hi <= rel_tol.
/// nullopt if `hi` never becomes feasible within max_doublings.
std::optional<GainBound> bisect_gamma(const GammaTest& test, double lo, double hi,
                                      double rel_tol, int max_doublings);

/// RDE existence test for the nominal gain cost at gamma.
std::optional<RdeSolution> nominal_rde_at(const LtvSystem& sys, GainKind kind,
                                          double gamma, const RdeOptions& options = {});

/// Smallest gamma (to rel_tol) for which the nominal RDE exists on [0, T].
/// Without a bracket the upper end is twice a cheap lifted estimate.
/// Throws NumericalError if no feasible gamma is found.
GainBound bisect_gain(const LtvSystem& sys, GainKind kind,
                      std::optional<std::pair<double, double>> bracket = std::nullopt,
                      const BisectionOptions& options = {});

}  // namespace ltviqc
