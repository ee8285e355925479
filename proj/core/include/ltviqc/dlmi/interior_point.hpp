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

#include <string>

#include <Eigen/Dense>

#include "ltviqc/dlmi/conic_program.hpp"

namespace ltviqc {

enum class SdpStatus { Optimal, Infeasible, SolverFailure };

const char* to_string(SdpStatus status);

struct SolverOptions {
  double tol = 1e-8;         // relative gap and relative residuals
  double infeas_tol = 1e-8;  // certificate ratio for infeasibility
  int max_iter = 120;
  /// When full accuracy is not reached, the best iterate is still reported
  /// as optimal if its residuals and gap are below this.
  double reduced_tol = 1e-4;
  /// Once an iterate meets reduced_tol, iterations allowed without halving
  /// max(residuals, gap).
  int patience = 15;
  bool verbose = false;

  /// Defaults, with verbose set when LTVIQC_SOLVER_VERBOSE is a nonzero value.
  static SolverOptions FromEnvironment();
};

struct SolverStats {
  int iterations = 0;
  double primal_infeas = 0.0;  // |b - A(X)| / (1 + |b|)
  double dual_infeas = 0.0;    // |C - Z - A'(y)| / (1 + |C|)
  double rel_gap = 0.0;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  std::string message;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::SolverFailure;
  Eigen::VectorXd y;  // all variables, fixed ones included
  double objective = 0.0;
  SolverStats stats;
};

/// Adapter interface: linear objective, affine LMI constraints.
class ConicSolver {
 public:
  virtual ~ConicSolver() = default;
  virtual SdpSolution solve(const ConicProgram& program) const = 0;
};

/// Infeasible-start primal-dual path-following method (HKM direction with
/// Mehrotra predictor-corrector) for block-diagonal LMI programs. The LMI
/// program is the dual of the standard primal SDP
///   min <C, X>  s.t.  <A_i, X> = b_i,  X >= 0,
/// with C = -F0, A_i = F_i, b = -c.
class InteriorPointSolver : public ConicSolver {
 public:
  explicit InteriorPointSolver(SolverOptions options = SolverOptions::FromEnvironment())
      : options_(options) {}
  SdpSolution solve(const ConicProgram& program) const override;
  const SolverOptions& options() const { return options_; }

 private:
  SolverOptions options_;
};

}  // namespace ltviqc
