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
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ltviqc/dlmi/interior_point.hpp"
#include "ltviqc/dlmi/spline_basis.hpp"
#include "ltviqc/iqc/multiplier.hpp"
#include "ltviqc/iteration/fixed_multiplier.hpp"
#include "ltviqc/ltv/ltv_system.hpp"
#include "ltviqc/riccati/gain.hpp"

namespace ltviqc {

struct IterationConfig {
  double tol = 5e-3;      // stop when |gamma_SDP - gamma_RDE| < tol gamma_SDP
  int max_iter = 10;
  int dlmi_points = 20;   // initial uniform constraint grid
  int spline_points = 10; // uniform spline knots
  std::optional<TimeGrid> t_dlmi;  // overrides dlmi_points
  std::optional<TimeGrid> knots;   // overrides spline_points
  SplineEnd spline_end = SplineEnd::Natural;
  double bisect_tol = 1e-4;
  std::size_t max_added_points = 10;
  double eps = 0.0;       // DLMI strictness; <= 0 selects the scale-aware default
  RdeOptions rde;
  SolverOptions solver = SolverOptions::FromEnvironment();
};

struct IterationRecord {
  int iteration = 0;
  double gamma_sdp = std::numeric_limits<double>::quiet_NaN();
  double gamma_rde = std::numeric_limits<double>::infinity();
  std::size_t grid_size = 0;
  SdpStatus status = SdpStatus::SolverFailure;
  int sdp_iterations = 0;
  int rde_calls = 0;
  std::size_t added_points = 0;
  double wall_time = 0.0;  // seconds
};

struct IterationLog {
  std::vector<IterationRecord> records;
  std::string termination;
  std::vector<std::string> warnings;
};

struct RobustGainResult {
  double horizon = 0.0;
  double gamma_best = std::numeric_limits<double>::infinity();
  bool converged = false;
  Eigen::VectorXd multiplier;           // decision values of M_best
  std::optional<MatrixSignal> M_best;
  std::optional<RdeSolution> P_best;
  IterationLog log;

  bool certified() const { return P_best.has_value(); }
  int iterations() const { return static_cast<int>(log.records.size()); }
};

/// Alternates the DLMI SDP (joint in storage and multiplier) with RDE
/// bisection at the SDP's multiplier. The RDE solution becomes the matrix
/// basis function of the next SDP. gamma_best is the smallest certified
/// gamma_RDE.
RobustGainResult robust_gain_iterate(const PartitionedLtvSystem& G, const IqcSpec& iqc,
                                     GainKind perf, const IterationConfig& config = {});

struct HorizonResult {
  double horizon = 0.0;
  RobustGainResult result;
  std::string error;  // nonempty when the run threw
};

/// robust_gain_iterate per horizon. `iqc_for` builds the IQC for a horizon
/// (time-varying multipliers need a grid on [0, T]). Time-invariant plants
/// are extended, time-varying ones truncated. jobs > 1 runs horizons on
/// separate threads.
std::vector<HorizonResult> gain_vs_horizon(const PartitionedLtvSystem& G,
                                           const std::function<IqcSpec(double)>& iqc_for,
                                           GainKind perf, const std::vector<double>& horizons,
                                           const IterationConfig& config = {}, int jobs = 1);

}  // namespace ltviqc
