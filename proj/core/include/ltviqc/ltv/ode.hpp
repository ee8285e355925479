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

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace ltviqc {

/// Adaptive Dormand-Prince 4(5) settings. Defaults follow the usual
/// abs 1e-8 / rel 1e-5 pair.
struct OdeOptions {
  double abs_tol = 1e-8;
  double rel_tol = 1e-5;
  /// A step smaller than min_step_ratio * time_scale counts as underflow.
  double min_step_ratio = 1e-14;
  std::size_t max_steps = 20'000'000;
};

using OdeRhs =
    std::function<void(double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy)>;
/// Called after each accepted step; returning false stops integration.
using OdeObserver = std::function<bool(double t, const Eigen::VectorXd& y)>;

enum class OdeStatus { Completed, Stopped, StepUnderflow };

struct OdeSegmentResult {
  OdeStatus status;
  double t;           // time reached
  Eigen::VectorXd y;  // state at t
  double next_step;   // suggested magnitude of the next step
  std::size_t steps;
};

/// Integrates from t0 to t1 (t1 < t0 integrates backward), landing exactly
/// on t1. `initial_step` is a magnitude; 0 picks |t1 - t0| / 16.
OdeSegmentResult integrate_segment(const OdeRhs& rhs, Eigen::VectorXd y0,
                                   double t0, double t1,
                                   const OdeOptions& options,
                                   double time_scale, double initial_step = 0.0,
                                   const OdeObserver& observer = {});

}  // namespace ltviqc
