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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ltviqc/iteration/algorithm.hpp"

namespace ltviqc {

enum class CriterionStatus { Pass, Fail, Skipped };

const char* to_string(CriterionStatus status);

struct CriterionResult {
  int id = 0;
  std::string name;
  CriterionStatus status = CriterionStatus::Fail;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  /// Reduced sample counts and horizons for smoke runs.
  bool quick = false;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  /// Receives one line per finished stage when set.
  std::function<void(const std::string&)> progress;
};

/// The reference plant swept over horizons (all nine, or 1, 10, 100 when quick).
struct ReferenceSweep {
  std::vector<HorizonResult> rows;
  double seconds = 0.0;
  bool full = true;
};

ReferenceSweep run_reference_sweep(const AcceptanceOptions& options);

CriterionResult check_reference_peak(const ReferenceSweep& sweep);
CriterionResult check_reference_curve(const ReferenceSweep& sweep);
CriterionResult check_reference_convergence(const ReferenceSweep& sweep);
CriterionResult check_nominal_oracles(const AcceptanceOptions& options);
CriterionResult check_dlmi_consistency(const AcceptanceOptions& options);
CriterionResult check_transition_machinery(const AcceptanceOptions& options);
CriterionResult check_robot_study(const AcceptanceOptions& options);
CriterionResult check_iqc_sampling(const AcceptanceOptions& options);

/// Runs the selected criteria (1..8, all when empty) in order. Criteria 1-3
/// share one sweep.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::vector<int>& which = {});

}  // namespace ltviqc
