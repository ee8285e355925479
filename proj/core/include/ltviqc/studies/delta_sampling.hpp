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
#include <string>
#include <vector>

#include <json.hpp>

#include "ltviqc/ltv/ltv_system.hpp"
#include "ltviqc/riccati/gain.hpp"
#include "ltviqc/studies/lti.hpp"

namespace ltviqc {

/// (-0.7861 s^2 - 3.383 s - 3.631) / (0.8 s^2 + 3.414 s + 3.631).
LtiSystem reference_worst_delta();

/// Random stable SISO Delta with the given state count, scaled to unit
/// H-infinity norm.
LtiSystem random_unit_delta(int states, std::mt19937_64& rng);

struct DeltaSample {
  int states = 0;
  bool fixed = false;       // the supplied worst-case Delta rather than a random draw
  double hinf = 0.0;        // norm of Delta after scaling
  double gain = 0.0;        // certified upper end of the bisection
  double gain_lower = 0.0;
  std::string status;       // "ok" or the error message
  LtiSystem delta;
};

struct DeltaReport {
  std::vector<DeltaSample> samples;
  double gamma_robust = 0.0;
  double max_gain = 0.0;
  int worst_index = -1;
  bool sound = true;  // every successful sample has gain <= gamma_robust + tol
  int failures = 0;
};

struct DeltaSamplingOptions {
  std::size_t n_samples = 100;  // includes the fixed Delta when present
  int max_states = 6;
  std::uint64_t seed = 1;
  bool include_reference_worst = true;
  GainKind kind = GainKind::L2ToEuclidean;
  BisectionOptions bisection{1e-5, 60, {}};
  double soundness_tol = 1e-6;
  unsigned jobs = 1;
};

/// Closes the loop with sampled unit-norm Delta and bisects each nominal
/// closed-loop gain. Per-sample failures are recorded, not thrown.
DeltaReport sample_delta_validate(const PartitionedLtvSystem& plant, double gamma_robust,
                                  const DeltaSamplingOptions& options = {});

nlohmann::json to_json(const DeltaReport& report);

}  // namespace ltviqc
