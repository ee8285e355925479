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

#include <vector>

#include "ltviqc/iqc/multiplier.hpp"
#include "ltviqc/ltv/ltv_system.hpp"

namespace ltviqc {

/// The 4-state LTI plant of the robust induced L2 gain example on [0, T].
/// Input order [w; d], output order [v; e].
PartitionedLtvSystem reference_plant_system(double horizon = 1.0);

/// Unit-norm LTI uncertainty IQC with v = 1, p = 10.
IqcSpec reference_plant_iqc();

/// {1, 2, 5, 10, 20, 30, 40, 50, 100}.
std::vector<double> reference_plant_horizons();

/// Reference infinite-horizon robust gain.
inline constexpr double kReferencePlantInfiniteHorizonGain = 1.49;

}  // namespace ltviqc
