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
#include <span>

#include "ltviqc/ltv/time_grid.hpp"

namespace ltviqc {

/// Adds up to `cap` times from `dense` where margin(t) > threshold. Local
/// maxima of the margin go first (largest first), then the remaining
/// violating times by decreasing margin. Times within 1e-9 T of an existing
/// point are skipped.
TimeGrid refine_grid(const TimeGrid& t_dlmi, const std::function<double(double)>& margin,
                     std::span<const double> dense, std::size_t cap, double threshold = 0.0);

}  // namespace ltviqc
