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

#include <json.hpp>

#include "ltviqc/iqc/multiplier.hpp"

namespace ltviqc {

/// Builds a filter and multiplier set from
///   {"type": "unit_norm_lti", "v": 1, "p": 10}
///   {"type": "tv_real", "points": 11}      (uniform grid on [0, horizon])
///   {"type": "conic", "parts": [ ... ]}
/// Unknown keys are rejected.
IqcSpec iqc_spec_from_json(const nlohmann::json& j, double horizon);

/// Throws std::invalid_argument if `j` is not a well-formed IQC description.
void validate_iqc_json(const nlohmann::json& j);

}  // namespace ltviqc
