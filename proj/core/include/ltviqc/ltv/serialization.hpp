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

#include "ltviqc/ltv/ltv_system.hpp"
#include "ltviqc/ltv/signal.hpp"

namespace ltviqc {

/// {"grid": [...], "A": [[[..]..]..], "B": ..., "C": ..., "D": ...,
///  "interp": "linear" | "zoh"}; each matrix entry is a list with one
/// row-major nested array per grid point.
nlohmann::json to_json(const LtvSystem& sys);
LtvSystem ltv_system_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& M);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);

}  // namespace ltviqc
