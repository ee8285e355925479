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

#include <ostream>
#include <vector>

#include <json.hpp>

#include "ltviqc/iteration/algorithm.hpp"

namespace ltviqc {

nlohmann::json to_json(const IterationLog& log);
nlohmann::json to_json(const RobustGainResult& result);

/// iteration,gamma_sdp,gamma_rde,grid_size,status,sdp_iterations,rde_calls,added_points,wall_time
void write_log_csv(std::ostream& os, const IterationLog& log);

/// T,gamma
void write_curve_csv(std::ostream& os, const std::vector<HorizonResult>& rows);

}  // namespace ltviqc
