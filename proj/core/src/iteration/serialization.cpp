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

#include "ltviqc/iteration/serialization.hpp"

#include <cmath>
#include <iomanip>

namespace ltviqc {

using nlohmann::json;

namespace {

// JSON has no infinity; non-finite values are written as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const IterationLog& log) {
  json recs = json::array();
  for (const auto& r : log.records) {
    recs.push_back({{"iteration", r.iteration},
                    {"gamma_sdp", number(r.gamma_sdp)},
                    {"gamma_rde", number(r.gamma_rde)},
                    {"grid_size", r.grid_size},
                    {"status", to_string(r.status)},
                    {"sdp_iterations", r.sdp_iterations},
                    {"rde_calls", r.rde_calls},
                    {"added_points", r.added_points},
                    {"wall_time", r.wall_time}});
  }
  return {{"records", recs}, {"termination", log.termination}, {"warnings", log.warnings}};
}

json to_json(const RobustGainResult& result) {
  std::vector<double> mult(result.multiplier.data(),
                           result.multiplier.data() + result.multiplier.size());
  return {{"horizon", result.horizon},
          {"gamma_best", number(result.gamma_best)},
          {"certified", result.certified()},
          {"converged", result.converged},
          {"iterations", result.iterations()},
          {"multiplier", mult},
          {"log", to_json(result.log)}};
}

void write_log_csv(std::ostream& os, const IterationLog& log) {
  os << "iteration,gamma_sdp,gamma_rde,grid_size,status,sdp_iterations,rde_calls,"
        "added_points,wall_time\n"
     << std::setprecision(12);
  for (const auto& r : log.records) {
    os << r.iteration << "," << r.gamma_sdp << "," << r.gamma_rde << "," << r.grid_size << ","
       << to_string(r.status) << "," << r.sdp_iterations << "," << r.rde_calls << ","
       << r.added_points << "," << r.wall_time << "\n";
  }
}

void write_curve_csv(std::ostream& os, const std::vector<HorizonResult>& rows) {
  os << "T,gamma\n" << std::setprecision(12);
  for (const auto& r : rows) os << r.horizon << "," << r.result.gamma_best << "\n";
}

}  // namespace ltviqc
