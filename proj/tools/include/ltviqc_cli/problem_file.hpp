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

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ltviqc/iqc/multiplier.hpp"
#include "ltviqc/iteration/algorithm.hpp"
#include "ltviqc/ltv/ltv_system.hpp"
#include "ltviqc/riccati/gain.hpp"

namespace ltviqc::cli {

struct AlgorithmSettings {
  double tol = 5e-3;
  int max_iter = 10;
  int dlmi_points = 20;
  int spline_points = 10;
  SplineEnd spline_end = SplineEnd::Natural;
  double bisect_tol = 1e-4;
};

struct OutputPaths {
  std::string json;  // result file; empty disables
  std::string csv;   // curve, log or signal; empty disables
};

/// {
///   "system": {...} | "file.json" | {"builtin": "reference_plant"},
///   "partition": {"w": 1, "v": 1},
///   "iqc": {...},
///   "performance": "l2" | "l2e",
///   "horizon": 1.0, "horizons": [1, 2],
///   "gamma_target": 0.5,
///   "algorithm": {"tol": ..., "max_iter": ..., "dlmi_points": ..., "spline_points": ...,
///                 "spline_end": "natural" | "not_a_knot", "bisect_tol": ...},
///   "output": {"json": "...", "csv": "..."}
/// }
/// Only "system" is required. Unknown keys are rejected.
struct ProblemFile {
  nlohmann::json system;
  std::optional<std::pair<int, int>> partition;  // (n_w, n_v)
  std::optional<nlohmann::json> iqc;
  GainKind performance = GainKind::InducedL2;
  std::optional<double> horizon;
  std::vector<double> horizons;
  std::optional<double> gamma_target;
  AlgorithmSettings algorithm;
  OutputPaths output;

  /// Directory against which relative system paths resolve. Not serialized.
  std::filesystem::path base_dir;

  bool operator==(const ProblemFile& o) const;
};

ProblemFile problem_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ProblemFile& p);

/// Reads and validates a problem file. Throws std::invalid_argument when the
/// file is missing or malformed.
ProblemFile load_problem(const std::filesystem::path& path);

/// Builtin systems: reference_plant, robot_closed_loop, robot_open_loop.
std::vector<std::string> builtin_system_names();

/// The system of a problem. A plain LtvSystem unless the problem has a
/// partition or names a builtin.
using ResolvedSystem = std::variant<LtvSystem, PartitionedLtvSystem>;
ResolvedSystem resolve_system(const ProblemFile& p);

/// Nominal d -> e system (w = 0 for partitioned systems).
LtvSystem nominal_system(const ProblemFile& p);
PartitionedLtvSystem partitioned_system(const ProblemFile& p);

/// The problem's IQC at a given horizon; builtins default to the unit-norm
/// LTI IQC with v = 1, p = 10.
IqcSpec problem_iqc(const ProblemFile& p, double horizon);

IterationConfig iteration_config(const AlgorithmSettings& s);

}  // namespace ltviqc::cli
