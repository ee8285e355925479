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

#include "ltviqc_cli/problem_file.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include "ltviqc/iqc/serialization.hpp"
#include "ltviqc/ltv/serialization.hpp"
#include "ltviqc/studies/reference_plant.hpp"
#include "ltviqc/studies/robot.hpp"

namespace ltviqc::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw std::invalid_argument(where + ": unknown key '" + key + "'");
  }
}

double positive(const json& j, const std::string& what) {
  if (!j.is_number()) throw std::invalid_argument(what + " must be a number");
  const double v = j.get<double>();
  if (!(v > 0.0)) throw std::invalid_argument(what + " must be positive");
  return v;
}

int positive_int(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<int>() < 1) {
    throw std::invalid_argument(what + " must be a positive integer");
  }
  return j.get<int>();
}

const char* to_string(SplineEnd end) {
  return end == SplineEnd::NotAKnot ? "not_a_knot" : "natural";
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

bool is_builtin(const json& system) { return system.is_object() && system.contains("builtin"); }

PartitionedLtvSystem builtin_system(const std::string& name, std::optional<double> horizon) {
  if (name == "reference_plant") return reference_plant_system(horizon.value_or(1.0));
  if (name == "robot_closed_loop" || name == "robot_open_loop") {
    QuinticSpec spec;
    if (horizon) spec.horizon = *horizon;
    const RobotStudy study = make_robot_study(spec);
    return name == "robot_closed_loop" ? study.closed_loop : study.open_loop;
  }
  throw std::invalid_argument("unknown builtin system '" + name + "'");
}

}  // namespace

bool ProblemFile::operator==(const ProblemFile& o) const {
  return to_json(*this) == to_json(o);
}

ProblemFile problem_from_json(const json& j) {
  reject_unknown(j,
                 {"system", "partition", "iqc", "performance", "horizon", "horizons",
                  "gamma_target", "algorithm", "output"},
                 "problem");
  ProblemFile p;
  if (!j.contains("system")) throw std::invalid_argument("problem: missing 'system'");
  p.system = j.at("system");
  if (is_builtin(p.system)) {
    reject_unknown(p.system, {"builtin"}, "system");
    if (!p.system.at("builtin").is_string()) {
      throw std::invalid_argument("system: 'builtin' must be a string");
    }
    const std::string name = p.system.at("builtin").get<std::string>();
    const auto names = builtin_system_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw std::invalid_argument("unknown builtin system '" + name + "'");
    }
  } else if (p.system.is_object()) {
    ltv_system_from_json(p.system);  // validate now
  } else if (!p.system.is_string()) {
    throw std::invalid_argument("system: expected an object, a builtin or a path");
  }
  if (j.contains("partition")) {
    const json& q = j.at("partition");
    reject_unknown(q, {"w", "v"}, "partition");
    if (!q.contains("w") || !q.contains("v")) {
      throw std::invalid_argument("partition: needs both 'w' and 'v'");
    }
    p.partition = {positive_int(q.at("w"), "partition.w"), positive_int(q.at("v"), "partition.v")};
  }
  if (j.contains("iqc")) {
    validate_iqc_json(j.at("iqc"));
    p.iqc = j.at("iqc");
  }
  if (j.contains("performance")) {
    if (!j.at("performance").is_string()) {
      throw std::invalid_argument("performance must be \"l2\" or \"l2e\"");
    }
    p.performance = gain_kind_from_string(j.at("performance").get<std::string>());
  }
  if (j.contains("horizon")) p.horizon = positive(j.at("horizon"), "horizon");
  if (j.contains("horizons")) {
    if (!j.at("horizons").is_array()) throw std::invalid_argument("horizons must be an array");
    for (const auto& h : j.at("horizons")) p.horizons.push_back(positive(h, "horizons entry"));
  }
  if (j.contains("gamma_target")) p.gamma_target = positive(j.at("gamma_target"), "gamma_target");
  if (j.contains("algorithm")) {
    const json& a = j.at("algorithm");
    reject_unknown(a, {"tol", "max_iter", "dlmi_points", "spline_points", "spline_end", "bisect_tol"},
                   "algorithm");
    AlgorithmSettings& s = p.algorithm;
    if (a.contains("tol")) s.tol = positive(a.at("tol"), "algorithm.tol");
    if (a.contains("max_iter")) s.max_iter = positive_int(a.at("max_iter"), "algorithm.max_iter");
    if (a.contains("dlmi_points")) {
      s.dlmi_points = positive_int(a.at("dlmi_points"), "algorithm.dlmi_points");
    }
    if (a.contains("spline_points")) {
      s.spline_points = positive_int(a.at("spline_points"), "algorithm.spline_points");
    }
    if (a.contains("bisect_tol")) s.bisect_tol = positive(a.at("bisect_tol"), "algorithm.bisect_tol");
    if (a.contains("spline_end")) {
      const json& e = a.at("spline_end");
      if (e == "natural") {
        s.spline_end = SplineEnd::Natural;
      } else if (e == "not_a_knot") {
        s.spline_end = SplineEnd::NotAKnot;
      } else {
        throw std::invalid_argument("algorithm.spline_end must be \"natural\" or \"not_a_knot\"");
      }
    }
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    reject_unknown(o, {"json", "csv"}, "output");
    for (const char* key : {"json", "csv"}) {
      if (o.contains(key) && !o.at(key).is_string()) {
        throw std::invalid_argument(std::string("output.") + key + " must be a string");
      }
    }
    p.output.json = o.value("json", "");
    p.output.csv = o.value("csv", "");
  }
  return p;
}

json to_json(const ProblemFile& p) {
  json j;
  j["system"] = p.system;
  if (p.partition) j["partition"] = {{"w", p.partition->first}, {"v", p.partition->second}};
  if (p.iqc) j["iqc"] = *p.iqc;
  j["performance"] = to_string(p.performance);
  if (p.horizon) j["horizon"] = *p.horizon;
  if (!p.horizons.empty()) j["horizons"] = p.horizons;
  if (p.gamma_target) j["gamma_target"] = *p.gamma_target;
  const AlgorithmSettings& s = p.algorithm;
  j["algorithm"] = {{"tol", s.tol},
                    {"max_iter", s.max_iter},
                    {"dlmi_points", s.dlmi_points},
                    {"spline_points", s.spline_points},
                    {"spline_end", to_string(s.spline_end)},
                    {"bisect_tol", s.bisect_tol}};
  json out = json::object();
  if (!p.output.json.empty()) out["json"] = p.output.json;
  if (!p.output.csv.empty()) out["csv"] = p.output.csv;
  if (!out.empty()) j["output"] = out;
  return j;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  ProblemFile p = problem_from_json(read_json(path));
  p.base_dir = path.parent_path();
  return p;
}

std::vector<std::string> builtin_system_names() {
  return {"reference_plant", "robot_closed_loop", "robot_open_loop"};
}

ResolvedSystem resolve_system(const ProblemFile& p) {
  if (is_builtin(p.system)) {
    return builtin_system(p.system.at("builtin").get<std::string>(), p.horizon);
  }
  LtvSystem sys = p.system.is_string()
                      ? ltv_system_from_json(read_json(p.base_dir / p.system.get<std::string>()))
                      : ltv_system_from_json(p.system);
  if (p.horizon && *p.horizon != sys.horizon()) {
    throw std::invalid_argument("horizon " + std::to_string(*p.horizon) +
                                " differs from the system grid end " +
                                std::to_string(sys.horizon()));
  }
  if (p.partition) return PartitionedLtvSystem::FromPartition(sys, p.partition->first, p.partition->second);
  return sys;
}

LtvSystem nominal_system(const ProblemFile& p) {
  const ResolvedSystem r = resolve_system(p);
  if (const auto* G = std::get_if<PartitionedLtvSystem>(&r)) return G->nominal();
  return std::get<LtvSystem>(r);
}

PartitionedLtvSystem partitioned_system(const ProblemFile& p) {
  ResolvedSystem r = resolve_system(p);
  if (auto* G = std::get_if<PartitionedLtvSystem>(&r)) return std::move(*G);
  throw std::invalid_argument("robust analysis needs a 'partition' or a builtin system");
}

IqcSpec problem_iqc(const ProblemFile& p, double horizon) {
  if (p.iqc) return iqc_spec_from_json(*p.iqc, horizon);
  if (is_builtin(p.system)) return make_unit_norm_lti_iqc(1, 10.0);
  throw std::invalid_argument("robust analysis needs an 'iqc' entry");
}

IterationConfig iteration_config(const AlgorithmSettings& s) {
  IterationConfig c;
  c.tol = s.tol;
  c.max_iter = s.max_iter;
  c.dlmi_points = s.dlmi_points;
  c.spline_points = s.spline_points;
  c.spline_end = s.spline_end;
  c.bisect_tol = s.bisect_tol;
  return c;
}

}  // namespace ltviqc::cli
