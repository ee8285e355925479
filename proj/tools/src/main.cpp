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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ltviqc/common/errors.hpp"
#include "ltviqc/iteration/serialization.hpp"
#include "ltviqc/riccati/oracles.hpp"
#include "ltviqc/studies/acceptance.hpp"
#include "ltviqc/worst_case/worst_case.hpp"
#include "ltviqc_cli/problem_file.hpp"

namespace {

using namespace ltviqc;
using nlohmann::json;

constexpr int kInputError = 2;
constexpr int kNumericalError = 3;

void write_json(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out.precision(12);
  return out;
}

struct NominalArgs {
  std::string problem;
  std::string oracle;
  std::string out_json;
};

int run_nominal(const NominalArgs& a) {
  const cli::ProblemFile p = cli::load_problem(a.problem);
  const LtvSystem sys = cli::nominal_system(p);
  const GainBound g = bisect_gain(sys, p.performance, std::nullopt,
                                  {p.algorithm.bisect_tol, 60, {}});
  std::printf("gamma = %.8g  (%s, T = %g, bracket [%.8g, %.8g], %d RDE solves)\n", g.upper,
              to_string(p.performance), sys.horizon(), g.lower, g.upper, g.iterations);
  json j = {{"performance", to_string(p.performance)},
            {"horizon", sys.horizon()},
            {"gamma", g.upper},
            {"lower", g.lower},
            {"rde_solves", g.iterations}};
  if (!a.oracle.empty()) {
    double value = 0.0;
    if (a.oracle == "gramian") {
      if (p.performance != GainKind::L2ToEuclidean) {
        throw std::invalid_argument("--oracle gramian needs performance l2e");
      }
      value = gramian_l2e_oracle(sys);
    } else {
      value = lifted_l2_gain_oracle(sys, 4000);
    }
    std::printf("oracle %s = %.8g  (relative difference %.3g)\n", a.oracle.c_str(), value,
                std::abs(g.upper - value) / value);
    j["oracle"] = {{"name", a.oracle}, {"value", value}};
  }
  write_json(a.out_json.empty() ? p.output.json : a.out_json, j);
  return 0;
}

struct RobustArgs {
  std::string problem;
  std::vector<double> horizons;
  std::string perf;
  double beta = 0.0;
  std::optional<double> tol;
  std::optional<int> max_iter, dlmi_points, spline_points;
  int jobs = 1;
  std::string out_json, out_csv;
};

int run_robust(const RobustArgs& a) {
  cli::ProblemFile p = cli::load_problem(a.problem);
  if (!a.perf.empty()) p.performance = gain_kind_from_string(a.perf);
  if (a.tol) p.algorithm.tol = *a.tol;
  if (a.max_iter) p.algorithm.max_iter = *a.max_iter;
  if (a.dlmi_points) p.algorithm.dlmi_points = *a.dlmi_points;
  if (a.spline_points) p.algorithm.spline_points = *a.spline_points;
  if (!a.horizons.empty()) p.horizons = a.horizons;
  const std::string json_path = a.out_json.empty() ? p.output.json : a.out_json;
  const std::string csv_path = a.out_csv.empty() ? p.output.csv : a.out_csv;
  const IterationConfig config = cli::iteration_config(p.algorithm);
  const PartitionedLtvSystem G = cli::partitioned_system(p);

  auto report = [&](const RobustGainResult& r) {
    std::printf("T = %g: gamma = %.6g  (%d iterations, %s)\n", r.horizon, r.gamma_best,
                r.iterations(), r.log.termination.c_str());
    if (a.beta > 0.0 && r.certified()) {
      std::printf("  reach radius gamma * beta = %.6g for |d| <= %g\n", r.gamma_best * a.beta,
                  a.beta);
    }
  };

  if (p.horizons.empty()) {
    const RobustGainResult r = robust_gain_iterate(G, cli::problem_iqc(p, G.horizon()),
                                                   p.performance, config);
    report(r);
    write_json(json_path, to_json(r));
    if (!csv_path.empty()) {
      std::ofstream out = open_csv(csv_path);
      write_log_csv(out, r.log);
    }
    if (!r.certified()) {
      std::cerr << "no certificate: " << r.log.termination << '\n';
      return kNumericalError;
    }
    return 0;
  }

  const auto rows = gain_vs_horizon(
      G, [&](double T) { return cli::problem_iqc(p, T); }, p.performance, p.horizons, config,
      a.jobs);
  json j = json::array();
  bool all_certified = true;
  for (const auto& row : rows) {
    if (!row.error.empty()) {
      std::printf("T = %g: error: %s\n", row.horizon, row.error.c_str());
      j.push_back({{"horizon", row.horizon}, {"error", row.error}});
      all_certified = false;
      continue;
    }
    report(row.result);
    j.push_back(to_json(row.result));
    all_certified = all_certified && row.result.certified();
  }
  write_json(json_path, j);
  if (!csv_path.empty()) {
    std::ofstream out = open_csv(csv_path);
    write_curve_csv(out, rows);
  }
  if (!all_certified) {
    std::cerr << "no certificate for at least one horizon\n";
    return kNumericalError;
  }
  return 0;
}

struct WorstCaseArgs {
  std::string problem;
  std::optional<double> gamma;
  std::string out_csv;
  std::size_t samples = 4001;
};

int run_worstcase(const WorstCaseArgs& a) {
  const cli::ProblemFile p = cli::load_problem(a.problem);
  const double gamma = a.gamma ? *a.gamma : p.gamma_target.value_or(0.0);
  if (!(gamma > 0.0)) throw std::invalid_argument("worstcase needs --gamma or 'gamma_target'");
  WorstCaseOptions options;
  options.samples = a.samples;
  const WorstCaseInput wc =
      worst_case_disturbance(cli::nominal_system(p), p.performance, gamma, options);
  std::printf("gamma_target = %.8g  achieved ratio = %.8g  (%.6f of target)  t0 = %.6g\n", gamma,
              wc.ratio, wc.ratio / gamma, wc.t0);
  const std::string csv = a.out_csv.empty() ? p.output.csv : a.out_csv;
  if (!csv.empty()) write_worst_case_csv(wc, csv);
  write_json(p.output.json, {{"gamma_target", gamma},
                             {"ratio", wc.ratio},
                             {"t0", wc.t0},
                             {"cost", wc.cost},
                             {"performance", to_string(p.performance)}});
  return 0;
}

int run_bench(const AcceptanceOptions& options, const std::vector<int>& only) {
  int failed = 0;
  for (const auto& r : run_acceptance(options, only)) {
    std::printf("[%s] criterion %d: %s -- %s (%.1f s)\n", to_string(r.status), r.id,
                r.name.c_str(), r.detail.c_str(), r.seconds);
    if (r.status == CriterionStatus::Fail) ++failed;
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-horizon robustness analysis of LTV systems with IQCs"};
  app.require_subcommand(1);

  NominalArgs nominal;
  auto* cmd_nominal = app.add_subcommand("nominal", "Nominal gain by Riccati bisection");
  cmd_nominal->add_option("problem", nominal.problem, "Problem file")->required();
  cmd_nominal->add_option("--oracle", nominal.oracle, "Cross-check against an oracle")
      ->check(CLI::IsMember({"gramian", "lifting"}));
  cmd_nominal->add_option("--json", nominal.out_json, "Result file");

  RobustArgs robust;
  auto* cmd_robust = app.add_subcommand("robust", "Robust gain by the DLMI/RDE iteration");
  cmd_robust->add_option("problem", robust.problem, "Problem file")->required();
  cmd_robust->add_option("--horizons", robust.horizons, "Comma-separated horizons")
      ->delimiter(',');
  cmd_robust->add_option("--perf", robust.perf, "Performance measure")
      ->check(CLI::IsMember({"l2", "l2e"}));
  cmd_robust->add_option("--beta", robust.beta, "Disturbance bound for the reach radius")
      ->check(CLI::PositiveNumber);
  cmd_robust->add_option("--tol", robust.tol, "Relative SDP/RDE gap tolerance")
      ->check(CLI::PositiveNumber);
  cmd_robust->add_option("--max-iter", robust.max_iter)->check(CLI::Range(1, 1000));
  cmd_robust->add_option("--dlmi-points", robust.dlmi_points)->check(CLI::Range(2, 100000));
  cmd_robust->add_option("--spline-points", robust.spline_points)->check(CLI::Range(2, 10000));
  cmd_robust->add_option("--jobs", robust.jobs, "Threads across horizons")
      ->check(CLI::Range(1, 256));
  cmd_robust->add_option("--json", robust.out_json, "Result file");
  cmd_robust->add_option("--csv", robust.out_csv, "Iteration log or gain curve");

  WorstCaseArgs worst;
  auto* cmd_worst = app.add_subcommand("worstcase", "Worst-case disturbance at a target level");
  cmd_worst->add_option("problem", worst.problem, "Problem file")->required();
  cmd_worst->add_option("--gamma", worst.gamma, "Target level below the nominal gain")
      ->check(CLI::PositiveNumber);
  cmd_worst->add_option("--csv", worst.out_csv, "Signal file (t, d0, d1, ...)");
  cmd_worst->add_option("--samples", worst.samples, "Sample count on [t0, T]")
      ->check(CLI::Range(2, 10'000'000));

  AcceptanceOptions bench;
  std::vector<int> only;
  bool bench_verbose = false;
  auto* cmd_bench = app.add_subcommand("bench", "Run the packaged studies and acceptance checks");
  cmd_bench->add_flag("--quick", bench.quick, "Reduced grids and sample counts");
  cmd_bench->add_option("--seed", bench.seed);
  cmd_bench->add_option("--jobs", bench.jobs)->check(CLI::Range(1u, 256u));
  cmd_bench->add_option("--only", only, "Criteria to run")->delimiter(',')->check(CLI::Range(1, 8));
  cmd_bench->add_flag("-v,--verbose", bench_verbose);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*cmd_nominal) return run_nominal(nominal);
    if (*cmd_robust) return run_robust(robust);
    if (*cmd_worst) return run_worstcase(worst);
    if (bench_verbose) {
      bench.progress = [](const std::string& line) { std::cerr << line << std::endl; };
    }
    return run_bench(bench, only);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kNumericalError;
  }
}
