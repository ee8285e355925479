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

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "ltviqc/ltv/serialization.hpp"
#include "ltviqc/ltv/simulate.hpp"
#include "ltviqc/worst_case/worst_case.hpp"
#include "ltviqc_cli/problem_file.hpp"

using namespace ltviqc;
using nlohmann::json;

namespace {

json scalar_system() {
  return to_json(LtvSystem::Constant(Eigen::MatrixXd::Constant(1, 1, -1.0),
                                     Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1),
                                     Eigen::MatrixXd::Zero(1, 1), 1.0));
}

}  // namespace

TEST(ProblemFile, RoundTrip) {
  const json j = {{"system", {{"builtin", "reference_plant"}}},
                  {"iqc", {{"type", "unit_norm_lti"}, {"v", 1}, {"p", 10}}},
                  {"performance", "l2e"},
                  {"horizon", 2.0},
                  {"horizons", {1.0, 2.0}},
                  {"gamma_target", 0.3},
                  {"algorithm", {{"tol", 1e-3}, {"spline_end", "not_a_knot"}}},
                  {"output", {{"json", "r.json"}}}};
  const cli::ProblemFile p = cli::problem_from_json(j);
  EXPECT_EQ(p.performance, GainKind::L2ToEuclidean);
  EXPECT_EQ(p.algorithm.spline_end, SplineEnd::NotAKnot);
  EXPECT_DOUBLE_EQ(p.algorithm.tol, 1e-3);
  EXPECT_EQ(p.algorithm.max_iter, 10);
  const cli::ProblemFile back = cli::problem_from_json(cli::to_json(p));
  EXPECT_EQ(back, p);
  EXPECT_EQ(cli::to_json(back), cli::to_json(p));
}

TEST(ProblemFile, RejectsMalformedInput) {
  EXPECT_THROW(cli::problem_from_json({{"system", scalar_system()}, {"extra", 1}}),
               std::invalid_argument);
  EXPECT_THROW(cli::problem_from_json({{"horizon", 1.0}}), std::invalid_argument);
  EXPECT_THROW(cli::problem_from_json({{"system", {{"builtin", "nope"}}}}), std::invalid_argument);
  EXPECT_THROW(cli::problem_from_json({{"system", scalar_system()}, {"performance", "hinf"}}),
               std::invalid_argument);
  EXPECT_THROW(cli::problem_from_json({{"system", scalar_system()}, {"horizon", -1.0}}),
               std::invalid_argument);
  EXPECT_THROW(cli::problem_from_json({{"system", scalar_system()},
                                       {"algorithm", {{"max_iter", 0}}}}),
               std::invalid_argument);
  EXPECT_THROW(cli::problem_from_json({{"system", scalar_system()},
                                       {"algorithm", {{"unknown", 1}}}}),
               std::invalid_argument);
  EXPECT_THROW(cli::load_problem("/nonexistent/problem.json"), std::invalid_argument);
}

TEST(ProblemFile, SystemFromRelativePath) {
  const auto dir = std::filesystem::temp_directory_path() / "ltviqc_cli_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "sys.json") << scalar_system().dump();
  std::ofstream(dir / "problem.json")
      << json{{"system", "sys.json"}, {"performance", "l2e"}}.dump();
  const cli::ProblemFile p = cli::load_problem(dir / "problem.json");
  EXPECT_DOUBLE_EQ(cli::nominal_system(p).horizon(), 1.0);
  EXPECT_THROW(cli::partitioned_system(p), std::invalid_argument);
  EXPECT_THROW(cli::problem_iqc(p, 1.0), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST(ProblemFile, BuiltinAndPartition) {
  const cli::ProblemFile b = cli::problem_from_json({{"system", {{"builtin", "reference_plant"}}},
                                                     {"horizon", 3.0}});
  const PartitionedLtvSystem G = cli::partitioned_system(b);
  EXPECT_DOUBLE_EQ(G.horizon(), 3.0);
  EXPECT_EQ(cli::problem_iqc(b, 3.0).filter.n_z(), 4);

  const cli::ProblemFile p = cli::problem_from_json(
      {{"system", to_json(G.combined())}, {"partition", {{"w", 1}, {"v", 1}}}});
  EXPECT_EQ(cli::partitioned_system(p).nd(), G.nd());
  EXPECT_THROW(cli::resolve_system(cli::problem_from_json(
                   {{"system", scalar_system()}, {"horizon", 2.0}})),
               std::invalid_argument);
}

// The worst-case signal reproduces its ratio when simulated again.
TEST(WorstCaseOutput, SignalReproducesRatio) {
  const cli::ProblemFile p =
      cli::problem_from_json({{"system", scalar_system()}, {"performance", "l2"}});
  const LtvSystem sys = cli::nominal_system(p);
  const WorstCaseInput wc = worst_case_disturbance(sys, GainKind::InducedL2, 0.44);
  const SimulationResult r = simulate(sys, wc.d, Eigen::VectorXd::Zero(1), {1e-11, 1e-9});
  EXPECT_NEAR(l2_norm(r.e) / l2_norm(wc.d), wc.ratio, 1e-6);
  EXPECT_GE(wc.ratio, 0.99 * 0.44);
}
