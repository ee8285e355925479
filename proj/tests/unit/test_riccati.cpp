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

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "ltviqc/riccati/gain.hpp"
#include "ltviqc/riccati/oracles.hpp"
#include "ltviqc/riccati/rde.hpp"
#include "ltviqc/studies/random_systems.hpp"
#include "ltviqc/studies/robot.hpp"

using namespace ltviqc;
using Eigen::MatrixXd;

namespace {

MatrixXd scalar(double v) { return MatrixXd::Constant(1, 1, v); }

MatrixSignal constant(double v, double T) { return MatrixSignal::Constant(scalar(v), T); }

LtvSystem first_order(double T) {
  return LtvSystem::Constant(scalar(-1), scalar(1), scalar(1), scalar(0), T);
}

// Root of tan(w) = -w on (pi/2, pi) by bisection.
double tan_root() {
  double lo = std::numbers::pi / 2 + 1e-9, hi = std::numbers::pi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::tan(mid) + mid < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

// Ydot + 1 + Y^2 = 0, Y(1) = 0  =>  Y(t) = tan(1 - t)
TEST(RiccatiOracle, ScalarTangentSolution) {
  const QuadraticCost cost(constant(1, 1), constant(0, 1), constant(-1, 1), scalar(0));
  RdeOptions o;
  o.ode = {1e-12, 1e-10};
  const RdeSolution sol = integrate_rde_backward(constant(0, 1), constant(1, 1), cost, o);
  ASSERT_TRUE(sol.converged());
  EXPECT_NEAR(sol(0.0)(0, 0), std::tan(1.0), 1e-9);
  // between accepted steps the solution is a cubic Hermite interpolant
  EXPECT_NEAR(sol(0.5)(0, 0), std::tan(0.5), 1e-6);
  EXPECT_NEAR(sol.eval(0.5).Pdot(0, 0), -(1.0 + std::tan(0.5) * std::tan(0.5)), 1e-4);
}

// Same equation on [0, 2] blows up at t = 2 - pi/2.
TEST(RiccatiOracle, ScalarTangentEscapes) {
  const QuadraticCost cost(constant(1, 2), constant(0, 2), constant(-1, 2), scalar(0));
  const RdeSolution sol = integrate_rde_backward(constant(0, 2), constant(1, 2), cost);
  EXPECT_FALSE(sol.converged());
  EXPECT_NEAR(sol.escape_time(), 2.0 - std::numbers::pi / 2, 1e-3);
}

// Standard scalar LQR: P(0) = tanh(1)
TEST(RiccatiOracle, ScalarLqrTanh) {
  const MatrixSignal K =
      finite_horizon_lqr(constant(0, 1), constant(1, 1), scalar(1), scalar(1), scalar(0), scalar(0));
  EXPECT_NEAR(K(0.0)(0, 0), std::tanh(1.0), 1e-6);
  EXPECT_NEAR(K(1.0)(0, 0), 0.0, 1e-12);
}

// x' = -x + d, e(T) = x(T): gain = sqrt((1 - exp(-2T)) / 2)
TEST(GainOracle, ScalarL2ToEuclidean) {
  const double expected = std::sqrt((1.0 - std::exp(-2.0)) / 2.0);  // 0.65752
  const LtvSystem sys = first_order(1.0);
  EXPECT_NEAR(gramian_l2e_oracle(sys, {1e-12, 1e-10}), expected, 1e-9);
  const GainBound g = bisect_gain(sys, GainKind::L2ToEuclidean, std::nullopt, {1e-7, 60, {}});
  EXPECT_NEAR(g.upper, expected, 1e-6);
  EXPECT_LE(g.lower, g.upper);
  EXPECT_TRUE(g.certificate.converged());
}

// x' = -x + d, e = x on [0, 1]: gamma = 1 / sqrt(1 + w^2) with tan(w) = -w.
TEST(GainOracle, ScalarInducedL2) {
  const double expected = 1.0 / std::sqrt(1.0 + std::pow(tan_root(), 2));  // 0.44212
  const LtvSystem sys = first_order(1.0);
  const GainBound g = bisect_gain(sys, GainKind::InducedL2, std::nullopt, {1e-7, 60, {}});
  EXPECT_NEAR(g.upper, expected, 1e-6);
  EXPECT_NEAR(lifted_l2_gain_oracle(sys, 4000), expected, 1e-3);
}

TEST(GainOracle, RandomSystemAgainstLifting) {
  std::mt19937_64 rng(11);
  RandomLtvOptions o;
  o.states = 3;
  o.inputs = 2;
  o.outputs = 2;
  o.feedthrough = true;
  const LtvSystem sys = random_stable_ltv(rng, o);
  const GainBound g = bisect_gain(sys, GainKind::InducedL2, std::nullopt, {1e-6, 60, {}});
  EXPECT_NEAR(g.upper / lifted_l2_gain_oracle(sys, 4000), 1.0, 1e-2);
}

TEST(GainOracle, LiftedMatrixMatchesMatrixFree) {
  std::mt19937_64 rng(5);
  RandomLtvOptions o;
  o.states = 2;
  const LtvSystem sys = random_stable_ltv(rng, o);
  const MatrixXd L = lifted_operator_matrix(sys, 200);
  const double smax = Eigen::JacobiSVD<MatrixXd>(L).singularValues()(0);
  EXPECT_NEAR(lifted_l2_gain_oracle(sys, 200), smax, 1e-8 * smax);
}

TEST(GainOracle, GramianOfIntegrator) {
  // x' = d: W(T) = T
  const LtvSystem sys = LtvSystem::Constant(scalar(0), scalar(1), scalar(1), scalar(0), 3.0);
  EXPECT_NEAR(reachability_gramian(sys)(0, 0), 3.0, 1e-9);
}

TEST(Gain, L2ToEuclideanNeedsZeroTerminalFeedthrough) {
  const LtvSystem sys = LtvSystem::Constant(scalar(-1), scalar(1), scalar(1), scalar(1), 1.0);
  EXPECT_THROW(bisect_gain(sys, GainKind::L2ToEuclidean), std::invalid_argument);
}

TEST(Gain, RdiResidualOfSolutionVanishes) {
  const LtvSystem sys = first_order(1.0);
  const auto sol = nominal_rde_at(sys, GainKind::InducedL2, 0.6, {{1e-12, 1e-10}});
  ASSERT_TRUE(sol.has_value());
  const QuadraticCost cost = cost_for_l2_gain(sys, 0.6);
  const double r =
      rdi_residual(as_storage(*sol), cost, sys.A(), sys.B(), TimeGrid::Uniform(1.0, 11));
  EXPECT_LT(std::abs(r), 1e-4);
}

TEST(Gain, InfeasibleBelowGain) {
  EXPECT_FALSE(nominal_rde_at(first_order(1.0), GainKind::InducedL2, 0.4).has_value());
  EXPECT_TRUE(nominal_rde_at(first_order(1.0), GainKind::InducedL2, 0.45).has_value());
}

TEST(Gain, GenericBisection) {
  const GammaTest test = [](double g) -> std::optional<RdeSolution> {
    if (g >= 0.3) return RdeSolution();
    return std::nullopt;
  };
  const auto b = bisect_gamma(test, 1.0, 2.0, 1e-6, 60);
  ASSERT_TRUE(b.has_value());
  EXPECT_NEAR(b->upper, 0.3, 1e-6);
  EXPECT_LT(b->lower, 0.3);
}

TEST(Gain, KindStrings) {
  EXPECT_EQ(gain_kind_from_string("l2"), GainKind::InducedL2);
  EXPECT_EQ(gain_kind_from_string("l2e"), GainKind::L2ToEuclidean);
  EXPECT_STREQ(to_string(GainKind::L2ToEuclidean), "l2e");
  EXPECT_THROW(gain_kind_from_string("hinf"), std::invalid_argument);
}

TEST(Rde, RejectsIndefiniteR) {
  const QuadraticCost cost(constant(1, 1), constant(0, 1), constant(1, 1), scalar(0));
  EXPECT_THROW(integrate_rde_backward(constant(0, 1), constant(1, 1), cost), std::invalid_argument);
}
