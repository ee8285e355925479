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

#include <gtest/gtest.h>

#include "ltviqc/common/errors.hpp"
#include "ltviqc/riccati/gain.hpp"
#include "ltviqc/ltv/simulate.hpp"
#include "ltviqc/riccati/rde.hpp"
#include "ltviqc/worst_case/hamiltonian.hpp"
#include "ltviqc/worst_case/worst_case.hpp"

using namespace ltviqc;
using Eigen::MatrixXd;

namespace {

MatrixXd scalar(double v) { return MatrixXd::Constant(1, 1, v); }

MatrixSignal constant(double v, double T) { return MatrixSignal::Constant(scalar(v), T); }

HamiltonianSystem tangent_hamiltonian(double T) {
  const QuadraticCost cost(constant(1, T), constant(0, T), constant(-1, T), scalar(0));
  return build_hamiltonian(constant(0, T), constant(1, T), cost);
}

}  // namespace

// H = [0 1; -1 0] and X(T) = [1; 0]: X1(t) = cos(T - t), X2(t) = sin(T - t).
TEST(TransitionOracle, RotationBlocks) {
  const HamiltonianSystem H = tangent_hamiltonian(1.0);
  EXPECT_NEAR(H(0.3)(0, 1), 1.0, 1e-15);
  EXPECT_NEAR(H(0.3)(1, 0), -1.0, 1e-15);
  const TransitionBlocks X = transition_blocks(H, scalar(0), {1e-12, 1e-10});
  for (double t : {0.0, 0.4, 1.0}) {
    EXPECT_NEAR(X.X1(t)(0, 0), std::cos(1.0 - t), 1e-8);
    EXPECT_NEAR(X.X2(t)(0, 0), std::sin(1.0 - t), 1e-8);
  }
  EXPECT_FALSE(conjugate_point_scan(X).has_value());
}

TEST(TransitionOracle, ConjugatePointOfTangent) {
  const TransitionBlocks X = transition_blocks(tangent_hamiltonian(2.0), scalar(0), {1e-12, 1e-10});
  const auto cp = conjugate_point_scan(X);
  ASSERT_TRUE(cp.has_value());
  EXPECT_NEAR(cp->t0, 2.0 - std::numbers::pi / 2, 1e-6);
  EXPECT_NEAR(std::abs(cp->v(0)), 1.0, 1e-12);
}

// The Riccati solution equals X2 X1^{-1} from the Hamiltonian.
TEST(TransitionOracle, MatchesRiccati) {
  const LtvSystem sys = LtvSystem::Constant(scalar(-1), scalar(1), scalar(1), scalar(0), 1.0);
  const QuadraticCost cost = cost_for_l2_gain(sys, 0.7);
  const TransitionBlocks X =
      transition_blocks(build_hamiltonian(sys.A(), sys.B(), cost), cost.F(), {1e-12, 1e-10});
  RdeOptions o;
  o.ode = {1e-12, 1e-10};
  const RdeSolution P = integrate_rde_backward(sys.A(), sys.B(), cost, o);
  ASSERT_TRUE(P.converged());
  for (double t : {0.0, 0.5, 0.9}) {
    const MatrixXd Y = X.X2(t) * X.X1(t).inverse();
    EXPECT_NEAR(Y(0, 0), P(t)(0, 0), 1e-7);
  }
}

TEST(WorstCase, ScalarSystemReachesTarget) {
  const LtvSystem sys = LtvSystem::Constant(scalar(-1), scalar(1), scalar(1), scalar(0), 1.0);
  const double gain = bisect_gain(sys, GainKind::InducedL2, std::nullopt, {1e-7, 60, {}}).upper;
  const double gamma = 0.97 * gain;
  const WorstCaseInput wc = worst_case_disturbance(sys, GainKind::InducedL2, gamma);
  EXPECT_NEAR(l2_norm(wc.d), 1.0, 1e-6);
  EXPECT_GE(wc.ratio, 0.99 * gamma);
  EXPECT_LE(wc.ratio, gain * (1.0 + 1e-4));
  EXPECT_NEAR(wc.cost, 0.0, 1e-5);
  EXPECT_GE(wc.t0, 0.0);
}

TEST(WorstCase, L2ToEuclidean) {
  const LtvSystem sys = LtvSystem::Constant(scalar(-1), scalar(1), scalar(1), scalar(0), 1.0);
  const double gain = std::sqrt((1.0 - std::exp(-2.0)) / 2.0);
  const WorstCaseInput wc = worst_case_disturbance(sys, GainKind::L2ToEuclidean, 0.95 * gain);
  EXPECT_GE(wc.ratio, 0.99 * 0.95 * gain);
  EXPECT_LE(wc.ratio, gain * (1.0 + 1e-6));
}

TEST(WorstCase, AboveGainHasNoConjugatePoint) {
  const LtvSystem sys = LtvSystem::Constant(scalar(-1), scalar(1), scalar(1), scalar(0), 1.0);
  try {
    worst_case_disturbance(sys, GainKind::InducedL2, 0.5);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("no conjugate point"), std::string::npos);
  }
}
