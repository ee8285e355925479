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
#include <stdexcept>

#include <gtest/gtest.h>

#include "ltviqc/ltv/ltv_system.hpp"
#include "ltviqc/ltv/quadratic_cost.hpp"
#include "ltviqc/ltv/serialization.hpp"
#include "ltviqc/ltv/simulate.hpp"
#include "ltviqc/ltv/time_grid.hpp"

using namespace ltviqc;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd scalar(double v) { return MatrixXd::Constant(1, 1, v); }

VectorSignal constant_input(double value, double T, std::size_t n = 2) {
  const TimeGrid g = TimeGrid::Uniform(T, n);
  return VectorSignal(g, std::vector<VectorXd>(n, VectorXd::Constant(1, value)));
}

}  // namespace

// x' = -x + 1 from 0: x(t) = 1 - exp(-t)
TEST(Simulate, FirstOrderStepMatchesClosedForm) {
  const LtvSystem sys = LtvSystem::Constant(scalar(-1), scalar(1), scalar(1), scalar(0), 2.0);
  const SimulationResult r = simulate(sys, constant_input(1.0, 2.0, 2001), VectorXd::Zero(1),
                                      {1e-12, 1e-10});
  for (double t : {0.0, 0.5, 1.0, 2.0}) {
    EXPECT_NEAR(r.x(t)(0), 1.0 - std::exp(-t), 1e-8) << t;
  }
}

// x' = t x (via A(t) = t on a fine grid): x(1) = exp(1/2)
TEST(Simulate, TimeVaryingScalar) {
  const TimeGrid g = TimeGrid::Uniform(1.0, 2001);
  std::vector<MatrixXd> As;
  for (double t : g.points()) As.push_back(scalar(t));
  const LtvSystem sys(MatrixSignal(g, As), MatrixSignal::Constant(scalar(0), 1.0),
                      MatrixSignal::Constant(scalar(1), 1.0), MatrixSignal::Constant(scalar(0), 1.0));
  const SimulationResult r =
      simulate(sys, constant_input(0.0, 1.0), VectorXd::Ones(1), {1e-12, 1e-10});
  EXPECT_NEAR(r.x(1.0)(0), std::exp(0.5), 1e-7);
}

TEST(Simulate, L2NormOfConstant) {
  EXPECT_NEAR(l2_norm_squared(constant_input(2.0, 3.0)), 12.0, 1e-12);
  EXPECT_NEAR(l2_norm(constant_input(2.0, 3.0)), std::sqrt(12.0), 1e-12);
}

TEST(TimeGrid, RejectsBadPoints) {
  EXPECT_THROW(TimeGrid({0.0}), std::invalid_argument);
  EXPECT_THROW(TimeGrid({0.5, 1.0}), std::invalid_argument);
  EXPECT_THROW(TimeGrid({0.0, 1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(TimeGrid({0.0, 2.0, 1.0}), std::invalid_argument);
}

TEST(TimeGrid, UniformMergeAndSegments) {
  const TimeGrid a = TimeGrid::Uniform(1.0, 5);
  EXPECT_EQ(a.size(), 5u);
  EXPECT_DOUBLE_EQ(a[2], 0.5);
  const TimeGrid b({0.0, 0.3, 0.5 + 1e-9, 1.0});
  const TimeGrid m = TimeGrid::Merge(a, b, 1e-6);
  EXPECT_EQ(m.size(), 6u);  // 0.5 + 1e-9 dropped
  EXPECT_EQ(a.segment(0.0), 0u);
  EXPECT_EQ(a.segment(0.3), 1u);
  EXPECT_EQ(a.segment(1.0), 3u);
  EXPECT_TRUE(a.contains(1.0));
  EXPECT_FALSE(a.contains(1.01));
  EXPECT_FALSE(a.contains(-0.01));
}

TEST(Signal, LinearAndZeroOrderHold) {
  const TimeGrid g({0.0, 1.0, 2.0});
  const std::vector<MatrixXd> s{scalar(0), scalar(2), scalar(-2)};
  const MatrixSignal lin(g, s);
  const MatrixSignal zoh(g, s, Interp::ZeroOrderHold);
  EXPECT_DOUBLE_EQ(lin(0.25)(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(lin(1.5)(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(zoh(0.25)(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(zoh(1.5)(0, 0), 2.0);
  EXPECT_THROW(lin(2.5), std::out_of_range);
}

TEST(Signal, ShapeChecks) {
  const TimeGrid g({0.0, 1.0});
  EXPECT_THROW(MatrixSignal(g, {scalar(1)}), std::invalid_argument);
  EXPECT_THROW(MatrixSignal(g, {scalar(1), MatrixXd::Zero(2, 1)}), std::invalid_argument);
}

TEST(Signal, WithHorizon) {
  const MatrixSignal c = MatrixSignal::Constant(scalar(3), 1.0);
  EXPECT_DOUBLE_EQ(with_horizon(c, 5.0)(4.0)(0, 0), 3.0);
  const MatrixSignal v(TimeGrid({0.0, 1.0}), {scalar(0), scalar(1)});
  EXPECT_THROW(with_horizon(v, 2.0), std::invalid_argument);
  const MatrixSignal r = with_horizon(v, 0.5);
  EXPECT_DOUBLE_EQ(r.horizon(), 0.5);
  EXPECT_DOUBLE_EQ(r(0.5)(0, 0), 0.5);
}

TEST(LtvSystem, DimensionMismatchThrows) {
  EXPECT_THROW(LtvSystem::Constant(MatrixXd::Zero(2, 2), MatrixXd::Zero(3, 1), MatrixXd::Zero(1, 2),
                                   MatrixXd::Zero(1, 1), 1.0),
               std::invalid_argument);
}

TEST(PartitionedLtvSystem, PartitionRoundTrip) {
  MatrixXd A(2, 2), B(2, 3), C(3, 2), D(3, 3);
  A << -1, 2, 0, -3;
  B << 1, 2, 3, 4, 5, 6;
  C << 1, 0, 0, 1, 1, 1;
  D.setRandom();
  const LtvSystem sys = LtvSystem::Constant(A, B, C, D, 2.0);
  const PartitionedLtvSystem P = PartitionedLtvSystem::FromPartition(sys, 1, 2);
  EXPECT_EQ(P.nw(), 1);
  EXPECT_EQ(P.nd(), 2);
  EXPECT_EQ(P.nv(), 2);
  EXPECT_EQ(P.ne(), 1);
  EXPECT_TRUE(P.combined().D()(1.0).isApprox(D));
  EXPECT_TRUE(P.nominal().B()(0.0).isApprox(B.rightCols(2)));
  EXPECT_TRUE(P.nominal().C()(0.0).isApprox(C.bottomRows(1)));
}

TEST(QuadraticCost, FactoredTermIsProductOfInterpolants) {
  const TimeGrid g({0.0, 1.0});
  const MatrixSignal L(g, {MatrixXd::Constant(1, 2, 0.0), MatrixXd::Constant(1, 2, 2.0)});
  const MatrixSignal W = MatrixSignal::Constant(scalar(1), 1.0);
  const QuadraticCost cost(MatrixSignal::Constant(scalar(0), 1.0),
                           MatrixSignal::Constant(scalar(0), 1.0),
                           MatrixSignal::Constant(scalar(-1), 1.0), scalar(0), {{L, W}});
  // L(0.5) = [1 1], so L'L = ones; an interpolated product would give 2.
  const CostBlocks c = cost.at(0.5);
  EXPECT_NEAR(c.Q(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(c.S(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(c.R(0, 0), 0.0, 1e-14);
}

TEST(QuadraticCost, CostEvalOfL2Cost) {
  const LtvSystem sys = LtvSystem::Constant(scalar(-1), scalar(1), scalar(1), scalar(0), 2.0);
  const VectorSignal d = constant_input(1.0, 2.0, 2001);
  const SimulationResult r = simulate(sys, d, VectorXd::Zero(1), {1e-12, 1e-10});
  const double J = cost_eval(cost_for_l2_gain(sys, 0.5), r.x, d);
  EXPECT_NEAR(J, l2_norm_squared(r.e) - 0.25 * l2_norm_squared(d), 1e-9);
}

TEST(Serialization, SystemRoundTrip) {
  const TimeGrid g({0.0, 0.5, 1.0});
  std::vector<MatrixXd> As{scalar(-1), scalar(-2), scalar(-3)};
  const LtvSystem sys(MatrixSignal(g, As), MatrixSignal::Constant(scalar(1), 1.0),
                      MatrixSignal::Constant(scalar(2), 1.0), MatrixSignal::Constant(scalar(0), 1.0));
  const LtvSystem back = ltv_system_from_json(to_json(sys));
  for (double t : {0.0, 0.25, 0.5, 1.0}) {
    EXPECT_DOUBLE_EQ(back.A()(t)(0, 0), sys.A()(t)(0, 0));
    EXPECT_DOUBLE_EQ(back.C()(t)(0, 0), 2.0);
  }
  EXPECT_EQ(to_json(back), to_json(sys));
}

TEST(Serialization, RejectsUnknownKeys) {
  auto j = to_json(LtvSystem::Constant(scalar(-1), scalar(1), scalar(1), scalar(0), 1.0));
  j["extra"] = 1;
  EXPECT_THROW(ltv_system_from_json(j), std::invalid_argument);
}

TEST(Serialization, RejectsRaggedMatrix) {
  EXPECT_THROW(matrix_from_json(nlohmann::json::parse("[[1, 2], [3]]")), std::invalid_argument);
}
