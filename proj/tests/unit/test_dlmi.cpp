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
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "ltviqc/common/symmetric.hpp"
#include "ltviqc/dlmi/conic_program.hpp"
#include "ltviqc/dlmi/interior_point.hpp"
#include "ltviqc/dlmi/robust_sdp.hpp"
#include "ltviqc/dlmi/spline_basis.hpp"
#include "ltviqc/dlmi/storage.hpp"

using namespace ltviqc;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd scalar(double v) { return MatrixXd::Constant(1, 1, v); }

double interpolate(const SplineBasis& b, const std::vector<double>& y, double t, double* dy) {
  VectorXd h, hd;
  b.eval(t, h, hd);
  double v = 0.0, d = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    v += h(static_cast<Eigen::Index>(j)) * y[j];
    d += hd(static_cast<Eigen::Index>(j)) * y[j];
  }
  if (dy) *dy = d;
  return v;
}

}  // namespace

TEST(SplineBasis, CardinalAndReproducesConstants) {
  for (SplineEnd end : {SplineEnd::Natural, SplineEnd::NotAKnot}) {
    const SplineBasis b(TimeGrid({0.0, 0.3, 1.0, 1.2, 2.0}), end);
    for (std::size_t k = 0; k < b.size(); ++k) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        EXPECT_NEAR(b.value(j, b.knots()[k]), j == k ? 1.0 : 0.0, 1e-12);
      }
    }
    for (double t : {0.0, 0.1, 0.77, 1.5, 2.0}) {
      double d = 0.0;
      EXPECT_NEAR(interpolate(b, std::vector<double>(5, 3.0), t, &d), 3.0, 1e-10);
      EXPECT_NEAR(d, 0.0, 1e-10);
    }
  }
}

TEST(SplineBasis, NaturalReproducesLines) {
  const SplineBasis b(TimeGrid::Uniform(2.0, 6));
  std::vector<double> y;
  for (double t : b.knots().points()) y.push_back(1.0 - 2.0 * t);
  double d = 0.0;
  EXPECT_NEAR(interpolate(b, y, 0.77, &d), 1.0 - 1.54, 1e-12);
  EXPECT_NEAR(d, -2.0, 1e-12);
}

// Not-a-knot splines reproduce cubics exactly.
TEST(SplineBasis, NotAKnotReproducesCubics) {
  const SplineBasis b(TimeGrid({0.0, 0.2, 0.7, 1.1, 1.6, 2.0}), SplineEnd::NotAKnot);
  auto f = [](double t) { return t * t * t - 2.0 * t * t + 0.5; };
  std::vector<double> y;
  for (double t : b.knots().points()) y.push_back(f(t));
  for (double t : {0.05, 0.5, 1.3, 1.99}) {
    double d = 0.0;
    EXPECT_NEAR(interpolate(b, y, t, &d), f(t), 1e-11);
    EXPECT_NEAR(d, 3.0 * t * t - 4.0 * t, 1e-10);
  }
}

TEST(SplineBasis, DerivativeMatchesFiniteDifference) {
  const SplineBasis b(TimeGrid::Uniform(1.0, 7));
  const double t = 0.41, h = 1e-6;
  for (std::size_t j = 0; j < b.size(); ++j) {
    const double fd = (b.value(j, t + h) - b.value(j, t - h)) / (2.0 * h);
    EXPECT_NEAR(b.derivative(j, t), fd, 1e-7);
  }
}

TEST(SplineBasis, Errors) {
  const SplineBasis b(TimeGrid::Uniform(1.0, 4));
  VectorXd h, hd;
  EXPECT_THROW(b.eval(1.5, h, hd), std::out_of_range);
  EXPECT_THROW(SplineBasis(TimeGrid::Uniform(1.0, 3), SplineEnd::NotAKnot), std::invalid_argument);
}

// min t  s.t.  [-t 1; 1 -t] <= 0  =>  t* = 1
TEST(InteriorPointOracle, TwoByTwo) {
  ConicProgram p;
  const int t = p.add_variable("t", 1.0);
  MatrixXd F0(2, 2);
  F0 << 0, 1, 1, 0;
  p.add_lmi({"lmi", F0, {{t, -MatrixXd::Identity(2, 2)}}});
  const SdpSolution s = InteriorPointSolver(SolverOptions{}).solve(p);
  ASSERT_EQ(s.status, SdpStatus::Optimal);
  EXPECT_NEAR(s.y(t), 1.0, 1e-7);
  EXPECT_NEAR(s.objective, 1.0, 1e-7);
}

// max eigenvalue of a symmetric matrix: min t s.t. A - t I <= 0
TEST(InteriorPointOracle, LargestEigenvalue) {
  MatrixXd A(3, 3);
  A << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  ConicProgram p;
  const int t = p.add_variable("t", 1.0);
  p.add_lmi({"lmi", A, {{t, -MatrixXd::Identity(3, 3)}}});
  const SdpSolution s = InteriorPointSolver(SolverOptions{}).solve(p);
  ASSERT_EQ(s.status, SdpStatus::Optimal);
  EXPECT_NEAR(s.y(t), 2.0 + std::sqrt(2.0), 1e-7);
}

// x <= -1 and x >= 1 cannot both hold.
TEST(InteriorPoint, DetectsInfeasibility) {
  ConicProgram p;
  const int x = p.add_variable("x", 1.0);
  p.add_lmi({"a", scalar(1), {{x, scalar(1)}}});
  p.add_lmi({"b", scalar(1), {{x, scalar(-1)}}});
  const SdpSolution s = InteriorPointSolver(SolverOptions{}).solve(p);
  EXPECT_EQ(s.status, SdpStatus::Infeasible);
}

TEST(InteriorPoint, FixedVariables) {
  ConicProgram p;
  const int t = p.add_variable("t", 1.0);
  const int a = p.add_variable("a");
  // [-t a; a -t] <= 0 with a fixed to 3 => t* = 3
  MatrixXd E(2, 2);
  E << 0, 1, 1, 0;
  p.add_lmi({"lmi", MatrixXd::Zero(2, 2), {{t, -MatrixXd::Identity(2, 2)}, {a, E}}});
  p.fix_variable(a, 3.0);
  const SdpSolution s = InteriorPointSolver(SolverOptions{}).solve(p);
  ASSERT_EQ(s.status, SdpStatus::Optimal);
  EXPECT_NEAR(s.y(t), 3.0, 1e-7);
  EXPECT_DOUBLE_EQ(s.y(a), 3.0);
}

TEST(ConicProgram, SdpaExport) {
  ConicProgram p;
  const int t = p.add_variable("t", 1.0);
  p.add_lmi({"lmi", scalar(2), {{t, scalar(-1)}}});
  std::ostringstream os;
  p.write_sdpa(os);
  EXPECT_NE(os.str().find("1"), std::string::npos);
  EXPECT_NEAR(p.max_violation(VectorXd::Constant(1, 3.0)), -1.0, 1e-15);
}

// Scalar x' = -x + d on [0, 1]: the nominal SDP lies within 5% above the
// Riccati value.
TEST(NominalSdp, ScalarL2ToEuclidean) {
  const LtvSystem sys = LtvSystem::Constant(scalar(-1), scalar(1), scalar(1), scalar(0), 1.0);
  const double gain = std::sqrt((1.0 - std::exp(-2.0)) / 2.0);
  const SplineBasis basis(TimeGrid::Uniform(1.0, 10));
  const NominalSdp nom = assemble_nominal_sdp(sys, GainKind::L2ToEuclidean, basis,
                                              TimeGrid::Uniform(1.0, 20));
  const SdpOutcome out = solve_robust_sdp(nom.sdp);
  ASSERT_EQ(out.status, SdpStatus::Optimal);
  EXPECT_GE(out.gamma(), gain * (1.0 - 1e-4));
  EXPECT_LE(out.gamma(), gain * 1.05);
  const StorageValue PT = eval_storage(basis, MatrixBasis(), out.storage, 1.0);
  EXPECT_GE(PT.P(0, 0) - 1.0, nom.sdp.eps - 1e-8);
  const TimeGrid check = TimeGrid::Uniform(1.0, 20);
  for (double t : check.points()) {
    const double m = max_eigenvalue(dlmi_block(nom.ext, GainKind::L2ToEuclidean, nom.mparam,
                                               out.multiplier,
                                               eval_storage(basis, MatrixBasis(), out.storage, t),
                                               out.gamma2, t));
    EXPECT_LE(m, -0.5 * nom.sdp.eps) << t;
  }
}

TEST(NominalSdp, FixedGammaBelowGainIsInfeasible) {
  const LtvSystem sys = LtvSystem::Constant(scalar(-1), scalar(1), scalar(1), scalar(0), 1.0);
  const SplineBasis basis(TimeGrid::Uniform(1.0, 6));
  NominalSdp nom = assemble_nominal_sdp(sys, GainKind::L2ToEuclidean, basis,
                                        TimeGrid::Uniform(1.0, 12));
  fix_gamma(nom.sdp, 0.5);
  EXPECT_EQ(solve_robust_sdp(nom.sdp).status, SdpStatus::Infeasible);
}

TEST(MatrixBasis, NormalizedToUnitPeak) {
  std::vector<double> times{0.0, 1.0};
  std::vector<MatrixXd> Y{scalar(4.0), scalar(2.0)}, Yd{scalar(-2.0), scalar(-2.0)};
  const RdeSolution sol(RdeStatus::ConvergedOnFullHorizon, 1.0, std::nan(""), times, Y, Yd);
  const MatrixBasis mb({sol});
  EXPECT_DOUBLE_EQ(mb.scale(0), 0.25);
  EXPECT_NEAR(mb.eval(0, 0.0).P(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(mb.eval(0, 0.5).Pdot(0, 0), -0.5, 1e-12);
}

TEST(Symmetric, PackRoundTrip) {
  MatrixXd X(3, 3);
  X << 1, 2, 3, 2, 4, 5, 3, 5, 6;
  EXPECT_EQ(pack_upper(X).size(), 6);
  EXPECT_TRUE(unpack_upper(pack_upper(X), 3).isApprox(X));
  EXPECT_NEAR(max_eigenvalue(MatrixXd::Identity(2, 2)), 1.0, 1e-15);
}
