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
#include <random>

#include <gtest/gtest.h>

#include "ltviqc/riccati/gain.hpp"
#include "ltviqc/studies/delta_sampling.hpp"
#include "ltviqc/studies/lti.hpp"
#include "ltviqc/studies/reference_plant.hpp"
#include "ltviqc/studies/random_systems.hpp"
#include "ltviqc/studies/robot.hpp"

using namespace ltviqc;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd coeffs(std::initializer_list<double> c) {
  VectorXd v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (double x : c) v(i++) = x;
  return v;
}

double sweep_peak(const LtiSystem& sys) {
  double peak = 0.0;
  for (int k = 0; k <= 200000; ++k) {
    const double w = 1e-3 * std::pow(10.0, 7.0 * k / 200000.0);
    peak = std::max(peak, std::abs(sys.transfer({0.0, w})(0, 0)));
  }
  return peak;
}

}  // namespace

TEST(Lti, TransferFunctionRealization) {
  const LtiSystem sys = LtiSystem::FromTransferFunction(coeffs({2.0, 1.0}), coeffs({1.0, 3.0, 2.0}));
  const std::complex<double> s(0.5, 1.3);
  EXPECT_NEAR(std::abs(sys.transfer(s)(0, 0) - (2.0 * s + 1.0) / (s * s + 3.0 * s + 2.0)), 0.0,
              1e-13);
  EXPECT_TRUE(sys.hurwitz());
  EXPECT_THROW(LtiSystem::FromTransferFunction(coeffs({1, 1, 1}), coeffs({1, 1})),
               std::invalid_argument);
}

TEST(HinfOracle, FirstOrderLag) {
  EXPECT_NEAR(hinf_norm(LtiSystem::FromTransferFunction(coeffs({1.0}), coeffs({1.0, 1.0}))), 1.0,
              1e-8);
}

// Lightly damped resonance: compare with a dense frequency sweep.
TEST(HinfOracle, ResonanceAgainstSweep) {
  const LtiSystem sys =
      LtiSystem::FromTransferFunction(coeffs({1.0, 0.5}), coeffs({1.0, 0.1, 4.0}));
  const double h = hinf_norm(sys);
  EXPECT_NEAR(h, sweep_peak(sys), 1e-5 * h);
  EXPECT_GE(h, sweep_peak(sys) * (1.0 - 1e-9));
}

TEST(HinfOracle, RejectsUnstable) {
  EXPECT_THROW(hinf_norm(LtiSystem::FromTransferFunction(coeffs({1.0}), coeffs({1.0, -1.0}))),
               std::invalid_argument);
}

TEST(DeltaSampling, RandomDeltaHasUnitNorm) {
  std::mt19937_64 rng(3);
  for (int n = 0; n <= 4; ++n) {
    const LtiSystem d = random_unit_delta(n, rng);
    EXPECT_EQ(d.n(), n);
    EXPECT_NEAR(hinf_norm(d), 1.0, 1e-7);
  }
  EXPECT_NEAR(hinf_norm(reference_worst_delta()), 1.0, 1e-3);
}

TEST(DeltaSampling, NoSamplesGivesEmptyReport) {
  DeltaSamplingOptions o;
  o.n_samples = 0;
  const DeltaReport r = sample_delta_validate(reference_plant_system(1.0), 1.0, o);
  EXPECT_TRUE(r.samples.empty());
  EXPECT_TRUE(r.sound);
  EXPECT_EQ(r.worst_index, -1);
}

TEST(CloseLoop, ZeroDeltaGivesNominal) {
  const PartitionedLtvSystem G = reference_plant_system(1.0);
  const LtvSystem cl = close_uncertainty_loop(G, LtiSystem::Static(MatrixXd::Zero(1, 1)));
  const LtvSystem nom = G.nominal();
  for (double t : {0.0, 0.5, 1.0}) {
    EXPECT_TRUE(cl.A()(t).isApprox(nom.A()(t)));
    EXPECT_TRUE(cl.B()(t).isApprox(nom.B()(t)));
    EXPECT_TRUE(cl.C()(t).isApprox(nom.C()(t)));
  }
}

TEST(RandomSystems, StableAndReproducible) {
  std::mt19937_64 a(9), b(9);
  RandomLtvOptions o;
  o.states = 3;
  const LtvSystem s1 = random_stable_ltv(a, o), s2 = random_stable_ltv(b, o);
  EXPECT_TRUE(s1.A()(0.7).isApprox(s2.A()(0.7)));
  EXPECT_DOUBLE_EQ(s1.horizon(), 2.0);
  // A0 + A0' is negative definite by construction.
  const MatrixXd A0 = s1.A()(0.0);
  EXPECT_LT(Eigen::SelfAdjointEigenSolver<MatrixXd>(A0 + A0.transpose()).eigenvalues().maxCoeff(),
            0.0);
}

TEST(Robot, ParametersAndMassMatrix) {
  const RobotParams p;
  EXPECT_NO_THROW(p.validate());
  RobotParams bad = p;
  bad.alpha = 0.5;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  for (double th : {0.0, 1.0, 3.0}) {
    const Eigen::Matrix2d M = robot_mass_matrix(th, p);
    EXPECT_NEAR((M - M.transpose()).norm(), 0.0, 1e-15);
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(M).eigenvalues().minCoeff(), 0.0);
  }
}

TEST(Robot, InverseDynamicsConsistency) {
  const RobotParams p;
  const Eigen::Vector4d eta(0.3, -0.7, 1.1, 0.4);
  const Eigen::Vector2d acc(2.0, -1.5);
  const Eigen::Vector4d f = robot_dynamics(eta, robot_inverse_dynamics(eta, acc, p), p);
  EXPECT_NEAR(f(0), eta(1), 1e-12);
  EXPECT_NEAR(f(1), acc(0), 1e-10);
  EXPECT_NEAR(f(2), eta(3), 1e-12);
  EXPECT_NEAR(f(3), acc(1), 1e-10);
}

// The Jacobian error of f(eta + h v) - f(eta) - h A v shrinks like h^2.
TEST(Robot, LinearizationIsFirstOrderAccurate) {
  const RobotParams p;
  const Trajectory traj = quintic_trajectory(p, {}, 101);
  const LinearizedRobot lin = linearize_along_trajectory(traj, p, 101);
  const double t = 2.0;
  const Eigen::Vector4d eta = traj.eta(t);
  const Eigen::Vector2d tau = traj.tau(t);
  const Eigen::Vector4d v(0.3, -0.2, 0.5, 0.1);
  auto err = [&](double h) {
    const Eigen::Vector4d df = robot_dynamics(eta + h * v, tau, p) - robot_dynamics(eta, tau, p);
    return (df - h * lin.A(t) * v).norm();
  };
  EXPECT_NEAR(err(1e-2) / err(5e-3), 4.0, 0.2);
}

TEST(Robot, UncertainClosedLoopShape) {
  const RobotStudy s = make_robot_study({}, 101);
  EXPECT_EQ(s.closed_loop.nG(), 4);
  EXPECT_EQ(s.closed_loop.nw(), 1);
  EXPECT_EQ(s.closed_loop.nd(), 2);
  EXPECT_EQ(s.closed_loop.nv(), 1);
  EXPECT_EQ(s.closed_loop.ne(), 2);
  EXPECT_EQ(s.K(0.0).rows(), 2);
  EXPECT_EQ(s.K(0.0).cols(), 4);
  // sqrt(0.8) on both sides of the uncertainty channel
  EXPECT_NEAR(s.closed_loop.D12(1.0)(0, 1), std::sqrt(0.8), 1e-12);
  // LQR stabilizes the tracking error better than open loop
  const double cl = bisect_gain(s.closed_loop.nominal(), GainKind::L2ToEuclidean).upper;
  const double ol = bisect_gain(s.open_loop.nominal(), GainKind::L2ToEuclidean).upper;
  EXPECT_LT(cl, ol);
}
