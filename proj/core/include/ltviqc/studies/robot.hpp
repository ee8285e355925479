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

#include <numbers>

#include <Eigen/Dense>

#include "ltviqc/ltv/ltv_system.hpp"
#include "ltviqc/ltv/signal.hpp"
#include "ltviqc/riccati/rde.hpp"

namespace ltviqc {

/// Two-link arm. alpha, beta and delta are stored and must match the values
/// recomputed from the physical parameters.
struct RobotParams {
  double m1 = 3.0, m2 = 2.0;
  double l1 = 0.3, l2 = 0.3;
  double r1 = 0.15, r2 = 0.15;
  double I1 = 0.09, I2 = 0.06;
  double alpha = 0.4425, beta = 0.09, delta = 0.105;

  double computed_alpha() const { return I1 + I2 + m1 * r1 * r1 + m2 * (l1 * l1 + r2 * r2); }
  double computed_beta() const { return m2 * l1 * r2; }
  double computed_delta() const { return I2 + m2 * r2 * r2; }
  /// Throws std::invalid_argument when the stored constants disagree.
  void validate(double rel_tol = 1e-9) const;
};

Eigen::Matrix2d robot_mass_matrix(double theta2, const RobotParams& p);
/// Coriolis matrix C(theta, thetadot) with M thetaddot + C thetadot = tau.
Eigen::Matrix2d robot_coriolis_matrix(const Eigen::Vector4d& eta, const RobotParams& p);

/// eta = (theta1, theta1dot, theta2, theta2dot); returns etadot.
/// Throws NumericalError when the mass matrix is singular.
Eigen::Vector4d robot_dynamics(const Eigen::Vector4d& eta, const Eigen::Vector2d& tau,
                               const RobotParams& p);

Eigen::Vector2d robot_inverse_dynamics(const Eigen::Vector4d& eta, const Eigen::Vector2d& thetaddot,
                                       const RobotParams& p);

struct Trajectory {
  TimeGrid grid;
  VectorSignal eta;      // (theta1, theta1dot, theta2, theta2dot)
  VectorSignal eta_dot;  // analytic derivative of eta
  VectorSignal tau;      // feedforward torque
};

struct QuinticSpec {
  double horizon = 5.0;
  double theta1_start = 0.0, theta1_end = std::numbers::pi / 2;
  double theta2_start = std::numbers::pi / 4, theta2_end = -std::numbers::pi / 4;
};

/// Quintic rest-to-rest joint motion sampled at n_pts uniform times, with
/// torques from inverse dynamics.
Trajectory quintic_trajectory(const RobotParams& p, const QuinticSpec& spec = {},
                              std::size_t n_pts = 200);

struct LinearizedRobot {
  MatrixSignal A;  // 4 x 4
  MatrixSignal B;  // 4 x 2
};

/// Central-difference Jacobians of robot_dynamics at n_pts uniform times.
/// Throws std::invalid_argument if the torque does not reproduce eta
/// (residual > 1e-4).
LinearizedRobot linearize_along_trajectory(const Trajectory& traj, const RobotParams& p,
                                           std::size_t n_pts = 200);

/// Finite-horizon LQR for J = x(T)'Fx(T) + int [x;u]'[Q S;S' R][x;u].
/// The LQR Riccati equation is solved as the sign-flipped problem
/// (Q, S, R, F) -> (-Q, -S, -R, -F), whose solution is Y = -P.
/// Returns K = R^{-1}(B'P + S') on the grid of (A, B).
MatrixSignal finite_horizon_lqr(const MatrixSignal& A, const MatrixSignal& B,
                                const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                                const Eigen::MatrixXd& S, const Eigen::MatrixXd& F,
                                const RdeOptions& options = {});

/// Uncertain closed loop with u = -K x, tau = taubar + u + d and the
/// uncertainty on the second joint torque:
///   v = sqrt(0.8) (d2 - K_2 x),  second torque += sqrt(0.8) w,  e = (theta1, theta2).
PartitionedLtvSystem build_uncertain_robot(const MatrixSignal& A, const MatrixSignal& B,
                                           const MatrixSignal& K);

struct RobotStudy {
  RobotParams params;
  Trajectory trajectory;
  LinearizedRobot linearized;
  MatrixSignal K;
  PartitionedLtvSystem closed_loop;
  PartitionedLtvSystem open_loop;
};

/// The whole robot setup with the standard weights
/// Q = diag(100,10,100,10), R = diag(0.1,0.1), S = 0, F = diag(1,0.1,1,0.1).
RobotStudy make_robot_study(const QuinticSpec& spec = {}, std::size_t n_pts = 200);

}  // namespace ltviqc
