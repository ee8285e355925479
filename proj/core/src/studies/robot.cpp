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

#include "ltviqc/studies/robot.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ltviqc/common/errors.hpp"
#include "ltviqc/ltv/quadratic_cost.hpp"

namespace ltviqc {

void RobotParams::validate(double rel_tol) const {
  auto check = [&](double stored, double computed, const char* name) {
    if (std::abs(stored - computed) > rel_tol * std::max(1.0, std::abs(computed))) {
      throw std::invalid_argument(std::string("RobotParams: stored ") + name +
                                  " = " + std::to_string(stored) + " but parameters give " +
                                  std::to_string(computed));
    }
  };
  check(alpha, computed_alpha(), "alpha");
  check(beta, computed_beta(), "beta");
  check(delta, computed_delta(), "delta");
}

Eigen::Matrix2d robot_mass_matrix(double theta2, const RobotParams& p) {
  const double c = std::cos(theta2);
  Eigen::Matrix2d M;
  M << p.alpha + 2 * p.beta * c, p.delta + p.beta * c,
       p.delta + p.beta * c, p.delta;
  return M;
}

Eigen::Matrix2d robot_coriolis_matrix(const Eigen::Vector4d& eta, const RobotParams& p) {
  const double s = std::sin(eta(2));
  Eigen::Matrix2d C;
  C << -p.beta * s * eta(3), -p.beta * s * (eta(1) + eta(3)),
       p.beta * s * eta(1), 0.0;
  return C;
}

Eigen::Vector4d robot_dynamics(const Eigen::Vector4d& eta, const Eigen::Vector2d& tau,
                               const RobotParams& p) {
  const Eigen::Matrix2d M = robot_mass_matrix(eta(2), p);
  if (std::abs(M.determinant()) < 1e-12 * M.squaredNorm()) {
    throw NumericalError("robot_dynamics: singular mass matrix");
  }
  const Eigen::Vector2d qd(eta(1), eta(3));
  const Eigen::Vector2d qdd = M.partialPivLu().solve(tau - robot_coriolis_matrix(eta, p) * qd);
  return {eta(1), qdd(0), eta(3), qdd(1)};
}

Eigen::Vector2d robot_inverse_dynamics(const Eigen::Vector4d& eta, const Eigen::Vector2d& thetaddot,
                                       const RobotParams& p) {
  const Eigen::Vector2d qd(eta(1), eta(3));
  return robot_mass_matrix(eta(2), p) * thetaddot + robot_coriolis_matrix(eta, p) * qd;
}

Trajectory quintic_trajectory(const RobotParams& p, const QuinticSpec& spec, std::size_t n_pts) {
  if (!(spec.horizon > 0.0)) throw std::invalid_argument("quintic_trajectory: horizon <= 0");
  if (n_pts < 2) throw std::invalid_argument("quintic_trajectory: need at least 2 points");
  const double T = spec.horizon;
  const TimeGrid grid = TimeGrid::Uniform(T, n_pts);
  // theta = a + (b - a) q(s), s = t / T, q = 10s^3 - 15s^4 + 6s^5.
  auto joint = [T](double a, double b, double t) {
    const double s = t / T, d = b - a;
    return Eigen::Vector3d(a + d * (10 * std::pow(s, 3) - 15 * std::pow(s, 4) + 6 * std::pow(s, 5)),
                           d / T * (30 * s * s - 60 * std::pow(s, 3) + 30 * std::pow(s, 4)),
                           d / (T * T) * (60 * s - 180 * s * s + 120 * std::pow(s, 3)));
  };
  std::vector<Eigen::VectorXd> eta, eta_dot, tau;
  for (double t : grid.points()) {
    const Eigen::Vector3d j1 = joint(spec.theta1_start, spec.theta1_end, t);
    const Eigen::Vector3d j2 = joint(spec.theta2_start, spec.theta2_end, t);
    const Eigen::Vector4d e(j1(0), j1(1), j2(0), j2(1));
    eta.emplace_back(e);
    eta_dot.emplace_back(Eigen::Vector4d(j1(1), j1(2), j2(1), j2(2)));
    tau.emplace_back(robot_inverse_dynamics(e, Eigen::Vector2d(j1(2), j2(2)), p));
  }
  return {grid, VectorSignal(grid, eta), VectorSignal(grid, eta_dot), VectorSignal(grid, tau)};
}

LinearizedRobot linearize_along_trajectory(const Trajectory& traj, const RobotParams& p,
                                           std::size_t n_pts) {
  if (n_pts < 2) throw std::invalid_argument("linearize_along_trajectory: need at least 2 points");
  if (traj.eta.rows() != 4 || traj.tau.rows() != 2) {
    throw std::invalid_argument("linearize_along_trajectory: trajectory must be 4 states, 2 inputs");
  }
  const TimeGrid grid = TimeGrid::Uniform(traj.grid.horizon(), n_pts);
  std::vector<Eigen::MatrixXd> As, Bs;
  for (double t : grid.points()) {
    const Eigen::Vector4d eta = traj.eta(t);
    const Eigen::Vector2d tau = traj.tau(t);
    const double residual = (robot_dynamics(eta, tau, p) - traj.eta_dot(t)).norm();
    if (residual > 1e-4) {
      throw std::invalid_argument("linearize_along_trajectory: torque does not reproduce the "
                                  "trajectory at t = " + std::to_string(t) +
                                  " (residual " + std::to_string(residual) + ")");
    }
    Eigen::Matrix4d A;
    Eigen::Matrix<double, 4, 2> B;
    for (int j = 0; j < 4; ++j) {
      const double h = 1e-6 * (1.0 + std::abs(eta(j)));
      Eigen::Vector4d ep = eta, em = eta;
      ep(j) += h;
      em(j) -= h;
      A.col(j) = (robot_dynamics(ep, tau, p) - robot_dynamics(em, tau, p)) / (2 * h);
    }
    for (int j = 0; j < 2; ++j) {
      const double h = 1e-6 * (1.0 + std::abs(tau(j)));
      Eigen::Vector2d tp = tau, tm = tau;
      tp(j) += h;
      tm(j) -= h;
      B.col(j) = (robot_dynamics(eta, tp, p) - robot_dynamics(eta, tm, p)) / (2 * h);
    }
    As.emplace_back(A);
    Bs.emplace_back(B);
  }
  return {MatrixSignal(grid, As), MatrixSignal(grid, Bs)};
}

MatrixSignal finite_horizon_lqr(const MatrixSignal& A, const MatrixSignal& B,
                                const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                                const Eigen::MatrixXd& S, const Eigen::MatrixXd& F,
                                const RdeOptions& options) {
  const auto n = A.rows(), m = B.cols();
  if (Q.rows() != n || Q.cols() != n || F.rows() != n || F.cols() != n || R.rows() != m ||
      R.cols() != m || S.rows() != n || S.cols() != m) {
    throw std::invalid_argument("finite_horizon_lqr: weight dimensions do not match (A, B)");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(symmetrize(R));
  if (llt.info() != Eigen::Success) throw std::invalid_argument("finite_horizon_lqr: R is not PD");
  if (Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(symmetrize(F)).eigenvalues().minCoeff() <
      -1e-12) {
    throw std::invalid_argument("finite_horizon_lqr: F is not PSD");
  }
  const double T = A.horizon();
  const QuadraticCost flipped(MatrixSignal::Constant(-Q, T), MatrixSignal::Constant(-S, T),
                              MatrixSignal::Constant(-R, T), -F);
  const RdeSolution sol = integrate_rde_backward(A, B, flipped, options);
  if (!sol.converged()) {
    throw NumericalError("finite_horizon_lqr: Riccati solution escaped at t = " +
                         std::to_string(sol.escape_time()));
  }
  const TimeGrid grid = TimeGrid::Merge(A.grid(), B.grid());
  return sample_signal(grid, [&](double t) {
    const Eigen::MatrixXd P = -sol.eval(t).P;
    return Eigen::MatrixXd(llt.solve(B(t).transpose() * P + S.transpose()));
  });
}

PartitionedLtvSystem build_uncertain_robot(const MatrixSignal& A, const MatrixSignal& B,
                                           const MatrixSignal& K) {
  if (A.rows() != 4 || A.cols() != 4 || B.rows() != 4 || B.cols() != 2 || K.rows() != 2 ||
      K.cols() != 4) {
    throw std::invalid_argument("build_uncertain_robot: expected 4 states and 2 inputs");
  }
  const double g = std::sqrt(0.8);
  const TimeGrid grid = TimeGrid::Merge(TimeGrid::Merge(A.grid(), B.grid()), K.grid());
  Eigen::MatrixXd C2 = Eigen::MatrixXd::Zero(2, 4);
  C2(0, 0) = 1.0;
  C2(1, 2) = 1.0;
  Eigen::MatrixXd D12(1, 2);
  D12 << 0.0, g;
  const double T = grid.horizon();
  return PartitionedLtvSystem(
      sample_signal(grid, [&](double t) { return Eigen::MatrixXd(A(t) - B(t) * K(t)); }),
      sample_signal(grid, [&](double t) { return Eigen::MatrixXd(g * B(t).col(1)); }),
      sample_signal(grid, [&](double t) { return B(t); }),
      sample_signal(grid, [&](double t) { return Eigen::MatrixXd(-g * K(t).row(1)); }),
      MatrixSignal::Constant(Eigen::MatrixXd::Zero(1, 1), T), MatrixSignal::Constant(D12, T),
      MatrixSignal::Constant(C2, T), MatrixSignal::Constant(Eigen::MatrixXd::Zero(2, 1), T),
      MatrixSignal::Constant(Eigen::MatrixXd::Zero(2, 2), T));
}

RobotStudy make_robot_study(const QuinticSpec& spec, std::size_t n_pts) {
  RobotParams params;
  params.validate();
  Trajectory traj = quintic_trajectory(params, spec, n_pts);
  LinearizedRobot lin = linearize_along_trajectory(traj, params, n_pts);
  const Eigen::Vector4d q(100, 10, 100, 10), f(1, 0.1, 1, 0.1);
  MatrixSignal K = finite_horizon_lqr(lin.A, lin.B, q.asDiagonal().toDenseMatrix(),
                                      0.1 * Eigen::MatrixXd::Identity(2, 2),
                                      Eigen::MatrixXd::Zero(4, 2), f.asDiagonal().toDenseMatrix());
  PartitionedLtvSystem closed = build_uncertain_robot(lin.A, lin.B, K);
  PartitionedLtvSystem open = build_uncertain_robot(
      lin.A, lin.B, MatrixSignal::Constant(Eigen::MatrixXd::Zero(2, 4), spec.horizon));
  return {params, std::move(traj), std::move(lin), std::move(K), std::move(closed),
          std::move(open)};
}

}  // namespace ltviqc
