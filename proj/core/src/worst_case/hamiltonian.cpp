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

#include "ltviqc/worst_case/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ltviqc/common/errors.hpp"
#include "ltviqc/common/symmetric.hpp"

namespace ltviqc {
namespace {

Eigen::MatrixXd assemble(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                         const Eigen::MatrixXd& Q, const Eigen::MatrixXd& S,
                         const Eigen::MatrixXd& R) {
  const auto n = A.rows(), m = B.cols();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  H.topLeftCorner(n, n) = A;
  H.bottomLeftCorner(n, n) = -Q;
  H.bottomRightCorner(n, n) = -A.transpose();
  if (m > 0) {
    Eigen::LLT<Eigen::MatrixXd> llt(-R);
    if (llt.info() != Eigen::Success) {
      throw std::invalid_argument("build_hamiltonian: R is not negative definite");
    }
    Eigen::MatrixXd U(2 * n, m), W(m, 2 * n);
    U << -B, S;
    W << S.transpose(), B.transpose();
    H -= U * llt.solve(W);  // U R^{-1} W = -U (-R)^{-1} W
  }
  return H;
}

}  // namespace

HamiltonianSystem::HamiltonianSystem(MatrixSignal A, MatrixSignal B, QuadraticCost cost)
    : A_(std::move(A)),
      B_(std::move(B)),
      cost_(std::move(cost)),
      grid_(TimeGrid::Merge(TimeGrid::Merge(A_.grid(), B_.grid()), cost_.grid())) {
  if (A_.rows() != cost_.nx() || B_.cols() != cost_.nd()) {
    throw std::invalid_argument("build_hamiltonian: dimension mismatch");
  }
  if (!cost_.r_negative_definite()) {
    throw std::invalid_argument("build_hamiltonian: R(t) is not negative definite");
  }
}

Eigen::MatrixXd HamiltonianSystem::operator()(double t) const {
  const CostBlocks c = cost_.at(t);
  return assemble(A_(t), B_(t), c.Q, c.S, c.R);
}

Eigen::MatrixXd HamiltonianSystem::eval_near(double t_mid, double t) const {
  const CostBlocks c = cost_.near(t_mid, t);
  return assemble(ltviqc::eval_near(A_, t_mid, t), ltviqc::eval_near(B_, t_mid, t), c.Q, c.S,
                  c.R);
}

MatrixSignal HamiltonianSystem::signal() const {
  return sample_signal(grid_, [&](double t) { return (*this)(t); });
}

HamiltonianSystem build_hamiltonian(const MatrixSignal& A, const MatrixSignal& B,
                                    const QuadraticCost& cost) {
  return HamiltonianSystem(A, B, cost);
}

TransitionBlocks::TransitionBlocks(std::vector<double> times, std::vector<Eigen::MatrixXd> X,
                                   std::vector<Eigen::MatrixXd> Xdot, Eigen::MatrixXd F)
    : times_(std::move(times)), X_(std::move(X)), Xdot_(std::move(Xdot)), F_(std::move(F)) {
  if (times_.empty() || times_.size() != X_.size() || X_.size() != Xdot_.size()) {
    throw std::invalid_argument("TransitionBlocks: inconsistent sample counts");
  }
}

Eigen::MatrixXd TransitionBlocks::eval(double t) const {
  const double slack = 1e-12 * std::max(1.0, times_.back());
  if (t < times_.front() - slack || t > times_.back() + slack) {
    throw std::out_of_range("TransitionBlocks: t = " + std::to_string(t) + " outside range");
  }
  if (times_.size() == 1) return X_.front();
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t k = it == times_.begin() ? 0 : static_cast<std::size_t>(it - times_.begin()) - 1;
  k = std::min(k, times_.size() - 2);
  const double h = times_[k + 1] - times_[k];
  const double s = std::clamp((t - times_[k]) / h, 0.0, 1.0);
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * X_[k] + (s3 - 2 * s2 + s) * h * Xdot_[k] +
         (-2 * s3 + 3 * s2) * X_[k + 1] + (s3 - s2) * h * Xdot_[k + 1];
}

TransitionBlocks transition_blocks(const HamiltonianSystem& H, const Eigen::MatrixXd& F,
                                   const OdeOptions& options) {
  const int n = H.n();
  if (F.rows() != n || F.cols() != n) throw std::invalid_argument("transition_blocks: F size");
  const TimeGrid& grid = H.grid();
  const double T = H.horizon();
  Eigen::MatrixXd X0(2 * n, n);
  X0 << Eigen::MatrixXd::Identity(n, n), F;

  std::vector<double> times{T};
  std::vector<Eigen::MatrixXd> Xs{X0};
  std::vector<Eigen::MatrixXd> Xds{H.eval_near(0.5 * (grid[grid.size() - 2] + T), T) * X0};
  Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(X0.data(), X0.size());
  double h = 0.0;
  for (std::size_t k = grid.size() - 1; k-- > 0;) {
    const double t_mid = 0.5 * (grid[k] + grid[k + 1]);
    OdeRhs rhs = [&](double t, const Eigen::VectorXd& v, Eigen::VectorXd& dv) {
      const Eigen::Map<const Eigen::MatrixXd> X(v.data(), 2 * n, n);
      const Eigen::MatrixXd dX = H.eval_near(t_mid, t) * X;
      dv = Eigen::Map<const Eigen::VectorXd>(dX.data(), dX.size());
    };
    OdeObserver obs = [&](double t, const Eigen::VectorXd& v) {
      const Eigen::Map<const Eigen::MatrixXd> X(v.data(), 2 * n, n);
      times.push_back(t);
      Xs.emplace_back(X);
      Xds.push_back(H.eval_near(t_mid, t) * X);
      return true;
    };
    auto r = integrate_segment(rhs, y, grid[k + 1], grid[k], options, T, h, obs);
    if (r.status != OdeStatus::Completed) {
      throw NumericalError("transition_blocks: integration failed at t = " + std::to_string(r.t));
    }
    y = r.y;
    h = r.next_step;
  }
  times.back() = 0.0;
  std::reverse(times.begin(), times.end());
  std::reverse(Xs.begin(), Xs.end());
  std::reverse(Xds.begin(), Xds.end());
  return TransitionBlocks(std::move(times), std::move(Xs), std::move(Xds), F);
}

std::optional<ConjugatePoint> conjugate_point_scan(const TransitionBlocks& blocks,
                                                   double rel_threshold) {
  const int n = blocks.n();
  const auto& ts = blocks.times();
  auto X1_at = [&](std::size_t k) { return Eigen::MatrixXd(blocks.samples()[k].topRows(n)); };
  auto singular_ratio = [](const Eigen::MatrixXd& X1) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X1);
    const auto& s = svd.singularValues();
    return s(0) > 0.0 ? s(s.size() - 1) / s(0) : 0.0;
  };
  auto null_vector = [](const Eigen::MatrixXd& X1) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X1, Eigen::ComputeFullV);
    return Eigen::VectorXd(svd.matrixV().col(X1.cols() - 1));
  };
  if (n == 0 || ts.size() < 2) return std::nullopt;

  double det_prev = X1_at(ts.size() - 1).determinant();
  for (std::size_t k = ts.size() - 1; k-- > 0;) {
    const Eigen::MatrixXd X1 = X1_at(k);
    const double det = X1.determinant();
    if (singular_ratio(X1) < rel_threshold) return ConjugatePoint{ts[k], null_vector(X1)};
    if ((det > 0.0) != (det_prev > 0.0)) {
      // Refine the sign change inside [t_k, t_{k+1}] by bisection.
      double lo = ts[k], hi = ts[k + 1];
      const bool sign_lo = det > 0.0;
      for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, ts.back()); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double dm = blocks.X1(mid).determinant();
        if ((dm > 0.0) == sign_lo) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      // The crossing lies in [lo, hi]; take the endpoint with the smaller ratio.
      const Eigen::MatrixXd Xlo = blocks.X1(lo), Xhi = blocks.X1(hi);
      const bool use_lo = singular_ratio(Xlo) <= singular_ratio(Xhi);
      return ConjugatePoint{use_lo ? lo : hi, null_vector(use_lo ? Xlo : Xhi)};
    }
    det_prev = det;
  }
  return std::nullopt;
}

}  // namespace ltviqc
