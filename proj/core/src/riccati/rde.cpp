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

#include "ltviqc/riccati/rde.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <stdexcept>
#include <string>

#include "ltviqc/common/errors.hpp"
#include "ltviqc/common/symmetric.hpp"

namespace ltviqc {

RdeSolution::RdeSolution(RdeStatus status, double horizon, double escape_time,
                         std::vector<double> times, std::vector<Eigen::MatrixXd> Y,
                         std::vector<Eigen::MatrixXd> Ydot)
    : status_(status),
      horizon_(horizon),
      escape_time_(escape_time),
      times_(std::move(times)),
      Y_(std::move(Y)),
      Ydot_(std::move(Ydot)) {
  if (times_.empty() || times_.size() != Y_.size() || Y_.size() != Ydot_.size()) {
    throw std::invalid_argument("RdeSolution: inconsistent sample counts");
  }
}

StorageValue RdeSolution::eval(double t) const {
  const double slack = 1e-12 * std::max(1.0, horizon_);
  if (t < times_.front() - slack || t > times_.back() + slack) {
    throw std::out_of_range("RdeSolution: t = " + std::to_string(t) +
                            " outside [" + std::to_string(times_.front()) + ", " +
                            std::to_string(times_.back()) + "]");
  }
  if (times_.size() == 1) return {Y_.front(), Ydot_.front()};
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t k = it == times_.begin() ? 0 : static_cast<std::size_t>(it - times_.begin()) - 1;
  k = std::min(k, times_.size() - 2);
  const double h = times_[k + 1] - times_[k];
  const double s = std::clamp((t - times_[k]) / h, 0.0, 1.0);
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  const double d00 = (6 * s2 - 6 * s) / h, d10 = 3 * s2 - 4 * s + 1;
  const double d01 = (-6 * s2 + 6 * s) / h, d11 = 3 * s2 - 2 * s;
  StorageValue out;
  out.P = h00 * Y_[k] + h10 * h * Ydot_[k] + h01 * Y_[k + 1] + h11 * h * Ydot_[k + 1];
  out.Pdot = d00 * Y_[k] + d10 * Ydot_[k] + d01 * Y_[k + 1] + d11 * Ydot_[k + 1];
  return out;
}

TimeGrid RdeSolution::grid() const {
  if (!converged()) throw std::logic_error("RdeSolution::grid: solution escaped");
  return TimeGrid(times_);
}

void RdeSolution::write_csv(std::ostream& os) const {
  const Eigen::Index n = Y_.front().rows();
  os << "t";
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) os << ",Y" << i << "_" << j;
  os << "\n" << std::setprecision(17);
  for (std::size_t k = 0; k < times_.size(); ++k) {
    os << times_[k];
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j) os << "," << Y_[k](i, j);
    os << "\n";
  }
}

Eigen::MatrixXd riccati_residual(const StorageValue& P, const Eigen::MatrixXd& A,
                                 const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                                 const Eigen::MatrixXd& S, const Eigen::MatrixXd& R) {
  const Eigen::MatrixXd K = P.P * B + S;
  Eigen::MatrixXd out = P.Pdot + A.transpose() * P.P + P.P * A + Q;
  if (R.size() > 0) {
    Eigen::LLT<Eigen::MatrixXd> llt(-R);
    if (llt.info() != Eigen::Success) {
      throw std::invalid_argument("riccati_residual: R is not negative definite");
    }
    out += K * llt.solve(K.transpose());
  }
  return 0.5 * (out + out.transpose());
}

namespace {

struct RdeData {
  const MatrixSignal& A;
  const MatrixSignal& B;
  const QuadraticCost& cost;
};

// Ydot = -(A'Y + YA + Q) - (YB + S)(-R)^{-1}(YB + S)'.
Eigen::MatrixXd rde_rhs(const RdeData& d, double t_mid, double t, const Eigen::MatrixXd& Y) {
  const Eigen::MatrixXd A = eval_near(d.A, t_mid, t);
  const Eigen::MatrixXd B = eval_near(d.B, t_mid, t);
  const auto [Q, S, R] = d.cost.near(t_mid, t);
  Eigen::MatrixXd dY = -(A.transpose() * Y + Y * A + Q);
  if (R.size() > 0) {
    Eigen::LLT<Eigen::MatrixXd> llt(-R);
    if (llt.info() != Eigen::Success) {
      throw std::invalid_argument("integrate_rde_backward: R(" + std::to_string(t) +
                                  ") is not negative definite");
    }
    const Eigen::MatrixXd K = Y * B + S;
    dY -= K * llt.solve(K.transpose());
  }
  return 0.5 * (dY + dY.transpose());
}

}  // namespace

RdeSolution integrate_rde_backward(const MatrixSignal& A, const MatrixSignal& B,
                                   const QuadraticCost& cost, const RdeOptions& options) {
  const Eigen::Index n = cost.nx();
  if (A.rows() != n || A.cols() != n || B.rows() != n || B.cols() != cost.nd()) {
    throw std::invalid_argument("integrate_rde_backward: dimension mismatch");
  }
  const double T = cost.horizon();
  if (std::abs(A.horizon() - T) > 1e-12 * T || std::abs(B.horizon() - T) > 1e-12 * T) {
    throw std::invalid_argument("integrate_rde_backward: horizon mismatch");
  }
  if (!cost.r_negative_definite(options.r_threshold)) {
    throw std::invalid_argument("integrate_rde_backward: R(t) is not negative definite");
  }

  TimeGrid grid = TimeGrid::Merge(TimeGrid::Merge(A.grid(), B.grid()), cost.grid());
  const RdeData data{A, B, cost};
  const double bound = options.escape_factor * (1.0 + cost.F().norm());

  std::vector<double> times{T};
  std::vector<Eigen::MatrixXd> Ys{cost.F()};
  std::vector<Eigen::MatrixXd> Yds{rde_rhs(data, 0.5 * (grid[grid.size() - 2] + T), T, cost.F())};
  Eigen::VectorXd y = pack_upper(cost.F());
  double h = 0.0;
  double escape = std::numeric_limits<double>::quiet_NaN();

  for (std::size_t k = grid.size() - 1; k-- > 0;) {
    const double t_hi = grid[k + 1], t_lo = grid[k];
    const double t_mid = 0.5 * (t_lo + t_hi);
    OdeRhs rhs = [&](double t, const Eigen::VectorXd& v, Eigen::VectorXd& dv) {
      dv = pack_upper(rde_rhs(data, t_mid, t, unpack_upper(v, n)));
    };
    bool escaped = false;
    OdeObserver obs = [&](double t, const Eigen::VectorXd& v) {
      Eigen::MatrixXd Y = unpack_upper(v, n);
      if (Y.norm() > bound) {
        escaped = true;
        escape = t;
        return false;
      }
      times.push_back(t);
      Yds.push_back(rde_rhs(data, t_mid, t, Y));
      Ys.push_back(std::move(Y));
      return true;
    };
    OdeSegmentResult r = integrate_segment(rhs, y, t_hi, t_lo, options.ode, T, h, obs);
    if (escaped || r.status != OdeStatus::Completed) {
      if (!escaped) escape = r.t;
      std::reverse(times.begin(), times.end());
      std::reverse(Ys.begin(), Ys.end());
      std::reverse(Yds.begin(), Yds.end());
      return RdeSolution(RdeStatus::Escaped, T, escape, std::move(times), std::move(Ys),
                         std::move(Yds));
    }
    y = r.y;
    h = r.next_step;
  }
  times.back() = 0.0;
  std::reverse(times.begin(), times.end());
  std::reverse(Ys.begin(), Ys.end());
  std::reverse(Yds.begin(), Yds.end());
  return RdeSolution(RdeStatus::ConvergedOnFullHorizon, T, escape, std::move(times),
                     std::move(Ys), std::move(Yds));
}

double rdi_residual(const StorageFn& P, const QuadraticCost& cost, const MatrixSignal& A,
                    const MatrixSignal& B, std::span<const double> check_times) {
  double worst = -std::numeric_limits<double>::infinity();
  for (double t : check_times) {
    const CostBlocks c = cost.at(t);
    const Eigen::MatrixXd res = riccati_residual(P(t), A(t), B(t), c.Q, c.S, c.R);
    worst = std::max(worst, max_eigenvalue(res));
  }
  return worst;
}

double rdi_residual(const StorageFn& P, const QuadraticCost& cost, const MatrixSignal& A,
                    const MatrixSignal& B, const TimeGrid& check_grid) {
  return rdi_residual(P, cost, A, B, check_grid.points());
}

StorageFn as_storage(const RdeSolution& sol) {
  return [sol](double t) { return sol.eval(t); };
}

}  // namespace ltviqc
