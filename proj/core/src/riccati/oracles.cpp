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

#include "ltviqc/riccati/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "ltviqc/common/errors.hpp"
#include "ltviqc/common/symmetric.hpp"

namespace ltviqc {

Eigen::MatrixXd reachability_gramian(const LtvSystem& sys, const OdeOptions& options) {
  const Eigen::Index n = sys.nx();
  const TimeGrid grid = sys.grid();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(packed_size(n));
  double h = 0.0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double t_mid = 0.5 * (grid[k] + grid[k + 1]);
    OdeRhs rhs = [&](double t, const Eigen::VectorXd& v, Eigen::VectorXd& dv) {
      const Eigen::MatrixXd A = eval_near(sys.A(), t_mid, t);
      const Eigen::MatrixXd B = eval_near(sys.B(), t_mid, t);
      const Eigen::MatrixXd W = unpack_upper(v, n);
      dv = pack_upper(A * W + W * A.transpose() + B * B.transpose());
    };
    auto r = integrate_segment(rhs, w, grid[k], grid[k + 1], options, sys.horizon(), h);
    if (r.status != OdeStatus::Completed) {
      throw NumericalError("reachability_gramian: integration failed at t = " +
                           std::to_string(r.t));
    }
    w = r.y;
    h = r.next_step;
  }
  return unpack_upper(w, n);
}

double gramian_l2e_oracle(const LtvSystem& sys, const OdeOptions& options) {
  const double T = sys.horizon();
  if (sys.D()(T).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("gramian_l2e_oracle: requires D(T) = 0");
  }
  const Eigen::MatrixXd W = reachability_gramian(sys, options);
  const Eigen::MatrixXd C = sys.C()(T);
  return std::sqrt(std::max(0.0, max_eigenvalue(C * W * C.transpose())));
}

namespace {

// One zero-order-hold step of length h, with the state also reported at the
// step midpoint. A and B are frozen at the midpoint.
struct LiftedStep {
  Eigen::MatrixXd Phi, Gam;      // full step
  Eigen::MatrixXd PhiH, GamH;    // half step
  Eigen::MatrixXd C, D;          // output at the midpoint
};

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> zoh(const Eigen::MatrixXd& A,
                                                const Eigen::MatrixXd& B, double h) {
  const Eigen::Index n = A.rows(), m = B.cols();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + m, n + m);
  M.topLeftCorner(n, n) = A * h;
  M.topRightCorner(n, m) = B * h;
  const Eigen::MatrixXd E = M.exp();
  return {E.topLeftCorner(n, n), E.topRightCorner(n, m)};
}

class LiftedOperator {
 public:
  LiftedOperator(const LtvSystem& sys, int N) : nx_(sys.nx()), nd_(sys.nd()), ne_(sys.ne()) {
    if (N < 1) throw std::invalid_argument("lifted operator: N must be >= 1");
    const double h = sys.horizon() / N;
    steps_.reserve(N);
    for (int k = 0; k < N; ++k) {
      const double tm = (k + 0.5) * h;
      const Eigen::MatrixXd A = sys.A()(tm), B = sys.B()(tm);
      LiftedStep s;
      std::tie(s.Phi, s.Gam) = zoh(A, B, h);
      std::tie(s.PhiH, s.GamH) = zoh(A, B, 0.5 * h);
      s.C = sys.C()(tm);
      s.D = sys.D()(tm);
      steps_.push_back(std::move(s));
    }
  }

  Eigen::Index rows() const { return static_cast<Eigen::Index>(steps_.size()) * ne_; }
  Eigen::Index cols() const { return static_cast<Eigen::Index>(steps_.size()) * nd_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& d) const {
    Eigen::VectorXd e(rows()), x = Eigen::VectorXd::Zero(nx_);
    for (std::size_t k = 0; k < steps_.size(); ++k) {
      const auto& s = steps_[k];
      const auto dk = d.segment(k * nd_, nd_);
      e.segment(k * ne_, ne_) = s.C * (s.PhiH * x + s.GamH * dk) + s.D * dk;
      x = s.Phi * x + s.Gam * dk;
    }
    return e;
  }

  Eigen::VectorXd apply_adjoint(const Eigen::VectorXd& u) const {
    Eigen::VectorXd d(cols()), lam = Eigen::VectorXd::Zero(nx_);
    for (std::size_t k = steps_.size(); k-- > 0;) {
      const auto& s = steps_[k];
      const Eigen::VectorXd cu = s.C.transpose() * u.segment(k * ne_, ne_);
      d.segment(k * nd_, nd_) = s.GamH.transpose() * cu +
                                s.D.transpose() * u.segment(k * ne_, ne_) +
                                s.Gam.transpose() * lam;
      lam = s.Phi.transpose() * lam + s.PhiH.transpose() * cu;
    }
    return d;
  }

 private:
  Eigen::Index nx_, nd_, ne_;
  std::vector<LiftedStep> steps_;
};

// Largest eigenvalue of G'G by Lanczos with full reorthogonalization.
double lanczos_sigma_max(const LiftedOperator& G) {
  const Eigen::Index n = G.cols();
  if (n == 0 || G.rows() == 0) return 0.0;
  const int max_iter = static_cast<int>(std::min<Eigen::Index>(n, 150));
  std::mt19937 rng(12345);
  std::normal_distribution<double> nd;
  Eigen::VectorXd q(n);
  for (Eigen::Index i = 0; i < n; ++i) q(i) = nd(rng);
  q.normalize();
  Eigen::MatrixXd Q(n, max_iter);
  std::vector<double> alpha, beta;
  double prev = -1.0;
  for (int j = 0; j < max_iter; ++j) {
    Q.col(j) = q;
    Eigen::VectorXd w = G.apply_adjoint(G.apply(q));
    alpha.push_back(q.dot(w));
    // Two passes of Gram-Schmidt against all previous vectors.
    for (int pass = 0; pass < 2; ++pass) {
      w -= Q.leftCols(j + 1) * (Q.leftCols(j + 1).transpose() * w);
    }
    const double b = w.norm();
    Eigen::MatrixXd Tm = Eigen::MatrixXd::Zero(j + 1, j + 1);
    for (int i = 0; i <= j; ++i) {
      Tm(i, i) = alpha[i];
      if (i < j) Tm(i, i + 1) = Tm(i + 1, i) = beta[i];
    }
    const double lam = max_eigenvalue(Tm);
    if (b <= 1e-14 * std::max(1.0, std::abs(lam)) ||
        (j >= 5 && std::abs(lam - prev) <= 1e-13 * std::abs(lam))) {
      return std::sqrt(std::max(0.0, lam));
    }
    prev = lam;
    beta.push_back(b);
    q = w / b;
  }
  return std::sqrt(std::max(0.0, prev));
}

}  // namespace

double lifted_l2_gain_oracle(const LtvSystem& sys, int N) {
  return lanczos_sigma_max(LiftedOperator(sys, N));
}

Eigen::MatrixXd lifted_operator_matrix(const LtvSystem& sys, int N) {
  const LiftedOperator G(sys, N);
  Eigen::MatrixXd M(G.rows(), G.cols());
  Eigen::VectorXd e = Eigen::VectorXd::Zero(G.cols());
  for (Eigen::Index j = 0; j < G.cols(); ++j) {
    e(j) = 1.0;
    M.col(j) = G.apply(e);
    e(j) = 0.0;
  }
  return M;
}

double lifted_l2e_estimate(const LtvSystem& sys, int N) {
  // Terminal map d -> x(T) under zero-order hold; the gain is
  // sigma_max(C(T) [Phi_{N-1} ... Gam_k]) / sqrt(h).
  if (N < 1) throw std::invalid_argument("lifted_l2e_estimate: N must be >= 1");
  const double T = sys.horizon(), h = T / N;
  const Eigen::Index n = sys.nx();
  Eigen::MatrixXd Wd = Eigen::MatrixXd::Zero(n, n);  // discrete Gramian
  for (int k = 0; k < N; ++k) {
    const double tm = (k + 0.5) * h;
    auto [Phi, Gam] = zoh(sys.A()(tm), sys.B()(tm), h);
    Wd = Phi * Wd * Phi.transpose() + Gam * Gam.transpose() / h;
  }
  const Eigen::MatrixXd C = sys.C()(T);
  return std::sqrt(std::max(0.0, max_eigenvalue(C * Wd * C.transpose())));
}

}  // namespace ltviqc
