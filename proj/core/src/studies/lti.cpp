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

#include "ltviqc/studies/lti.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ltviqc/common/errors.hpp"

namespace ltviqc {

LtiSystem LtiSystem::Static(const Eigen::MatrixXd& D) {
  return {Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, D.cols()), Eigen::MatrixXd(D.rows(), 0), D};
}

LtiSystem LtiSystem::FromTransferFunction(const Eigen::VectorXd& num, const Eigen::VectorXd& den) {
  if (den.size() == 0 || den(0) == 0.0) {
    throw std::invalid_argument("FromTransferFunction: leading denominator coefficient is zero");
  }
  if (num.size() > den.size()) throw std::invalid_argument("FromTransferFunction: improper");
  const int n = static_cast<int>(den.size()) - 1;
  const Eigen::VectorXd a = den / den(0);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
  b.tail(num.size()) = num / den(0);
  LtiSystem sys{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, 1),
                Eigen::MatrixXd::Zero(1, n), Eigen::MatrixXd::Constant(1, 1, b(0))};
  for (int i = 0; i + 1 < n; ++i) sys.A(i, i + 1) = 1.0;
  for (int j = 0; j < n; ++j) {
    sys.A(n - 1, j) = -a(n - j);
    sys.C(0, j) = b(n - j) - a(n - j) * b(0);
  }
  if (n > 0) sys.B(n - 1, 0) = 1.0;
  return sys;
}

Eigen::MatrixXcd LtiSystem::transfer(std::complex<double> s) const {
  Eigen::MatrixXcd G = D.cast<std::complex<double>>();
  if (n() > 0) {
    const Eigen::MatrixXcd M = s * Eigen::MatrixXcd::Identity(n(), n()) - A.cast<std::complex<double>>();
    G += C.cast<std::complex<double>>() * M.partialPivLu().solve(B.cast<std::complex<double>>());
  }
  return G;
}

bool LtiSystem::hurwitz(double margin) const {
  if (n() == 0) return true;
  return Eigen::EigenSolver<Eigen::MatrixXd>(A, false).eigenvalues().real().maxCoeff() < -margin;
}

LtiSystem LtiSystem::scaled(double k) const { return {A, B, k * C, k * D}; }

LtvSystem LtiSystem::as_ltv(double horizon) const {
  return LtvSystem::Constant(A, B, C, D, horizon);
}

namespace {

double max_singular_value(const Eigen::MatrixXcd& G) {
  if (G.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(G).singularValues()(0);
}

// True when the Hamiltonian at gamma has an eigenvalue on the imaginary axis,
// i.e. gamma lies below the H-infinity norm.
bool imaginary_eigenvalue(const LtiSystem& sys, double gamma, double* omega) {
  const int n = sys.n();
  const Eigen::MatrixXd R =
      gamma * gamma * Eigen::MatrixXd::Identity(sys.nu(), sys.nu()) - sys.D.transpose() * sys.D;
  const Eigen::MatrixXd Ri = R.inverse();
  const Eigen::MatrixXd Ae = sys.A + sys.B * Ri * sys.D.transpose() * sys.C;
  Eigen::MatrixXd H(2 * n, 2 * n);
  H << Ae, sys.B * Ri * sys.B.transpose(),
      -sys.C.transpose() *
          (Eigen::MatrixXd::Identity(sys.ny(), sys.ny()) + sys.D * Ri * sys.D.transpose()) * sys.C,
      -Ae.transpose();
  const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(H, false).eigenvalues();
  const double scale = 1.0 + H.norm();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i).real()) < 1e-8 * scale) {
      if (omega) *omega = std::abs(ev(i).imag());
      return true;
    }
  }
  return false;
}

}  // namespace

double hinf_norm(const LtiSystem& sys, double rel_tol) {
  if (!sys.hurwitz()) throw std::invalid_argument("hinf_norm: system is not stable");
  double lo = std::max(max_singular_value(sys.D), max_singular_value(sys.transfer(0.0)));
  if (sys.n() == 0) return lo;
  // A few frequencies near the pole magnitudes tighten the lower bound.
  const Eigen::VectorXcd poles = Eigen::EigenSolver<Eigen::MatrixXd>(sys.A, false).eigenvalues();
  for (Eigen::Index i = 0; i < poles.size(); ++i) {
    lo = std::max(lo, max_singular_value(sys.transfer({0.0, std::abs(poles(i))})));
    lo = std::max(lo, max_singular_value(sys.transfer({0.0, std::abs(poles(i).imag())})));
  }
  double hi = lo > 0.0 ? 2.0 * lo : 1e-12;
  double omega = 0.0;
  for (int k = 0; imaginary_eigenvalue(sys, hi, &omega); ++k) {
    lo = std::max(lo, max_singular_value(sys.transfer({0.0, omega})));
    hi *= 2.0;
    if (k > 2000) throw NumericalError("hinf_norm: no upper bound found");
  }
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (imaginary_eigenvalue(sys, mid, &omega)) {
      lo = std::max(mid, max_singular_value(sys.transfer({0.0, omega})));
    } else {
      hi = mid;
    }
  }
  return hi;
}

LtiSystem random_stable_siso(int states, std::mt19937_64& rng, double pole_min, double pole_max) {
  if (states < 0) throw std::invalid_argument("random_stable_siso: negative state count");
  if (!(pole_min < pole_max && pole_max < 0.0)) {
    throw std::invalid_argument("random_stable_siso: need pole_min < pole_max < 0");
  }
  std::uniform_real_distribution<double> re(pole_min, pole_max);
  std::uniform_real_distribution<double> im(0.1, -pole_min);
  std::normal_distribution<double> normal;
  std::bernoulli_distribution coin(0.5);
  LtiSystem sys{Eigen::MatrixXd::Zero(states, states), Eigen::MatrixXd(states, 1),
                Eigen::MatrixXd(1, states), Eigen::MatrixXd::Constant(1, 1, normal(rng))};
  int i = 0;
  while (i < states) {
    if (i + 1 < states && coin(rng)) {
      const double a = re(rng), b = im(rng);
      sys.A(i, i) = a;
      sys.A(i, i + 1) = b;
      sys.A(i + 1, i) = -b;
      sys.A(i + 1, i + 1) = a;
      i += 2;
    } else {
      sys.A(i, i) = re(rng);
      ++i;
    }
  }
  for (int k = 0; k < states; ++k) {
    sys.B(k, 0) = normal(rng);
    sys.C(0, k) = normal(rng);
  }
  return sys;
}

LtvSystem close_uncertainty_loop(const PartitionedLtvSystem& G, const LtiSystem& delta) {
  if (delta.nu() != G.nv() || delta.ny() != G.nw()) {
    throw std::invalid_argument("close_uncertainty_loop: Delta has the wrong dimensions");
  }
  const int nG = G.nG(), nD = delta.n(), nd = G.nd(), ne = G.ne(), nv = G.nv();
  const TimeGrid grid = G.grid();
  std::vector<Eigen::MatrixXd> As, Bs, Cs, Ds;
  for (double t : grid.points()) {
    const Eigen::MatrixXd A = G.A(t), B1 = G.B1(t), B2 = G.B2(t), C1 = G.C1(t), D11 = G.D11(t),
                          D12 = G.D12(t), C2 = G.C2(t), D21 = G.D21(t), D22 = G.D22(t);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(Eigen::MatrixXd::Identity(nv, nv) - D11 * delta.D);
    if (!lu.isInvertible()) {
      throw NumericalError("close_uncertainty_loop: loop is ill-posed at t = " + std::to_string(t));
    }
    // v = L (C1 x + D11 C_D x_D + D12 d), w = C_D x_D + D_D v.
    Eigen::MatrixXd Vx(nv, nG + nD), Vd = lu.solve(D12);
    Vx << lu.solve(C1), lu.solve(D11 * delta.C);
    Eigen::MatrixXd Wx = delta.D * Vx;
    Wx.rightCols(nD) += delta.C;
    const Eigen::MatrixXd Wd = delta.D * Vd;

    Eigen::MatrixXd Acl = Eigen::MatrixXd::Zero(nG + nD, nG + nD);
    Acl.topLeftCorner(nG, nG) = A;
    Acl.topRows(nG) += B1 * Wx;
    Acl.bottomRightCorner(nD, nD) = delta.A;
    Acl.bottomRows(nD) += delta.B * Vx;
    Eigen::MatrixXd Bcl(nG + nD, nd);
    Bcl << B2 + B1 * Wd, delta.B * Vd;
    Eigen::MatrixXd Ccl = Eigen::MatrixXd::Zero(ne, nG + nD);
    Ccl.leftCols(nG) = C2;
    Ccl += D21 * Wx;
    As.push_back(Acl);
    Bs.push_back(Bcl);
    Cs.push_back(Ccl);
    Ds.push_back(D22 + D21 * Wd);
  }
  return LtvSystem(MatrixSignal(grid, As), MatrixSignal(grid, Bs), MatrixSignal(grid, Cs),
                   MatrixSignal(grid, Ds));
}

}  // namespace ltviqc
