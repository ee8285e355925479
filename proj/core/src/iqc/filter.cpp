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

#include "ltviqc/iqc/filter.hpp"

#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "ltviqc/ltv/simulate.hpp"

namespace ltviqc {

IqcFilter::IqcFilter(Eigen::MatrixXd A, Eigen::MatrixXd B1, Eigen::MatrixXd B2,
                     Eigen::MatrixXd C, Eigen::MatrixXd D1, Eigen::MatrixXd D2)
    : A_(std::move(A)),
      B1_(std::move(B1)),
      B2_(std::move(B2)),
      C_(std::move(C)),
      D1_(std::move(D1)),
      D2_(std::move(D2)) {
  const auto n = A_.rows();
  if (A_.cols() != n || B1_.rows() != n || B2_.rows() != n || C_.cols() != n ||
      D1_.rows() != C_.rows() || D2_.rows() != C_.rows() || D1_.cols() != B1_.cols() ||
      D2_.cols() != B2_.cols()) {
    throw std::invalid_argument("IqcFilter: inconsistent dimensions");
  }
  if (n > 0) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(A_, false);
    if (es.eigenvalues().real().maxCoeff() >= -1e-9) {
      throw std::invalid_argument("IqcFilter: A_psi is not Hurwitz");
    }
  }
}

IqcFilter IqcFilter::Stack(const std::vector<IqcFilter>& parts) {
  if (parts.empty()) throw std::invalid_argument("IqcFilter::Stack: no parts");
  const int nv = parts.front().n_v(), nw = parts.front().n_w();
  int n = 0, nz = 0;
  for (const auto& p : parts) {
    if (p.n_v() != nv || p.n_w() != nw) {
      throw std::invalid_argument("IqcFilter::Stack: channel dimensions differ");
    }
    n += p.n_psi();
    nz += p.n_z();
  }
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n), B1(n, nv), B2(n, nw);
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(nz, n), D1(nz, nv), D2(nz, nw);
  int r = 0, z = 0;
  for (const auto& p : parts) {
    A.block(r, r, p.n_psi(), p.n_psi()) = p.A();
    B1.middleRows(r, p.n_psi()) = p.B1();
    B2.middleRows(r, p.n_psi()) = p.B2();
    C.block(z, r, p.n_z(), p.n_psi()) = p.C();
    D1.middleRows(z, p.n_z()) = p.D1();
    D2.middleRows(z, p.n_z()) = p.D2();
    r += p.n_psi();
    z += p.n_z();
  }
  return IqcFilter(A, B1, B2, C, D1, D2);
}

Eigen::MatrixXcd IqcFilter::transfer(std::complex<double> s) const {
  Eigen::MatrixXd B(n_psi(), n_v() + n_w()), D(n_z(), n_v() + n_w());
  B << B1_, B2_;
  D << D1_, D2_;
  Eigen::MatrixXcd out = D.cast<std::complex<double>>();
  if (n_psi() > 0) {
    const Eigen::MatrixXcd sIA =
        s * Eigen::MatrixXcd::Identity(n_psi(), n_psi()) - A_.cast<std::complex<double>>();
    out += C_.cast<std::complex<double>>() *
           sIA.partialPivLu().solve(B.cast<std::complex<double>>());
  }
  return out;
}

LtvSystem IqcFilter::as_system(double horizon) const {
  Eigen::MatrixXd B(n_psi(), n_v() + n_w()), D(n_z(), n_v() + n_w());
  B << B1_, B2_;
  D << D1_, D2_;
  return LtvSystem::Constant(A_, B, C_, D, horizon);
}

double iqc_check(const IqcFilter& psi, const MatrixSignal& M, const VectorSignal& v,
                 const VectorSignal& w) {
  if (v.rows() != psi.n_v() || w.rows() != psi.n_w() || M.rows() != psi.n_z() ||
      M.cols() != psi.n_z()) {
    throw std::invalid_argument("iqc_check: dimension mismatch");
  }
  const double T = v.horizon();
  const TimeGrid grid = TimeGrid::Merge(TimeGrid::Merge(v.grid(), w.grid()), M.grid());
  std::vector<Eigen::VectorXd> vw;
  vw.reserve(grid.size());
  for (double t : grid.points()) {
    Eigen::VectorXd s(psi.n_v() + psi.n_w());
    s << v(t), w(t);
    vw.push_back(std::move(s));
  }
  const VectorSignal input(grid, std::move(vw));
  const SimulationResult sim =
      simulate(psi.as_system(T), input, Eigen::VectorXd::Zero(psi.n_psi()));
  const auto& g = sim.e.grid();
  auto f = [&](std::size_t k) {
    const Eigen::VectorXd& z = sim.e.samples()[k];
    return z.dot(M(g[k]) * z);
  };
  double acc = 0.0, prev = f(0);
  for (std::size_t k = 0; k + 1 < g.size(); ++k) {
    const double next = f(k + 1);
    acc += 0.5 * (g[k + 1] - g[k]) * (prev + next);
    prev = next;
  }
  return acc;
}

}  // namespace ltviqc
