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

#include "ltviqc/ltv/quadratic_cost.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace ltviqc {
namespace {

MatrixSignal symmetrized(const MatrixSignal& s) {
  std::vector<Eigen::MatrixXd> samples;
  samples.reserve(s.samples().size());
  for (const auto& m : s.samples()) samples.emplace_back(symmetrize(m));
  return MatrixSignal(s.grid(), std::move(samples), s.interp());
}

}  // namespace

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& X) {
  if (X.rows() != X.cols()) throw std::invalid_argument("symmetrize: not square");
  return 0.5 * (X + X.transpose());
}

QuadraticCost::QuadraticCost(MatrixSignal Q, MatrixSignal S, MatrixSignal R,
                             Eigen::MatrixXd F, std::vector<FactoredTerm> terms)
    : Q_(symmetrized(Q)), S_(std::move(S)), R_(symmetrized(R)), F_(symmetrize(F)) {
  if (Q_.rows() != F_.rows() || S_.rows() != F_.rows() || S_.cols() != R_.rows()) {
    throw std::invalid_argument("QuadraticCost: inconsistent dimensions");
  }
  for (auto& t : terms) {
    if (t.L.cols() != nx() + nd() || t.W.rows() != t.L.rows() || t.W.cols() != t.L.rows()) {
      throw std::invalid_argument("QuadraticCost: factored term has inconsistent dimensions");
    }
    terms_.push_back({std::move(t.L), symmetrized(t.W)});
  }
}

TimeGrid QuadraticCost::grid() const {
  TimeGrid g = TimeGrid::Merge(TimeGrid::Merge(Q_.grid(), S_.grid()), R_.grid());
  for (const auto& t : terms_) g = TimeGrid::Merge(TimeGrid::Merge(g, t.L.grid()), t.W.grid());
  return g;
}

namespace {

template <class Eval>
CostBlocks assemble_blocks(const QuadraticCost& c, Eval&& eval) {
  CostBlocks b{eval(c.Q()), eval(c.S()), eval(c.R())};
  const int n = c.nx(), m = c.nd();
  for (const auto& t : c.terms()) {
    const Eigen::MatrixXd L = eval(t.L);
    const Eigen::MatrixXd WL = eval(t.W) * L;
    b.Q.noalias() += L.leftCols(n).transpose() * WL.leftCols(n);
    b.S.noalias() += L.leftCols(n).transpose() * WL.rightCols(m);
    b.R.noalias() += L.rightCols(m).transpose() * WL.rightCols(m);
  }
  return b;
}

}  // namespace

CostBlocks QuadraticCost::at(double t) const {
  return assemble_blocks(*this, [t](const MatrixSignal& s) { return s(t); });
}

CostBlocks QuadraticCost::near(double t_mid, double t) const {
  return assemble_blocks(*this, [t_mid, t](const MatrixSignal& s) {
    return s.eval_in_segment(s.grid().segment(t_mid), t);
  });
}

QuadraticCost QuadraticCost::with_term(FactoredTerm term) const {
  std::vector<FactoredTerm> terms = terms_;
  terms.push_back(std::move(term));
  return QuadraticCost(Q_, S_, R_, F_, std::move(terms));
}

double QuadraticCost::max_eigenvalue_R() const {
  double worst = -std::numeric_limits<double>::infinity();
  if (nd() == 0) return worst;
  auto check = [&](const Eigen::MatrixXd& r) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(r), Eigen::EigenvaluesOnly);
    worst = std::max(worst, es.eigenvalues().maxCoeff());
  };
  if (terms_.empty()) {
    for (const auto& r : R_.samples()) check(r);
    return worst;
  }
  const TimeGrid g = grid();
  for (std::size_t k = 0; k < g.size(); ++k) {
    check(at(g[k]).R);
    if (k + 1 < g.size()) check(at(0.5 * (g[k] + g[k + 1])).R);
  }
  return worst;
}

QuadraticCost cost_for_l2_gain(const LtvSystem& sys, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("cost_for_l2_gain: gamma must be > 0");
  const TimeGrid g = TimeGrid::Merge(sys.C().grid(), sys.D().grid());
  const double T = sys.horizon();
  const int nx = sys.nx(), nd = sys.nd();
  auto L = sample_signal(g, [&](double t) {
    Eigen::MatrixXd l(sys.ne(), nx + nd);
    l << sys.C()(t), sys.D()(t);
    return l;
  });
  return QuadraticCost(MatrixSignal::Constant(Eigen::MatrixXd::Zero(nx, nx), T),
                       MatrixSignal::Constant(Eigen::MatrixXd::Zero(nx, nd), T),
                       MatrixSignal::Constant(-gamma * gamma * Eigen::MatrixXd::Identity(nd, nd), T),
                       Eigen::MatrixXd::Zero(nx, nx),
                       {{std::move(L), MatrixSignal::Constant(Eigen::MatrixXd::Identity(
                                                                   sys.ne(), sys.ne()), T)}});
}

QuadraticCost cost_for_l2e_gain(const LtvSystem& sys, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("cost_for_l2e_gain: gamma must be > 0");
  const double T = sys.horizon();
  const Eigen::MatrixXd DT = sys.D()(T);
  if (DT.size() > 0 && DT.cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("cost_for_l2e_gain: requires D(T) = 0");
  }
  const Eigen::MatrixXd CT = sys.C()(T);
  const int nx = sys.nx();
  const int nd = sys.nd();
  return QuadraticCost(MatrixSignal::Constant(Eigen::MatrixXd::Zero(nx, nx), T),
                       MatrixSignal::Constant(Eigen::MatrixXd::Zero(nx, nd), T),
                       MatrixSignal::Constant(-gamma * gamma * Eigen::MatrixXd::Identity(nd, nd), T),
                       CT.transpose() * CT);
}

}  // namespace ltviqc
