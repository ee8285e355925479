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

#include "ltviqc/iqc/robust_cost.hpp"

#include <stdexcept>

namespace ltviqc {
namespace {

Eigen::MatrixXd gamma_weight(const ExtendedSystem& ext) {
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(ext.n_in(), ext.n_in());
  G.bottomRightCorner(ext.nd, ext.nd).setIdentity();
  return G;
}

void require_zero_terminal_feedthrough(const ExtendedSystem& ext) {
  if (ext.D2(ext.horizon()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("L2-to-Euclidean cost requires D_G21(T) = 0 and D_G22(T) = 0");
  }
}

// [C D] sampled on the union of both grids, which reproduces the
// interpolants of C and D exactly.
MatrixSignal stacked(const MatrixSignal& C, const MatrixSignal& D) {
  const TimeGrid g = TimeGrid::Merge(C.grid(), D.grid());
  return sample_signal(g, [&](double t) {
    Eigen::MatrixXd L(C.rows(), C.cols() + D.cols());
    L << C(t), D(t);
    return L;
  });
}

}  // namespace

QuadraticCost robust_l2_cost(const ExtendedSystem& ext, double gamma) {
  return robust_cost_data(ext, GainKind::InducedL2,
                          MatrixSignal::Constant(Eigen::MatrixXd::Zero(ext.nz(), ext.nz()),
                                                 ext.horizon()))
      .at(gamma);
}

QuadraticCost robust_l2e_cost(const ExtendedSystem& ext, double gamma) {
  return robust_cost_data(ext, GainKind::L2ToEuclidean,
                          MatrixSignal::Constant(Eigen::MatrixXd::Zero(ext.nz(), ext.nz()),
                                                 ext.horizon()))
      .at(gamma);
}

QuadraticCost merge_iqc_into_cost(const QuadraticCost& cost, const ExtendedSystem& ext,
                                  const MatrixSignal& M) {
  if (M.rows() != ext.nz() || cost.nx() != ext.n() || cost.nd() != ext.n_in()) {
    throw std::invalid_argument("merge_iqc_into_cost: dimension mismatch");
  }
  return cost.with_term({stacked(ext.C1, ext.D1), M});
}

QuadraticCost GammaAffineCost::at(double gamma) const {
  if (!(gamma > 0.0)) throw std::invalid_argument("robust cost: gamma must be > 0");
  std::vector<Eigen::MatrixXd> R;
  R.reserve(R0.samples().size());
  for (const auto& r : R0.samples()) R.emplace_back(r - gamma * gamma * G);
  return QuadraticCost(Q, S, MatrixSignal(R0.grid(), std::move(R), R0.interp()), F, terms);
}

GammaAffineCost robust_cost_data(const ExtendedSystem& ext, GainKind kind,
                                 const MatrixSignal& M) {
  if (M.rows() != ext.nz()) throw std::invalid_argument("robust_cost_data: M dimension");
  if (kind == GainKind::L2ToEuclidean) require_zero_terminal_feedthrough(ext);
  const double T = ext.horizon();
  const int n = ext.n(), m = ext.n_in();
  std::vector<FactoredTerm> terms{{stacked(ext.C1, ext.D1), M}};
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(n, n);
  if (kind == GainKind::InducedL2) {
    terms.push_back({stacked(ext.C2, ext.D2),
                     MatrixSignal::Constant(Eigen::MatrixXd::Identity(ext.ne(), ext.ne()), T)});
  } else {
    const Eigen::MatrixXd C2 = ext.C2(T);
    F = C2.transpose() * C2;
  }
  return {MatrixSignal::Constant(Eigen::MatrixXd::Zero(n, n), T),
          MatrixSignal::Constant(Eigen::MatrixXd::Zero(n, m), T),
          MatrixSignal::Constant(Eigen::MatrixXd::Zero(m, m), T),
          F,
          gamma_weight(ext),
          std::move(terms)};
}

}  // namespace ltviqc
