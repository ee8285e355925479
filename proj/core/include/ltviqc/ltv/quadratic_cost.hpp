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

#include <vector>

#include <Eigen/Dense>

#include "ltviqc/ltv/ltv_system.hpp"
#include "ltviqc/ltv/signal.hpp"

namespace ltviqc {

struct CostBlocks {
  Eigen::MatrixXd Q, S, R;
};

/// Running-cost term L(t)' W(t) L(t) on [x; d]. L (p x (nx + nd)) and W
/// (p x p) are interpolated separately, so the term is the exact product of
/// the interpolants rather than an interpolated product.
struct FactoredTerm {
  MatrixSignal L;
  MatrixSignal W;
};

/// J(d) = x(T)' F x(T) + int [x; d]' ([Q S; S' R] + sum_k L_k' W_k L_k) [x; d] dt.
/// Q, R, W and F are symmetrized on construction.
class QuadraticCost {
 public:
  QuadraticCost(MatrixSignal Q, MatrixSignal S, MatrixSignal R, Eigen::MatrixXd F,
                std::vector<FactoredTerm> terms = {});

  /// Piecewise-linear part only.
  const MatrixSignal& Q() const { return Q_; }
  const MatrixSignal& S() const { return S_; }
  const MatrixSignal& R() const { return R_; }
  const std::vector<FactoredTerm>& terms() const { return terms_; }
  const Eigen::MatrixXd& F() const { return F_; }
  int nx() const { return static_cast<int>(F_.rows()); }
  int nd() const { return static_cast<int>(R_.rows()); }
  double horizon() const { return Q_.horizon(); }
  TimeGrid grid() const;

  /// Full weights at t.
  CostBlocks at(double t) const;
  /// Full weights at t, using the segment holding t_mid for every signal.
  CostBlocks near(double t_mid, double t) const;

  /// Same cost with `term` appended.
  QuadraticCost with_term(FactoredTerm term) const;

  /// Largest eigenvalue of R(t) over the grid. Without factored terms R is
  /// piecewise linear and lambda_max is convex, so this bounds it everywhere;
  /// with factored terms the segment midpoints are checked as well.
  double max_eigenvalue_R() const;
  bool r_negative_definite(double threshold = -1e-10) const {
    return max_eigenvalue_R() < threshold;
  }

 private:
  MatrixSignal Q_, S_, R_;
  Eigen::MatrixXd F_;
  std::vector<FactoredTerm> terms_;
};

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& X);

/// Q = C'C, S = C'D, R = D'D - gamma^2 I, F = 0, so J = |e|^2 - gamma^2 |d|^2.
/// The output part is the factored term [C D]' [C D].
QuadraticCost cost_for_l2_gain(const LtvSystem& sys, double gamma);

/// Q = 0, S = 0, R = -gamma^2 I, F = C(T)'C(T), so J = |e(T)|^2 - gamma^2|d|^2.
/// Requires D(T) = 0.
QuadraticCost cost_for_l2e_gain(const LtvSystem& sys, double gamma);

}  // namespace ltviqc
