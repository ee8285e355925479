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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ltviqc/ltv/ltv_system.hpp"
#include "ltviqc/ltv/signal.hpp"

namespace ltviqc {

/// Stable LTI filter
///   xdot_psi = A x_psi + B1 v + B2 w,   z = C x_psi + D1 v + D2 w,
/// always started from x_psi(0) = 0.
class IqcFilter {
 public:
  IqcFilter(Eigen::MatrixXd A, Eigen::MatrixXd B1, Eigen::MatrixXd B2, Eigen::MatrixXd C,
            Eigen::MatrixXd D1, Eigen::MatrixXd D2);

  /// Row-stacked filter [Psi_1; Psi_2; ...] with block-diagonal states.
  static IqcFilter Stack(const std::vector<IqcFilter>& parts);

  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::MatrixXd& B1() const { return B1_; }
  const Eigen::MatrixXd& B2() const { return B2_; }
  const Eigen::MatrixXd& C() const { return C_; }
  const Eigen::MatrixXd& D1() const { return D1_; }
  const Eigen::MatrixXd& D2() const { return D2_; }
  int n_psi() const { return static_cast<int>(A_.rows()); }
  int n_v() const { return static_cast<int>(B1_.cols()); }
  int n_w() const { return static_cast<int>(B2_.cols()); }
  int n_z() const { return static_cast<int>(C_.rows()); }

  /// Transfer matrix [D1 D2] + C (sI - A)^{-1} [B1 B2] at s.
  Eigen::MatrixXcd transfer(std::complex<double> s) const;

  /// The filter as an LtvSystem on [0, horizon] with inputs [v; w].
  LtvSystem as_system(double horizon) const;

 private:
  Eigen::MatrixXd A_, B1_, B2_, C_, D1_, D2_;
};

/// Quadrature value of int z' M z dt, with z the filter response to (v, w)
/// from zero initial state.
double iqc_check(const IqcFilter& psi, const MatrixSignal& M, const VectorSignal& v,
                 const VectorSignal& w);

}  // namespace ltviqc
