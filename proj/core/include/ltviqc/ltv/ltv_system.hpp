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

#include <Eigen/Dense>

#include "ltviqc/ltv/signal.hpp"

namespace ltviqc {

/// Finite-horizon state-space data
///   xdot = A(t) x + B(t) d,   e = C(t) x + D(t) d   on [0, T].
class LtvSystem {
 public:
  LtvSystem(MatrixSignal A, MatrixSignal B, MatrixSignal C, MatrixSignal D);

  /// Time-invariant system on [0, horizon].
  static LtvSystem Constant(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                            const Eigen::MatrixXd& C, const Eigen::MatrixXd& D,
                            double horizon);

  const MatrixSignal& A() const { return A_; }
  const MatrixSignal& B() const { return B_; }
  const MatrixSignal& C() const { return C_; }
  const MatrixSignal& D() const { return D_; }

  int nx() const { return static_cast<int>(A_.rows()); }
  int nd() const { return static_cast<int>(B_.cols()); }
  int ne() const { return static_cast<int>(C_.rows()); }
  double horizon() const { return A_.horizon(); }

  /// Union of the grids of all four matrices.
  TimeGrid grid() const;

  /// Same system restricted (or, if time-invariant, extended) to [0, horizon].
  LtvSystem with_horizon(double horizon) const;

 private:
  MatrixSignal A_, B_, C_, D_;
};

/// Plant with uncertainty channels (w -> v) and performance channels (d -> e):
///   xdot = A x + B1 w + B2 d
///   v    = C1 x + D11 w + D12 d
///   e    = C2 x + D21 w + D22 d
struct PartitionedLtvSystem {
  MatrixSignal A, B1, B2, C1, D11, D12, C2, D21, D22;

  PartitionedLtvSystem(MatrixSignal A, MatrixSignal B1, MatrixSignal B2,
                       MatrixSignal C1, MatrixSignal D11, MatrixSignal D12,
                       MatrixSignal C2, MatrixSignal D21, MatrixSignal D22);

  /// Splits an LtvSystem whose first n_w inputs are w and first n_v outputs
  /// are v.
  static PartitionedLtvSystem FromPartition(const LtvSystem& sys, int n_w,
                                            int n_v);

  int nG() const { return static_cast<int>(A.rows()); }
  int nw() const { return static_cast<int>(B1.cols()); }
  int nd() const { return static_cast<int>(B2.cols()); }
  int nv() const { return static_cast<int>(C1.rows()); }
  int ne() const { return static_cast<int>(C2.rows()); }
  double horizon() const { return A.horizon(); }
  TimeGrid grid() const;

  /// The d -> e system with the uncertainty removed (w = 0).
  LtvSystem nominal() const;
  /// Recombines into a single LtvSystem with inputs [w; d], outputs [v; e].
  LtvSystem combined() const;

  PartitionedLtvSystem with_horizon(double horizon) const;
};

}  // namespace ltviqc
