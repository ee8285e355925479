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

#include <limits>

#include <Eigen/Dense>

namespace ltviqc {

inline Eigen::Index packed_size(Eigen::Index n) { return n * (n + 1) / 2; }

/// Upper triangle of a symmetric matrix, row by row.
inline Eigen::VectorXd pack_upper(const Eigen::MatrixXd& X) {
  const Eigen::Index n = X.rows();
  Eigen::VectorXd v(packed_size(n));
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) v(k++) = X(i, j);
  return v;
}

inline Eigen::MatrixXd unpack_upper(const Eigen::VectorXd& v, Eigen::Index n) {
  Eigen::MatrixXd X(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) X(i, j) = X(j, i) = v(k++);
  return X;
}

inline double max_eigenvalue(const Eigen::MatrixXd& X) {
  if (X.size() == 0) return -std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (X + X.transpose()),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

inline double min_eigenvalue(const Eigen::MatrixXd& X) {
  if (X.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (X + X.transpose()),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Value of a signal at t using the segment of its own grid that contains
/// `t_mid`. Integrators pass the midpoint of the step interval so that
/// zero-order-hold samples are consistent at interval ends.
template <typename Sig>
auto eval_near(const Sig& s, double t_mid, double t) {
  return s.eval_in_segment(s.grid().segment(t_mid), t);
}

}  // namespace ltviqc
