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

#include "ltviqc/dlmi/spline_basis.hpp"

#include <stdexcept>
#include <string>

namespace ltviqc {

SplineBasis::SplineBasis(TimeGrid knots, SplineEnd end) : knots_(std::move(knots)), end_(end) {
  const auto N = static_cast<Eigen::Index>(knots_.size());
  moments_ = Eigen::MatrixXd::Zero(N, N);
  if (N < 3) return;  // two knots: linear interpolation
  if (end_ == SplineEnd::NotAKnot && N < 4) {
    throw std::invalid_argument("SplineBasis: not-a-knot ends need at least 4 knots");
  }
  // Moment equations at interior knots
  //   h_{i-1} m_{i-1} + 2 (h_{i-1} + h_i) m_i + h_i m_{i+1}
  //     = 6 [(y_{i+1} - y_i) / h_i - (y_i - y_{i-1}) / h_{i-1}]
  // closed by m_0 = m_{N-1} = 0 (natural) or a continuous third derivative at
  // the second and second-to-last knots (not-a-knot).
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(N, N);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index i = 1; i + 1 < N; ++i) {
    const double hl = knots_[i] - knots_[i - 1], hr = knots_[i + 1] - knots_[i];
    K(i, i - 1) = hl;
    K(i, i) = 2.0 * (hl + hr);
    K(i, i + 1) = hr;
    D(i, i + 1) += 6.0 / hr;
    D(i, i) -= 6.0 / hr + 6.0 / hl;
    D(i, i - 1) += 6.0 / hl;
  }
  if (end_ == SplineEnd::Natural) {
    K(0, 0) = 1.0;
    K(N - 1, N - 1) = 1.0;
  } else {
    const double h0 = knots_[1] - knots_[0], h1 = knots_[2] - knots_[1];
    K(0, 0) = h1;
    K(0, 1) = -(h0 + h1);
    K(0, 2) = h0;
    const double ha = knots_[N - 2] - knots_[N - 3], hb = knots_[N - 1] - knots_[N - 2];
    K(N - 1, N - 3) = hb;
    K(N - 1, N - 2) = -(ha + hb);
    K(N - 1, N - 1) = ha;
  }
  moments_ = K.partialPivLu().solve(D);
}

void SplineBasis::eval(double t, Eigen::VectorXd& h, Eigen::VectorXd& hdot) const {
  if (!knots_.contains(t)) {
    throw std::out_of_range("SplineBasis: t = " + std::to_string(t) + " outside the knots");
  }
  const std::size_t k = knots_.segment(t);
  const double a = knots_[k], b = knots_[k + 1], hk = b - a;
  const double l = b - t, r = t - a;
  const auto mk = moments_.row(k), mk1 = moments_.row(k + 1);
  h = (mk * (l * l * l) + mk1 * (r * r * r)).transpose() / (6.0 * hk) -
      mk.transpose() * (hk * l / 6.0) - mk1.transpose() * (hk * r / 6.0);
  hdot = (mk1 * (r * r) - mk * (l * l)).transpose() / (2.0 * hk) +
         (mk.transpose() - mk1.transpose()) * (hk / 6.0);
  h(k) += l / hk;
  h(k + 1) += r / hk;
  hdot(k) -= 1.0 / hk;
  hdot(k + 1) += 1.0 / hk;
}

double SplineBasis::value(std::size_t j, double t) const {
  Eigen::VectorXd h, hd;
  eval(t, h, hd);
  return h(static_cast<Eigen::Index>(j));
}

double SplineBasis::derivative(std::size_t j, double t) const {
  Eigen::VectorXd h, hd;
  eval(t, h, hd);
  return hd(static_cast<Eigen::Index>(j));
}

SplineBasis build_spline_basis(const TimeGrid& knots, SplineEnd end) {
  return SplineBasis(knots, end);
}

}  // namespace ltviqc
