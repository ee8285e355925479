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

#include <cstddef>

#include <Eigen/Dense>

#include "ltviqc/ltv/time_grid.hpp"

namespace ltviqc {

enum class SplineEnd {
  Natural,   // zero second derivative at both ends
  NotAKnot,  // one cubic across the first two and last two intervals
};

/// Cardinal basis of cubic splines on the knots: h_j(tau_k) = delta_jk,
/// C2 on [tau_0, tau_last].
class SplineBasis {
 public:
  explicit SplineBasis(TimeGrid knots, SplineEnd end = SplineEnd::Natural);

  std::size_t size() const { return knots_.size(); }
  const TimeGrid& knots() const { return knots_; }
  SplineEnd end() const { return end_; }

  /// All basis values h(t) and derivatives hdot(t).
  void eval(double t, Eigen::VectorXd& h, Eigen::VectorXd& hdot) const;
  double value(std::size_t j, double t) const;
  double derivative(std::size_t j, double t) const;

 private:
  TimeGrid knots_;
  SplineEnd end_ = SplineEnd::Natural;
  Eigen::MatrixXd moments_;  // second derivatives at the knots, one column per h_j
};

SplineBasis build_spline_basis(const TimeGrid& knots, SplineEnd end = SplineEnd::Natural);

}  // namespace ltviqc
