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

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ltviqc/ltv/time_grid.hpp"

namespace ltviqc {

enum class Interp { PiecewiseLinear, ZeroOrderHold };

/// A matrix- or vector-valued function of time, stored as samples on a
/// TimeGrid. Samples all share one shape.
template <typename Sample>
class Signal {
 public:
  Signal(TimeGrid grid, std::vector<Sample> samples,
         Interp interp = Interp::PiecewiseLinear)
      : grid_(std::move(grid)), samples_(std::move(samples)), interp_(interp) {
    if (samples_.size() != grid_.size()) {
      throw std::invalid_argument("Signal: " + std::to_string(samples_.size()) +
                                  " samples for a grid of " +
                                  std::to_string(grid_.size()) + " points");
    }
    for (const auto& s : samples_) {
      if (s.rows() != samples_.front().rows() ||
          s.cols() != samples_.front().cols()) {
        throw std::invalid_argument("Signal: samples differ in dimension");
      }
    }
  }

  /// Same value at every time of [0, horizon].
  static Signal Constant(const Sample& value, double horizon) {
    return Signal(TimeGrid({0.0, horizon}), {value, value});
  }

  Sample operator()(double t) const {
    if (!grid_.contains(t)) {
      throw std::out_of_range("Signal: t = " + std::to_string(t) +
                              " outside [0, " + std::to_string(horizon()) +
                              "]");
    }
    return eval_in_segment(grid_.segment(t), t);
  }

  /// Evaluates the interpolant of segment k at t, without range checks. Used by
  /// integrators that step segment by segment so that zero-order-hold values
  /// are taken from the segment being integrated, also at its right end.
  Sample eval_in_segment(std::size_t k, double t) const {
    if (interp_ == Interp::ZeroOrderHold || grid_.size() == 1) {
      return samples_[k];
    }
    const double t0 = grid_[k];
    const double t1 = grid_[k + 1];
    const double s = (t - t0) / (t1 - t0);
    if (s <= 0.0) return samples_[k];
    if (s >= 1.0) return samples_[k + 1];
    return (1.0 - s) * samples_[k] + s * samples_[k + 1];
  }

  const TimeGrid& grid() const { return grid_; }
  const std::vector<Sample>& samples() const { return samples_; }
  Interp interp() const { return interp_; }
  double horizon() const { return grid_.horizon(); }
  Eigen::Index rows() const { return samples_.front().rows(); }
  Eigen::Index cols() const { return samples_.front().cols(); }

  bool is_constant(double tol = 0.0) const {
    for (const auto& s : samples_) {
      if ((s - samples_.front()).cwiseAbs().maxCoeff() > tol) return false;
    }
    return true;
  }

 private:
  TimeGrid grid_;
  std::vector<Sample> samples_;
  Interp interp_;
};

using MatrixSignal = Signal<Eigen::MatrixXd>;
using VectorSignal = Signal<Eigen::VectorXd>;

inline Eigen::MatrixXd eval_signal(const MatrixSignal& ms, double t) {
  return ms(t);
}

/// Samples f(t) at every point of `grid` into a piecewise-linear signal.
template <typename F>
MatrixSignal sample_signal(const TimeGrid& grid, F&& f) {
  std::vector<Eigen::MatrixXd> samples;
  samples.reserve(grid.size());
  for (double t : grid.points()) samples.emplace_back(f(t));
  return MatrixSignal(grid, std::move(samples));
}

/// Restricts a signal to [0, horizon], or extends it when the signal is
/// constant. Non-constant signals cannot be extended past their horizon.
template <typename Sample>
Signal<Sample> with_horizon(const Signal<Sample>& s, double horizon) {
  if (horizon <= 0.0) throw std::invalid_argument("with_horizon: horizon <= 0");
  if (horizon > s.horizon() * (1.0 + 1e-12)) {
    if (!s.is_constant()) {
      throw std::invalid_argument(
          "with_horizon: cannot extend a time-varying signal");
    }
    return Signal<Sample>(TimeGrid({0.0, horizon}),
                          {s.samples().front(), s.samples().front()},
                          s.interp());
  }
  std::vector<double> pts;
  std::vector<Sample> vals;
  for (std::size_t k = 0; k < s.grid().size(); ++k) {
    if (s.grid()[k] < horizon * (1.0 - 1e-12)) {
      pts.push_back(s.grid()[k]);
      vals.push_back(s.samples()[k]);
    }
  }
  pts.push_back(horizon);
  vals.push_back(s.eval_in_segment(s.grid().segment(horizon), horizon));
  return Signal<Sample>(TimeGrid(std::move(pts)), std::move(vals), s.interp());
}

}  // namespace ltviqc
