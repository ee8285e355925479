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

#include "ltviqc/ltv/time_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ltviqc {

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw std::invalid_argument("TimeGrid: need at least 2 points");
  }
  if (points_.front() != 0.0) {
    throw std::invalid_argument("TimeGrid: first point must be 0");
  }
  for (std::size_t k = 1; k < points_.size(); ++k) {
    if (!(points_[k] > points_[k - 1]) || !std::isfinite(points_[k])) {
      throw std::invalid_argument("TimeGrid: points must be strictly increasing (index " +
                                  std::to_string(k) + ")");
    }
  }
}

TimeGrid TimeGrid::Uniform(double horizon, std::size_t num_points) {
  if (!(horizon > 0.0) || num_points < 2) {
    throw std::invalid_argument("TimeGrid::Uniform: need horizon > 0 and >= 2 points");
  }
  std::vector<double> pts(num_points);
  for (std::size_t k = 0; k < num_points; ++k) {
    pts[k] = horizon * static_cast<double>(k) / static_cast<double>(num_points - 1);
  }
  pts.back() = horizon;
  return TimeGrid(std::move(pts));
}

TimeGrid TimeGrid::Merge(const TimeGrid& a, const TimeGrid& b, double min_spacing) {
  if (std::abs(a.horizon() - b.horizon()) > 1e-12 * std::max(a.horizon(), b.horizon())) {
    throw std::invalid_argument("TimeGrid::Merge: horizons differ");
  }
  std::vector<double> all;
  all.reserve(a.size() + b.size());
  std::merge(a.points_.begin(), a.points_.end(), b.points_.begin(), b.points_.end(),
             std::back_inserter(all));
  const double T = a.horizon();
  const double spacing = std::max(min_spacing, 1e-13 * T);
  std::vector<double> out;
  out.reserve(all.size());
  for (double t : all) {
    if (out.empty() || t - out.back() > spacing) out.push_back(t);
  }
  // Keep the exact horizon as the last point.
  if (out.back() != T) {
    if (out.size() >= 2 && T - out[out.size() - 2] <= spacing) out.pop_back();
    out.back() = T;
  }
  return TimeGrid(std::move(out));
}

bool TimeGrid::contains(double t) const {
  const double slack = 1e-12 * horizon();
  return t >= -slack && t <= horizon() + slack;
}

std::size_t TimeGrid::segment(double t) const {
  auto it = std::upper_bound(points_.begin(), points_.end(), t);
  std::size_t k = (it == points_.begin()) ? 0 : static_cast<std::size_t>(it - points_.begin()) - 1;
  return std::min(k, points_.size() - 2);
}

}  // namespace ltviqc
