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
#include <span>
#include <vector>

namespace ltviqc {

/// Strictly increasing sample times spanning [0, T].
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> points);

  /// `num_points` evenly spaced times on [0, horizon].
  static TimeGrid Uniform(double horizon, std::size_t num_points);

  /// Sorted union of two grids on the same horizon. Points closer than
  /// `min_spacing` to an already accepted point are dropped.
  static TimeGrid Merge(const TimeGrid& a, const TimeGrid& b,
                        double min_spacing = 0.0);

  std::span<const double> points() const { return points_; }
  const std::vector<double>& vector() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t k) const { return points_[k]; }
  double horizon() const { return points_.back(); }

  /// True when t lies in [0, T] up to a relative slack of 1e-12.
  bool contains(double t) const;

  /// Index k of the segment [t_k, t_{k+1}] holding t (last segment for t = T).
  std::size_t segment(double t) const;

  bool operator==(const TimeGrid& other) const = default;

 private:
  std::vector<double> points_;
};

}  // namespace ltviqc
