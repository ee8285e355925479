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

#include "ltviqc/iteration/refine_grid.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ltviqc {

TimeGrid refine_grid(const TimeGrid& t_dlmi, const std::function<double(double)>& margin,
                     std::span<const double> dense, std::size_t cap, double threshold) {
  if (cap == 0 || dense.empty()) return t_dlmi;
  std::vector<double> vals(dense.size());
  for (std::size_t i = 0; i < dense.size(); ++i) vals[i] = margin(dense[i]);

  struct Candidate {
    double value;
    bool peak;
    double t;
  };
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (!(vals[i] > threshold)) continue;
    const bool peak = (i == 0 || vals[i] >= vals[i - 1]) &&
                      (i + 1 == dense.size() || vals[i] >= vals[i + 1]);
    cands.push_back({vals[i], peak, dense[i]});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.peak != b.peak) return a.peak;
    return a.value > b.value;
  });

  const double T = t_dlmi.horizon();
  const double min_spacing = 1e-9 * T;
  std::vector<double> pts = t_dlmi.vector();
  std::size_t added = 0;
  for (const auto& c : cands) {
    if (added >= cap) break;
    if (c.t < 0.0 || c.t > T) continue;
    auto it = std::lower_bound(pts.begin(), pts.end(), c.t);
    const bool near_next = it != pts.end() && std::abs(*it - c.t) <= min_spacing;
    const bool near_prev = it != pts.begin() && std::abs(*(it - 1) - c.t) <= min_spacing;
    if (near_next || near_prev) continue;
    pts.insert(it, c.t);
    ++added;
  }
  return TimeGrid(std::move(pts));
}

}  // namespace ltviqc
