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
#include <random>

#include <Eigen/Dense>

#include "ltviqc/ltv/ltv_system.hpp"

namespace ltviqc {

struct RandomLtvOptions {
  int states = 2;
  int inputs = 1;
  int outputs = 1;
  double horizon = 2.0;
  std::size_t grid_points = 41;
  double variation = 0.3;   // size of the time-varying part relative to randn
  bool feedthrough = false; // D = 0 otherwise
};

/// A(t) = A0 + s(t) A1 with s(t) = sin(pi t / T) and
/// A0 = K - I - W W' / n (K skew), so A0 + A0' <= -2I. B, C (and D) vary the
/// same way around random constant parts. Sampled on a uniform grid.
LtvSystem random_stable_ltv(std::mt19937_64& rng, const RandomLtvOptions& options);

/// Matrix with independent standard normal entries.
Eigen::MatrixXd randn(std::mt19937_64& rng, int rows, int cols);

}  // namespace ltviqc
