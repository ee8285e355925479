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

#include "ltviqc/studies/random_systems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ltviqc {

Eigen::MatrixXd randn(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXd M(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M(i, j) = nd(rng);
  return M;
}

LtvSystem random_stable_ltv(std::mt19937_64& rng, const RandomLtvOptions& o) {
  if (o.states < 1 || o.inputs < 1 || o.outputs < 1 || o.horizon <= 0.0 || o.grid_points < 2) {
    throw std::invalid_argument("random_stable_ltv: bad dimensions or horizon");
  }
  const int n = o.states, m = o.inputs, p = o.outputs;
  const Eigen::MatrixXd W = randn(rng, n, n), K = randn(rng, n, n);
  const Eigen::MatrixXd A0 =
      0.5 * (K - K.transpose()) - Eigen::MatrixXd::Identity(n, n) - W * W.transpose() / n;
  const Eigen::MatrixXd B0 = randn(rng, n, m), C0 = randn(rng, p, n);
  const Eigen::MatrixXd D0 = o.feedthrough ? randn(rng, p, m) : Eigen::MatrixXd::Zero(p, m);
  const Eigen::MatrixXd A1 = o.variation * randn(rng, n, n);
  const Eigen::MatrixXd B1 = o.variation * randn(rng, n, m);
  const Eigen::MatrixXd C1 = o.variation * randn(rng, p, n);
  const Eigen::MatrixXd D1 = o.feedthrough ? Eigen::MatrixXd(o.variation * randn(rng, p, m))
                                           : Eigen::MatrixXd::Zero(p, m);

  const TimeGrid grid = TimeGrid::Uniform(o.horizon, o.grid_points);
  std::vector<Eigen::MatrixXd> As, Bs, Cs, Ds;
  for (double t : grid.points()) {
    const double s = std::sin(std::numbers::pi * t / o.horizon);
    As.push_back(A0 + s * A1);
    Bs.push_back(B0 + s * B1);
    Cs.push_back(C0 + s * C1);
    Ds.push_back(D0 + s * D1);
  }
  return LtvSystem(MatrixSignal(grid, As), MatrixSignal(grid, Bs), MatrixSignal(grid, Cs),
                   MatrixSignal(grid, Ds));
}

}  // namespace ltviqc
