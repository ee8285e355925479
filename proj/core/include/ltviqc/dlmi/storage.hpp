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

#include <vector>

#include <Eigen/Dense>

#include "ltviqc/dlmi/spline_basis.hpp"
#include "ltviqc/riccati/rde.hpp"

namespace ltviqc {

/// Matrix-valued basis functions H_k(t), each kept as a dense RDE solution
/// (samples of Y and of the RDE right-hand side, Hermite-interpolated).
class MatrixBasis {
 public:
  MatrixBasis() = default;
  explicit MatrixBasis(std::vector<RdeSolution> functions);

  std::size_t size() const { return functions_.size(); }
  /// H_k(t), normalized so that max_t |H_k(t)|_F = 1 over the stored samples.
  StorageValue eval(std::size_t k, double t) const;
  const std::vector<RdeSolution>& functions() const { return functions_; }
  double scale(std::size_t k) const { return scales_[k]; }

 private:
  std::vector<RdeSolution> functions_;
  std::vector<double> scales_;
};

/// P(t) = sum_j h_j(t) X_j + sum_k H_k(t) x_k.
struct StorageParam {
  std::vector<Eigen::MatrixXd> X;
  Eigen::VectorXd x;
};

StorageValue eval_storage(const SplineBasis& basis, const MatrixBasis& mbasis,
                          const StorageParam& params, double t);

/// Storage function closure; copies the bases and parameters.
StorageFn storage_fn(const SplineBasis& basis, const MatrixBasis& mbasis,
                     const StorageParam& params);

}  // namespace ltviqc
