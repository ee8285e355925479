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

#include "ltviqc/dlmi/storage.hpp"

#include <algorithm>

#include <stdexcept>

namespace ltviqc {

MatrixBasis::MatrixBasis(std::vector<RdeSolution> functions)
    : functions_(std::move(functions)) {
  for (const auto& f : functions_) {
    if (!f.converged()) throw std::invalid_argument("MatrixBasis: RDE solution escaped");
    double peak = 0.0;
    for (const auto& Y : f.Y()) peak = std::max(peak, Y.norm());
    scales_.push_back(peak > 0.0 ? 1.0 / peak : 1.0);
  }
}

StorageValue MatrixBasis::eval(std::size_t k, double t) const {
  StorageValue v = functions_[k].eval(t);
  v.P *= scales_[k];
  v.Pdot *= scales_[k];
  return v;
}

StorageValue eval_storage(const SplineBasis& basis, const MatrixBasis& mbasis,
                          const StorageParam& params, double t) {
  if (params.X.size() != basis.size() ||
      params.x.size() != static_cast<Eigen::Index>(mbasis.size())) {
    throw std::invalid_argument("eval_storage: parameter count does not match the bases");
  }
  Eigen::VectorXd h, hd;
  basis.eval(t, h, hd);
  const Eigen::Index n = params.X.empty() ? 0 : params.X.front().rows();
  StorageValue out{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
  for (std::size_t j = 0; j < params.X.size(); ++j) {
    out.P += h(j) * params.X[j];
    out.Pdot += hd(j) * params.X[j];
  }
  for (std::size_t k = 0; k < mbasis.size(); ++k) {
    const StorageValue H = mbasis.eval(k, t);
    out.P += params.x(k) * H.P;
    out.Pdot += params.x(k) * H.Pdot;
  }
  return out;
}

StorageFn storage_fn(const SplineBasis& basis, const MatrixBasis& mbasis,
                     const StorageParam& params) {
  return [basis, mbasis, params](double t) { return eval_storage(basis, mbasis, params, t); };
}

}  // namespace ltviqc
