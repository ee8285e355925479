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

#include "ltviqc/iqc/filter.hpp"
#include "ltviqc/ltv/ltv_system.hpp"
#include "ltviqc/ltv/signal.hpp"

namespace ltviqc {

/// Series connection of the plant's (w, d) -> (v, e) channels with the filter.
/// State x = [x_G; x_psi], input [w; d], outputs z = C1 x + D1 [w; d] and
/// e = C2 x + D2 [w; d].
struct ExtendedSystem {
  MatrixSignal A, B, C1, D1, C2, D2;
  int nG = 0, n_psi = 0, nw = 0, nd = 0;

  int n() const { return nG + n_psi; }
  int n_in() const { return nw + nd; }
  int nz() const { return static_cast<int>(C1.rows()); }
  int ne() const { return static_cast<int>(C2.rows()); }
  double horizon() const { return A.horizon(); }
  const TimeGrid& grid() const { return A.grid(); }
};

/// Assembles the six extended matrices on G's grid.
ExtendedSystem extend_system(const PartitionedLtvSystem& G, const IqcFilter& psi);

}  // namespace ltviqc
