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

#include "ltviqc/iqc/extended_system.hpp"

#include <stdexcept>

namespace ltviqc {

ExtendedSystem extend_system(const PartitionedLtvSystem& G, const IqcFilter& psi) {
  if (G.nv() != psi.n_v() || G.nw() != psi.n_w()) {
    throw std::invalid_argument("extend_system: uncertainty channel dimensions differ");
  }
  const int nG = G.nG(), np = psi.n_psi(), nw = G.nw(), nd = G.nd();
  const int n = nG + np, nz = psi.n_z(), ne = G.ne();
  const TimeGrid grid = G.grid();
  std::vector<Eigen::MatrixXd> A, B, C1, D1, C2, D2;
  for (double t : grid.points()) {
    const Eigen::MatrixXd AG = G.A(t), B1 = G.B1(t), B2 = G.B2(t), CG1 = G.C1(t),
                          D11 = G.D11(t), D12 = G.D12(t), CG2 = G.C2(t), D21 = G.D21(t),
                          D22 = G.D22(t);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    a.topLeftCorner(nG, nG) = AG;
    a.bottomLeftCorner(np, nG) = psi.B1() * CG1;
    a.bottomRightCorner(np, np) = psi.A();
    Eigen::MatrixXd b(n, nw + nd);
    b.topLeftCorner(nG, nw) = B1;
    b.topRightCorner(nG, nd) = B2;
    b.bottomLeftCorner(np, nw) = psi.B1() * D11 + psi.B2();
    b.bottomRightCorner(np, nd) = psi.B1() * D12;
    Eigen::MatrixXd c1(nz, n);
    c1 << psi.D1() * CG1, psi.C();
    Eigen::MatrixXd d1(nz, nw + nd);
    d1 << psi.D1() * D11 + psi.D2(), psi.D1() * D12;
    Eigen::MatrixXd c2 = Eigen::MatrixXd::Zero(ne, n);
    c2.leftCols(nG) = CG2;
    Eigen::MatrixXd d2(ne, nw + nd);
    d2 << D21, D22;
    A.push_back(std::move(a));
    B.push_back(std::move(b));
    C1.push_back(std::move(c1));
    D1.push_back(std::move(d1));
    C2.push_back(std::move(c2));
    D2.push_back(std::move(d2));
  }
  return {MatrixSignal(grid, std::move(A)),  MatrixSignal(grid, std::move(B)),
          MatrixSignal(grid, std::move(C1)), MatrixSignal(grid, std::move(D1)),
          MatrixSignal(grid, std::move(C2)), MatrixSignal(grid, std::move(D2)),
          nG, np, nw, nd};
}

}  // namespace ltviqc
