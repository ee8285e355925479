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

#include "ltviqc/ltv/ltv_system.hpp"

#include <stdexcept>
#include <string>

namespace ltviqc {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_same_horizon(const MatrixSignal& a, const MatrixSignal& b,
                          const char* name) {
  const double ta = a.horizon();
  const double tb = b.horizon();
  require(std::abs(ta - tb) <= 1e-12 * std::max(ta, tb),
          std::string("horizon of ") + name + " differs from A");
}

TimeGrid merge_all(std::initializer_list<const MatrixSignal*> signals) {
  auto it = signals.begin();
  TimeGrid g = (*it)->grid();
  for (++it; it != signals.end(); ++it) {
    if (!((*it)->grid() == g)) g = TimeGrid::Merge(g, (*it)->grid());
  }
  return g;
}

MatrixSignal hstack(const MatrixSignal& a, const MatrixSignal& b) {
  const TimeGrid g = TimeGrid::Merge(a.grid(), b.grid());
  return sample_signal(g, [&](double t) {
    Eigen::MatrixXd out(a.rows(), a.cols() + b.cols());
    out << a(t), b(t);
    return out;
  });
}

MatrixSignal vstack(const MatrixSignal& a, const MatrixSignal& b) {
  const TimeGrid g = TimeGrid::Merge(a.grid(), b.grid());
  return sample_signal(g, [&](double t) {
    Eigen::MatrixXd out(a.rows() + b.rows(), a.cols());
    out << a(t), b(t);
    return out;
  });
}

MatrixSignal block(const MatrixSignal& s, int r0, int c0, int nr, int nc) {
  std::vector<Eigen::MatrixXd> samples;
  samples.reserve(s.samples().size());
  for (const auto& m : s.samples()) samples.emplace_back(m.block(r0, c0, nr, nc));
  return MatrixSignal(s.grid(), std::move(samples), s.interp());
}

}  // namespace

LtvSystem::LtvSystem(MatrixSignal A, MatrixSignal B, MatrixSignal C, MatrixSignal D)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)) {
  require(A_.rows() == A_.cols(), "LtvSystem: A must be square");
  require(B_.rows() == A_.rows(), "LtvSystem: B must have n_x rows");
  require(C_.cols() == A_.rows(), "LtvSystem: C must have n_x columns");
  require(D_.rows() == C_.rows(), "LtvSystem: D must have n_e rows");
  require(D_.cols() == B_.cols(), "LtvSystem: D must have n_d columns");
  require_same_horizon(A_, B_, "B");
  require_same_horizon(A_, C_, "C");
  require_same_horizon(A_, D_, "D");
}

LtvSystem LtvSystem::Constant(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                              const Eigen::MatrixXd& C, const Eigen::MatrixXd& D,
                              double horizon) {
  return LtvSystem(MatrixSignal::Constant(A, horizon), MatrixSignal::Constant(B, horizon),
                   MatrixSignal::Constant(C, horizon), MatrixSignal::Constant(D, horizon));
}

TimeGrid LtvSystem::grid() const { return merge_all({&A_, &B_, &C_, &D_}); }

LtvSystem LtvSystem::with_horizon(double horizon) const {
  return LtvSystem(ltviqc::with_horizon(A_, horizon), ltviqc::with_horizon(B_, horizon),
                   ltviqc::with_horizon(C_, horizon), ltviqc::with_horizon(D_, horizon));
}

PartitionedLtvSystem::PartitionedLtvSystem(MatrixSignal A_, MatrixSignal B1_,
                                           MatrixSignal B2_, MatrixSignal C1_,
                                           MatrixSignal D11_, MatrixSignal D12_,
                                           MatrixSignal C2_, MatrixSignal D21_,
                                           MatrixSignal D22_)
    : A(std::move(A_)), B1(std::move(B1_)), B2(std::move(B2_)), C1(std::move(C1_)),
      D11(std::move(D11_)), D12(std::move(D12_)), C2(std::move(C2_)),
      D21(std::move(D21_)), D22(std::move(D22_)) {
  const auto n = A.rows();
  require(A.rows() == A.cols(), "PartitionedLtvSystem: A_G must be square");
  require(B1.rows() == n && B2.rows() == n, "PartitionedLtvSystem: B rows");
  require(C1.cols() == n && C2.cols() == n, "PartitionedLtvSystem: C columns");
  require(D11.rows() == C1.rows() && D12.rows() == C1.rows(),
          "PartitionedLtvSystem: v-row partition");
  require(D21.rows() == C2.rows() && D22.rows() == C2.rows(),
          "PartitionedLtvSystem: e-row partition");
  require(D11.cols() == B1.cols() && D21.cols() == B1.cols(),
          "PartitionedLtvSystem: w-column partition");
  require(D12.cols() == B2.cols() && D22.cols() == B2.cols(),
          "PartitionedLtvSystem: d-column partition");
  for (const auto* s : {&B1, &B2, &C1, &D11, &D12, &C2, &D21, &D22}) {
    require_same_horizon(A, *s, "partitioned matrix");
  }
}

PartitionedLtvSystem PartitionedLtvSystem::FromPartition(const LtvSystem& sys, int n_w,
                                                         int n_v) {
  require(n_w >= 0 && n_w <= sys.nd(), "FromPartition: n_w out of range");
  require(n_v >= 0 && n_v <= sys.ne(), "FromPartition: n_v out of range");
  const int nx = sys.nx();
  const int nd = sys.nd() - n_w;
  const int ne = sys.ne() - n_v;
  return PartitionedLtvSystem(sys.A(), block(sys.B(), 0, 0, nx, n_w),
                              block(sys.B(), 0, n_w, nx, nd),
                              block(sys.C(), 0, 0, n_v, nx),
                              block(sys.D(), 0, 0, n_v, n_w),
                              block(sys.D(), 0, n_w, n_v, nd),
                              block(sys.C(), n_v, 0, ne, nx),
                              block(sys.D(), n_v, 0, ne, n_w),
                              block(sys.D(), n_v, n_w, ne, nd));
}

TimeGrid PartitionedLtvSystem::grid() const {
  return merge_all({&A, &B1, &B2, &C1, &D11, &D12, &C2, &D21, &D22});
}

LtvSystem PartitionedLtvSystem::nominal() const { return LtvSystem(A, B2, C2, D22); }

LtvSystem PartitionedLtvSystem::combined() const {
  return LtvSystem(A, hstack(B1, B2), vstack(C1, C2),
                   vstack(hstack(D11, D12), hstack(D21, D22)));
}

PartitionedLtvSystem PartitionedLtvSystem::with_horizon(double horizon) const {
  auto h = [horizon](const MatrixSignal& s) { return ltviqc::with_horizon(s, horizon); };
  return PartitionedLtvSystem(h(A), h(B1), h(B2), h(C1), h(D11), h(D12), h(C2), h(D21),
                              h(D22));
}

}  // namespace ltviqc
