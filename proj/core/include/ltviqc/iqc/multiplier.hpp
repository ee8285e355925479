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

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ltviqc/iqc/filter.hpp"
#include "ltviqc/ltv/signal.hpp"
#include "ltviqc/ltv/time_grid.hpp"

namespace ltviqc {

enum class BlockKind { ConstantPsd, ConstantSymmetric, NonnegScalarSignal };

/// Copy of a decision block inside M at rows/cols [offset, offset + size),
/// multiplied by sign.
struct Placement {
  int offset;
  double sign;
};

struct DecisionBlock {
  BlockKind kind;
  int size;                       // 1 for scalar signals
  std::optional<TimeGrid> grid;   // sample times of a scalar signal
  std::vector<Placement> placements;
};

/// One scalar decision variable: its contribution to M(t) is
/// value * weight(t) * E.
struct MultiplierVariable {
  Eigen::MatrixXd E;
  std::size_t block;
  int sample = -1;  // index into the block grid, -1 for constant blocks
};

/// Convex set of multipliers M(t), described by decision blocks and how they
/// are placed into the n_z x n_z matrix.
class MultiplierParam {
 public:
  MultiplierParam(int n_z, std::vector<DecisionBlock> blocks);

  /// Block-diagonal union, with block offsets shifted per part.
  static MultiplierParam Combine(const std::vector<MultiplierParam>& parts);

  int n_z() const { return n_z_; }
  const std::vector<DecisionBlock>& blocks() const { return blocks_; }
  const std::vector<MultiplierVariable>& variables() const { return variables_; }
  std::size_t num_variables() const { return variables_.size(); }
  /// Index of the first scalar variable of each block.
  std::size_t block_start(std::size_t b) const { return block_start_[b]; }

  /// Time weight of variable v: 1 for constant blocks, the piecewise-linear
  /// hat function of its sample for signal blocks.
  double weight(const MultiplierVariable& var, double t) const;

  /// Flattens per-block values: size x size symmetric matrices for constant
  /// blocks, a column of samples for signal blocks.
  Eigen::VectorXd pack(const std::vector<Eigen::MatrixXd>& block_values) const;
  std::vector<Eigen::MatrixXd> unpack(const Eigen::VectorXd& values) const;

  /// M(t) on [0, horizon]: sampled on the union of the signal-block grids
  /// (or {0, horizon} when all blocks are constant).
  MatrixSignal assemble(const Eigen::VectorXd& values, double horizon) const;

  /// PSD blocks have lambda_min >= -tol, signal samples are >= -tol.
  bool feasible(const Eigen::VectorXd& values, double tol = 1e-9) const;

  /// Nearest feasible values: negative eigenvalues of PSD blocks and negative
  /// signal samples are set to zero. Solver output is projected before use so
  /// that round-off never yields an invalid multiplier.
  Eigen::VectorXd project(const Eigen::VectorXd& values) const;

 private:
  int n_z_;
  std::vector<DecisionBlock> blocks_;
  std::vector<MultiplierVariable> variables_;
  std::vector<std::size_t> block_start_;
};

struct IqcSpec {
  IqcFilter filter;
  MultiplierParam param;
};

/// Filter plus a chosen multiplier.
struct IqcInstance {
  IqcFilter filter;
  MatrixSignal M;
};

/// Psi = diag(Psi11, Psi11) with Psi11 = [1, 1/(s+p), ..., 1/(s+p)^v]',
/// M = diag(M11, -M11), M11 >= 0. Covers LTI Delta with ||Delta||_inf <= 1.
IqcSpec make_unit_norm_lti_iqc(int v, double p);

/// Psi = I_2, M(t) = diag(m(t), -m(t)), m(t) >= 0 sampled on `grid`.
/// Covers time-varying real parameters |delta(t)| <= 1.
IqcSpec make_tv_real_iqc(const TimeGrid& grid);

/// Conic combination: stacked filters and block-diagonal multipliers.
IqcSpec conic_combine(const std::vector<IqcSpec>& specs);

}  // namespace ltviqc
