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

#include "ltviqc/iqc/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ltviqc/common/symmetric.hpp"

namespace ltviqc {

MultiplierParam::MultiplierParam(int n_z, std::vector<DecisionBlock> blocks)
    : n_z_(n_z), blocks_(std::move(blocks)) {
  if (n_z < 0) throw std::invalid_argument("MultiplierParam: negative n_z");
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const DecisionBlock& blk = blocks_[b];
    if (blk.size < 1) throw std::invalid_argument("MultiplierParam: empty block");
    if (blk.kind == BlockKind::NonnegScalarSignal && (blk.size != 1 || !blk.grid)) {
      throw std::invalid_argument("MultiplierParam: scalar signal block needs size 1 and a grid");
    }
    for (const Placement& p : blk.placements) {
      if (p.offset < 0 || p.offset + blk.size > n_z) {
        throw std::invalid_argument("MultiplierParam: placement outside M");
      }
    }
    block_start_.push_back(variables_.size());
    auto place = [&](const Eigen::MatrixXd& local) {
      Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n_z, n_z);
      for (const Placement& p : blk.placements) {
        E.block(p.offset, p.offset, blk.size, blk.size) += p.sign * local;
      }
      return E;
    };
    if (blk.kind == BlockKind::NonnegScalarSignal) {
      const Eigen::MatrixXd one = Eigen::MatrixXd::Ones(1, 1);
      for (std::size_t k = 0; k < blk.grid->size(); ++k) {
        variables_.push_back({place(one), b, static_cast<int>(k)});
      }
    } else {
      for (int i = 0; i < blk.size; ++i) {
        for (int j = i; j < blk.size; ++j) {
          Eigen::MatrixXd local = Eigen::MatrixXd::Zero(blk.size, blk.size);
          local(i, j) = 1.0;
          local(j, i) = 1.0;
          variables_.push_back({place(local), b, -1});
        }
      }
    }
  }
}

MultiplierParam MultiplierParam::Combine(const std::vector<MultiplierParam>& parts) {
  int nz = 0;
  std::vector<DecisionBlock> blocks;
  for (const auto& part : parts) {
    for (DecisionBlock blk : part.blocks()) {
      for (auto& p : blk.placements) p.offset += nz;
      blocks.push_back(std::move(blk));
    }
    nz += part.n_z();
  }
  return MultiplierParam(nz, std::move(blocks));
}

double MultiplierParam::weight(const MultiplierVariable& var, double t) const {
  if (var.sample < 0) return 1.0;
  const TimeGrid& g = *blocks_[var.block].grid;
  const std::size_t k = static_cast<std::size_t>(var.sample);
  if (k > 0 && t >= g[k - 1] && t <= g[k]) return (t - g[k - 1]) / (g[k] - g[k - 1]);
  if (k + 1 < g.size() && t >= g[k] && t <= g[k + 1]) {
    return (g[k + 1] - t) / (g[k + 1] - g[k]);
  }
  return 0.0;
}

Eigen::VectorXd MultiplierParam::pack(const std::vector<Eigen::MatrixXd>& block_values) const {
  if (block_values.size() != blocks_.size()) {
    throw std::invalid_argument("MultiplierParam::pack: wrong number of blocks");
  }
  Eigen::VectorXd out(num_variables());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const DecisionBlock& blk = blocks_[b];
    const Eigen::MatrixXd& X = block_values[b];
    std::size_t k = block_start_[b];
    if (blk.kind == BlockKind::NonnegScalarSignal) {
      if (X.size() != static_cast<Eigen::Index>(blk.grid->size())) {
        throw std::invalid_argument("MultiplierParam::pack: signal sample count");
      }
      for (Eigen::Index i = 0; i < X.size(); ++i) out(k++) = X(i);
    } else {
      if (X.rows() != blk.size || X.cols() != blk.size) {
        throw std::invalid_argument("MultiplierParam::pack: block size");
      }
      for (int i = 0; i < blk.size; ++i)
        for (int j = i; j < blk.size; ++j) out(k++) = 0.5 * (X(i, j) + X(j, i));
    }
  }
  return out;
}

std::vector<Eigen::MatrixXd> MultiplierParam::unpack(const Eigen::VectorXd& values) const {
  if (values.size() != static_cast<Eigen::Index>(num_variables())) {
    throw std::invalid_argument("MultiplierParam::unpack: wrong number of values");
  }
  std::vector<Eigen::MatrixXd> out;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const DecisionBlock& blk = blocks_[b];
    const std::size_t k = block_start_[b];
    if (blk.kind == BlockKind::NonnegScalarSignal) {
      out.emplace_back(values.segment(k, blk.grid->size()));
    } else {
      out.push_back(unpack_upper(values.segment(k, packed_size(blk.size)), blk.size));
    }
  }
  return out;
}

MatrixSignal MultiplierParam::assemble(const Eigen::VectorXd& values, double horizon) const {
  if (values.size() != static_cast<Eigen::Index>(num_variables())) {
    throw std::invalid_argument("MultiplierParam::assemble: wrong number of values");
  }
  TimeGrid grid({0.0, horizon});
  for (const auto& blk : blocks_) {
    if (!blk.grid) continue;
    if (std::abs(blk.grid->horizon() - horizon) > 1e-12 * horizon) {
      throw std::invalid_argument("MultiplierParam::assemble: signal horizon differs");
    }
    grid = TimeGrid::Merge(grid, *blk.grid);
  }
  std::vector<Eigen::MatrixXd> samples;
  for (double t : grid.points()) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n_z_, n_z_);
    for (std::size_t v = 0; v < variables_.size(); ++v) {
      const double w = weight(variables_[v], t);
      if (w != 0.0) M += values(v) * w * variables_[v].E;
    }
    samples.push_back(std::move(M));
  }
  return MatrixSignal(grid, std::move(samples));
}

bool MultiplierParam::feasible(const Eigen::VectorXd& values, double tol) const {
  const auto blocks = unpack(values);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    switch (blocks_[b].kind) {
      case BlockKind::ConstantPsd:
        if (min_eigenvalue(blocks[b]) < -tol) return false;
        break;
      case BlockKind::NonnegScalarSignal:
        if (blocks[b].minCoeff() < -tol) return false;
        break;
      case BlockKind::ConstantSymmetric:
        break;
    }
  }
  return true;
}

Eigen::VectorXd MultiplierParam::project(const Eigen::VectorXd& values) const {
  auto blocks = unpack(values);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].kind == BlockKind::ConstantPsd) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blocks[b]);
      const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
      blocks[b] = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
    } else if (blocks_[b].kind == BlockKind::NonnegScalarSignal) {
      blocks[b] = blocks[b].cwiseMax(0.0);
    }
  }
  return pack(blocks);
}

IqcSpec make_unit_norm_lti_iqc(int v, double p) {
  if (v < 0) throw std::invalid_argument("make_unit_norm_lti_iqc: v must be >= 0");
  if (!(p > 0.0)) throw std::invalid_argument("make_unit_norm_lti_iqc: p must be > 0");
  // Psi11: chain of v first-order lags 1/(s+p), output [u; x_1; ...; x_v].
  Eigen::MatrixXd A = -p * Eigen::MatrixXd::Identity(v, v);
  for (int i = 1; i < v; ++i) A(i, i - 1) = 1.0;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(v, 1);
  if (v > 0) B(0, 0) = 1.0;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(v + 1, v);
  C.bottomRows(v) = Eigen::MatrixXd::Identity(v, v);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(v + 1, 1);
  D(0, 0) = 1.0;

  const int m = v + 1;
  Eigen::MatrixXd Ap = Eigen::MatrixXd::Zero(2 * v, 2 * v);
  Ap.topLeftCorner(v, v) = A;
  Ap.bottomRightCorner(v, v) = A;
  Eigen::MatrixXd B1 = Eigen::MatrixXd::Zero(2 * v, 1), B2 = Eigen::MatrixXd::Zero(2 * v, 1);
  B1.topRows(v) = B;
  B2.bottomRows(v) = B;
  Eigen::MatrixXd Cp = Eigen::MatrixXd::Zero(2 * m, 2 * v);
  Cp.topLeftCorner(m, v) = C;
  Cp.bottomRightCorner(m, v) = C;
  Eigen::MatrixXd D1 = Eigen::MatrixXd::Zero(2 * m, 1), D2 = Eigen::MatrixXd::Zero(2 * m, 1);
  D1.topRows(m) = D;
  D2.bottomRows(m) = D;

  DecisionBlock blk{BlockKind::ConstantPsd, m, std::nullopt, {{0, 1.0}, {m, -1.0}}};
  return {IqcFilter(Ap, B1, B2, Cp, D1, D2), MultiplierParam(2 * m, {blk})};
}

IqcSpec make_tv_real_iqc(const TimeGrid& grid) {
  const Eigen::MatrixXd I2 = Eigen::MatrixXd::Identity(2, 2);
  IqcFilter psi(Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, 1), Eigen::MatrixXd(0, 1),
                Eigen::MatrixXd(2, 0), I2.col(0), I2.col(1));
  DecisionBlock blk{BlockKind::NonnegScalarSignal, 1, grid, {{0, 1.0}, {1, -1.0}}};
  return {psi, MultiplierParam(2, {blk})};
}

IqcSpec conic_combine(const std::vector<IqcSpec>& specs) {
  if (specs.empty()) throw std::invalid_argument("conic_combine: no specs");
  std::vector<IqcFilter> filters;
  std::vector<MultiplierParam> params;
  for (const auto& s : specs) {
    filters.push_back(s.filter);
    params.push_back(s.param);
  }
  return {IqcFilter::Stack(filters), MultiplierParam::Combine(params)};
}

}  // namespace ltviqc
