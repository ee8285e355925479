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

#include "ltviqc/dlmi/conic_program.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <stdexcept>

#include "ltviqc/common/symmetric.hpp"

namespace ltviqc {

int ConicProgram::add_variable(std::string name, double cost) {
  names_.push_back(std::move(name));
  cost_.push_back(cost);
  return num_vars() - 1;
}

Eigen::VectorXd ConicProgram::objective() const {
  return Eigen::Map<const Eigen::VectorXd>(cost_.data(), static_cast<Eigen::Index>(cost_.size()));
}

void ConicProgram::add_lmi(LmiBlock block) {
  const int s = block.size();
  if (block.F0.cols() != s) throw std::invalid_argument("add_lmi: F0 not square");
  std::vector<LmiTerm> kept;
  for (auto& term : block.terms) {
    if (term.var < 0 || term.var >= num_vars()) {
      throw std::invalid_argument("add_lmi: unknown variable index");
    }
    if (term.coeff.rows() != s || term.coeff.cols() != s) {
      throw std::invalid_argument("add_lmi: coefficient size differs from F0");
    }
    if (term.coeff.cwiseAbs().maxCoeff() > 1e-300) kept.push_back(std::move(term));
  }
  block.terms = std::move(kept);
  blocks_.push_back(std::move(block));
}

Eigen::MatrixXd ConicProgram::evaluate(std::size_t b, const Eigen::VectorXd& y) const {
  const LmiBlock& blk = blocks_.at(b);
  Eigen::MatrixXd out = blk.F0;
  for (const auto& term : blk.terms) out += y(term.var) * term.coeff;
  return out;
}

double ConicProgram::max_violation(const Eigen::VectorXd& y) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    worst = std::max(worst, max_eigenvalue(evaluate(b, y)));
  }
  return worst;
}

void ConicProgram::write_sdpa(std::ostream& os) const {
  std::vector<int> free_vars;
  std::vector<int> column(names_.size(), -1);
  for (int i = 0; i < num_vars(); ++i) {
    if (!fixed_.count(i)) {
      column[i] = static_cast<int>(free_vars.size()) + 1;
      free_vars.push_back(i);
    }
  }
  os << std::setprecision(17);
  os << "* ltviqc LMI program: " << free_vars.size() << " variables, " << blocks_.size()
     << " blocks\n";
  for (std::size_t k = 0; k < free_vars.size(); ++k) {
    os << "* y" << k + 1 << " = " << names_[free_vars[k]] << "\n";
  }
  os << free_vars.size() << "\n" << blocks_.size() << "\n";
  for (const auto& blk : blocks_) os << blk.size() << " ";
  os << "\n";
  for (int i : free_vars) os << cost_[i] << " ";
  os << "\n";
  auto emit = [&](int mat, int blk, const Eigen::MatrixXd& M, double scale) {
    for (Eigen::Index r = 0; r < M.rows(); ++r)
      for (Eigen::Index c = r; c < M.cols(); ++c)
        if (M(r, c) != 0.0) {
          os << mat << " " << blk << " " << r + 1 << " " << c + 1 << " " << scale * M(r, c)
             << "\n";
        }
  };
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    Eigen::MatrixXd G0 = blocks_[b].F0;
    for (const auto& term : blocks_[b].terms) {
      auto it = fixed_.find(term.var);
      if (it != fixed_.end()) G0 += it->second * term.coeff;
    }
    emit(0, static_cast<int>(b) + 1, G0, 1.0);
    for (const auto& term : blocks_[b].terms) {
      if (column[term.var] > 0) emit(column[term.var], static_cast<int>(b) + 1, term.coeff, -1.0);
    }
  }
}

}  // namespace ltviqc
