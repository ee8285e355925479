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

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ltviqc {

struct LmiTerm {
  int var;
  Eigen::MatrixXd coeff;  // symmetric
};

/// F0 + sum_i y_i F_i <= 0 (negative semidefinite).
struct LmiBlock {
  std::string name;
  Eigen::MatrixXd F0;
  std::vector<LmiTerm> terms;

  int size() const { return static_cast<int>(F0.rows()); }
};

/// min c'y subject to a list of LMI blocks, with optional fixed variables.
class ConicProgram {
 public:
  int add_variable(std::string name, double cost = 0.0);
  int num_vars() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& variable_names() const { return names_; }

  void set_cost(int var, double c) { cost_.at(static_cast<std::size_t>(var)) = c; }
  Eigen::VectorXd objective() const;

  /// Appends a block; coefficients smaller than 1e-300 in norm are dropped.
  void add_lmi(LmiBlock block);
  const std::vector<LmiBlock>& blocks() const { return blocks_; }

  void fix_variable(int var, double value) { fixed_[var] = value; }
  const std::map<int, double>& fixed() const { return fixed_; }

  /// F0 + sum_i y_i F_i for block b.
  Eigen::MatrixXd evaluate(std::size_t b, const Eigen::VectorXd& y) const;
  /// Largest eigenvalue over all blocks; <= 0 means feasible.
  double max_violation(const Eigen::VectorXd& y) const;

  /// SDPA sparse format: minimize c'y subject to sum_i y_i G_i - G0 >= 0 with
  /// G0 = F0 and G_i = -F_i. Fixed variables are folded into G0.
  void write_sdpa(std::ostream& os) const;

 private:
  std::vector<std::string> names_;
  std::vector<double> cost_;
  std::vector<LmiBlock> blocks_;
  std::map<int, double> fixed_;
};

}  // namespace ltviqc
