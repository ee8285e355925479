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
#include <vector>

#include <Eigen/Dense>

#include "ltviqc/ltv/ode.hpp"
#include "ltviqc/ltv/quadratic_cost.hpp"
#include "ltviqc/ltv/signal.hpp"

namespace ltviqc {

/// H(t) = [A 0; -Q -A'] + [-B; S] R^{-1} [S' B'].
/// Evaluated from (A, B, Q, S, R) at each time, so that it is consistent
/// with the Riccati equation for the same data.
class HamiltonianSystem {
 public:
  HamiltonianSystem(MatrixSignal A, MatrixSignal B, QuadraticCost cost);

  int n() const { return static_cast<int>(A_.rows()); }
  double horizon() const { return cost_.horizon(); }
  const TimeGrid& grid() const { return grid_; }
  const QuadraticCost& cost() const { return cost_; }
  const MatrixSignal& A() const { return A_; }
  const MatrixSignal& B() const { return B_; }

  Eigen::MatrixXd operator()(double t) const;
  /// H(t) using, for every ingredient, the segment that contains t_mid.
  Eigen::MatrixXd eval_near(double t_mid, double t) const;
  /// H sampled on the union grid.
  MatrixSignal signal() const;

 private:
  MatrixSignal A_, B_;
  QuadraticCost cost_;
  TimeGrid grid_;
};

HamiltonianSystem build_hamiltonian(const MatrixSignal& A, const MatrixSignal& B,
                                    const QuadraticCost& cost);

/// [X1(t); X2(t)] = Phi(t, T) [I; F], stored on the accepted backward steps
/// (ascending time) with Hermite interpolation in between.
class TransitionBlocks {
 public:
  TransitionBlocks(std::vector<double> times, std::vector<Eigen::MatrixXd> X,
                   std::vector<Eigen::MatrixXd> Xdot, Eigen::MatrixXd F);

  int n() const { return static_cast<int>(F_.rows()); }
  const std::vector<double>& times() const { return times_; }
  const Eigen::MatrixXd& F() const { return F_; }
  /// Stacked [X1; X2] at t.
  Eigen::MatrixXd eval(double t) const;
  Eigen::MatrixXd X1(double t) const { return eval(t).topRows(n()); }
  Eigen::MatrixXd X2(double t) const { return eval(t).bottomRows(n()); }
  /// Samples at stored times.
  const std::vector<Eigen::MatrixXd>& samples() const { return X_; }

 private:
  std::vector<double> times_;
  std::vector<Eigen::MatrixXd> X_, Xdot_;
  Eigen::MatrixXd F_;
};

TransitionBlocks transition_blocks(const HamiltonianSystem& H, const Eigen::MatrixXd& F,
                                   const OdeOptions& options = {});

struct ConjugatePoint {
  double t0;
  Eigen::VectorXd v;  // unit vector with X1(t0) v = 0
};

/// Scans backward from T for the first (latest) time where X1 becomes
/// singular: det X1 changes sign, or sigma_min / sigma_max < rel_threshold.
std::optional<ConjugatePoint> conjugate_point_scan(const TransitionBlocks& blocks,
                                                   double rel_threshold = 1e-8);

}  // namespace ltviqc
