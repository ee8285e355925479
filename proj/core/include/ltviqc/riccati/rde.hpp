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

#include <functional>
#include <limits>
#include <ostream>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ltviqc/ltv/ode.hpp"
#include "ltviqc/ltv/quadratic_cost.hpp"
#include "ltviqc/ltv/signal.hpp"

namespace ltviqc {

enum class RdeStatus { ConvergedOnFullHorizon, Escaped };

/// A symmetric storage matrix and its time derivative.
struct StorageValue {
  Eigen::MatrixXd P;
  Eigen::MatrixXd Pdot;
};

using StorageFn = std::function<StorageValue(double t)>;

struct RdeOptions {
  OdeOptions ode;
  /// Escape when |Y|_F > escape_factor * (1 + |F|_F).
  double escape_factor = 1e9;
  /// R(t) must satisfy lambda_max(R) < r_threshold.
  double r_threshold = -1e-10;
};

/// Backward solution of
///   Ydot + A'Y + YA + Q - (YB + S) R^{-1} (YB + S)' = 0,  Y(T) = F
/// on the solver's accepted steps (ascending time). Ydot is the right-hand
/// side evaluated at each stored Y, so cubic Hermite interpolation between
/// samples is consistent with the ODE.
class RdeSolution {
 public:
  RdeSolution() = default;
  RdeSolution(RdeStatus status, double horizon, double escape_time,
              std::vector<double> times, std::vector<Eigen::MatrixXd> Y,
              std::vector<Eigen::MatrixXd> Ydot);

  RdeStatus status() const { return status_; }
  bool converged() const { return status_ == RdeStatus::ConvergedOnFullHorizon; }
  /// First time (scanning backward from T) the escape criterion triggered;
  /// NaN when converged.
  double escape_time() const { return escape_time_; }
  double horizon() const { return horizon_; }

  const std::vector<double>& times() const { return times_; }
  const std::vector<Eigen::MatrixXd>& Y() const { return Y_; }
  const std::vector<Eigen::MatrixXd>& Ydot() const { return Ydot_; }

  /// Cubic Hermite interpolation of Y and its derivative.
  StorageValue eval(double t) const;
  Eigen::MatrixXd operator()(double t) const { return eval(t).P; }

  /// Dense solver grid; only valid when converged.
  TimeGrid grid() const;

  /// CSV with columns t, then the upper triangle of Y row by row.
  void write_csv(std::ostream& os) const;

 private:
  RdeStatus status_ = RdeStatus::Escaped;
  double horizon_ = 0.0;
  double escape_time_ = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> times_;
  std::vector<Eigen::MatrixXd> Y_;
  std::vector<Eigen::MatrixXd> Ydot_;
};

/// Throws std::invalid_argument if R(t) is not negative definite on the cost
/// grid or becomes singular at a solver evaluation time.
RdeSolution integrate_rde_backward(const MatrixSignal& A, const MatrixSignal& B,
                                   const QuadraticCost& cost,
                                   const RdeOptions& options = {});

/// Riccati residual Pdot + A'P + PA + Q - (PB + S) R^{-1} (PB + S)'.
Eigen::MatrixXd riccati_residual(const StorageValue& P, const Eigen::MatrixXd& A,
                                 const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                                 const Eigen::MatrixXd& S, const Eigen::MatrixXd& R);

/// Max over the check times of lambda_max of the Riccati residual. A value
/// at or below -eps certifies the strict inequality on those times.
double rdi_residual(const StorageFn& P, const QuadraticCost& cost,
                    const MatrixSignal& A, const MatrixSignal& B,
                    std::span<const double> check_times);
double rdi_residual(const StorageFn& P, const QuadraticCost& cost,
                    const MatrixSignal& A, const MatrixSignal& B,
                    const TimeGrid& check_grid);

/// Storage function view of an RDE solution.
StorageFn as_storage(const RdeSolution& sol);

}  // namespace ltviqc
