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

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "ltviqc/ltv/ltv_system.hpp"

namespace ltviqc {

/// xdot = A x + B u, y = C x + D u.
struct LtiSystem {
  Eigen::MatrixXd A, B, C, D;

  int n() const { return static_cast<int>(A.rows()); }
  int nu() const { return static_cast<int>(D.cols()); }
  int ny() const { return static_cast<int>(D.rows()); }

  static LtiSystem Static(const Eigen::MatrixXd& D);
  /// Controllable canonical realization of num(s)/den(s), coefficients in
  /// descending powers, deg num <= deg den.
  static LtiSystem FromTransferFunction(const Eigen::VectorXd& num, const Eigen::VectorXd& den);

  Eigen::MatrixXcd transfer(std::complex<double> s) const;
  bool hurwitz(double margin = 0.0) const;
  LtiSystem scaled(double k) const;  // output scaled by k
  LtvSystem as_ltv(double horizon) const;
};

/// H-infinity norm of a stable system by bisection on the imaginary-axis
/// eigenvalues of the Hamiltonian, to relative accuracy rel_tol.
double hinf_norm(const LtiSystem& sys, double rel_tol = 1e-9);

/// Random stable SISO system with `states` states: real poles or complex
/// pairs with real parts in [pole_min, pole_max] (both negative), random
/// zeros and feedthrough.
LtiSystem random_stable_siso(int states, std::mt19937_64& rng, double pole_min = -10.0,
                             double pole_max = -0.1);

/// Closes w = Delta v around the uncertainty channel of G. The result has
/// state [x_G; x_Delta], input d and output e, sampled on the grid of G.
LtvSystem close_uncertainty_loop(const PartitionedLtvSystem& G, const LtiSystem& delta);

}  // namespace ltviqc
