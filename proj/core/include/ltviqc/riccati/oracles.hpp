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

#include <Eigen/Dense>

#include "ltviqc/ltv/ltv_system.hpp"
#include "ltviqc/ltv/ode.hpp"

namespace ltviqc {

/// sqrt(lambda_max(C(T) W(T) C(T)')) with Wdot = AW + WA' + BB', W(0) = 0.
/// Exact L2-to-Euclidean gain; requires D(T) = 0.
double gramian_l2e_oracle(const LtvSystem& sys, const OdeOptions& options = {});

/// Controllability Gramian W(T).
Eigen::MatrixXd reachability_gramian(const LtvSystem& sys, const OdeOptions& options = {});

/// Zero-order-hold lifting of the input/output map on N uniform steps.
/// Inputs are piecewise constant, outputs sampled at step midpoints, so the
/// largest singular value of the lifted operator approximates the induced L2
/// gain and converges as N grows. Computed matrix-free with Lanczos.
double lifted_l2_gain_oracle(const LtvSystem& sys, int N);

/// The same operator as an explicit (N n_e) x (N n_d) matrix, for small N.
Eigen::MatrixXd lifted_operator_matrix(const LtvSystem& sys, int N);

/// Lifted estimate of the L2-to-Euclidean gain on N steps (bracketing only).
double lifted_l2e_estimate(const LtvSystem& sys, int N);

}  // namespace ltviqc
