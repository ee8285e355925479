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

#include <cmath>

#include <Eigen/Dense>

#include "ltviqc/dlmi/conic_program.hpp"
#include "ltviqc/dlmi/interior_point.hpp"
#include "ltviqc/dlmi/spline_basis.hpp"
#include "ltviqc/dlmi/storage.hpp"
#include "ltviqc/iqc/extended_system.hpp"
#include "ltviqc/iqc/multiplier.hpp"
#include "ltviqc/riccati/gain.hpp"

namespace ltviqc {

/// Where each group of decision variables lives in the program.
struct SdpLayout {
  int gamma2 = 0;
  int mult_start = 0, n_mult = 0;
  int spline_start = 0, n_knots = 0, n_sym = 0;  // X_j entry p at spline_start + j n_sym + p
  int mbasis_start = 0, n_mbasis = 0;
};

struct RobustSdp {
  ConicProgram program;
  SdpLayout layout;
  double eps = 0.0;
  int n = 0;  // storage dimension
  std::size_t num_dlmi = 0;
};

/// Builds
///   min gamma^2  s.t.  DLMI(t_k) + eps I <= 0 for every t_k,
///                      F - P(T) + eps I <= 0,
///                      multiplier blocks feasible,
/// with P(t) = sum_j h_j(t) X_j + sum_k H_k(t) x_k and the DLMI
///   [Pdot + A'P + PA, PB; B'P, 0] + [Q S; S' R - gamma^2 G] + [C1 D1]' M [C1 D1].
/// eps <= 0 selects 1e-6 (1 + max_k |constant block at t_k|_F).
RobustSdp assemble_robust_sdp(const ExtendedSystem& ext, GainKind kind,
                              const MultiplierParam& mparam, const SplineBasis& basis,
                              const MatrixBasis& mbasis, const TimeGrid& t_dlmi,
                              double eps = 0.0);

/// The program for a system without uncertainty channels; `ext` and
/// `mparam` are the trivial extended system and multiplier.
struct NominalSdp {
  ExtendedSystem ext;
  MultiplierParam mparam;
  RobustSdp sdp;
};

NominalSdp assemble_nominal_sdp(const LtvSystem& sys, GainKind kind, const SplineBasis& basis,
                                const TimeGrid& t_dlmi, double eps = 0.0);

/// Adds P(0) - alpha1 diag(E0, 0) <= 0.
void constrain_initial_set(RobustSdp& sdp, const Eigen::MatrixXd& E0, double alpha1);

/// Turns the program into a feasibility problem at a fixed gamma.
void fix_gamma(RobustSdp& sdp, double gamma);

struct SdpOutcome {
  SdpStatus status = SdpStatus::SolverFailure;
  double gamma2 = 0.0;
  Eigen::VectorXd multiplier;
  StorageParam storage;
  SolverStats stats;

  double gamma() const { return std::sqrt(std::max(0.0, gamma2)); }
};

SdpOutcome solve_robust_sdp(const RobustSdp& sdp, const ConicSolver& solver);
SdpOutcome solve_robust_sdp(const RobustSdp& sdp);

/// The DLMI matrix at t for given storage, multiplier values and gamma^2
/// (no eps margin). Its largest eigenvalue is the DLMI margin.
Eigen::MatrixXd dlmi_block(const ExtendedSystem& ext, GainKind kind,
                           const MultiplierParam& mparam, const Eigen::VectorXd& mult,
                           const StorageValue& P, double gamma2, double t);

}  // namespace ltviqc
