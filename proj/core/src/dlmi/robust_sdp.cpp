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

#include "ltviqc/dlmi/robust_sdp.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ltviqc/common/symmetric.hpp"
#include "ltviqc/ltv/quadratic_cost.hpp"

namespace ltviqc {
namespace {

using Eigen::MatrixXd;

struct PointData {
  MatrixXd A, B, L;  // L = [C1 D1]
  MatrixXd constant;  // [Q S; S' R] without gamma and multiplier
};

PointData point_data(const ExtendedSystem& ext, GainKind kind, double t) {
  PointData d;
  d.A = ext.A(t);
  d.B = ext.B(t);
  const int n = ext.n(), m = ext.n_in();
  d.L.resize(ext.nz(), n + m);
  d.L << ext.C1(t), ext.D1(t);
  d.constant = MatrixXd::Zero(n + m, n + m);
  if (kind == GainKind::InducedL2) {
    MatrixXd L2(ext.ne(), n + m);
    L2 << ext.C2(t), ext.D2(t);
    d.constant = L2.transpose() * L2;
  }
  return d;
}

// Contribution of a storage term with value P and derivative Pdot.
MatrixXd storage_block(const PointData& d, const MatrixXd& P, const MatrixXd& Pdot) {
  const auto n = P.rows(), m = d.B.cols();
  MatrixXd blk = MatrixXd::Zero(n + m, n + m);
  blk.topLeftCorner(n, n) = Pdot + d.A.transpose() * P + P * d.A;
  blk.topRightCorner(n, m) = P * d.B;
  blk.bottomLeftCorner(m, n) = d.B.transpose() * P;
  return symmetrize(blk);
}

MatrixXd gamma_block(const ExtendedSystem& ext) {
  const int n = ext.n(), m = ext.n_in();
  MatrixXd G = MatrixXd::Zero(n + m, n + m);
  G.bottomRightCorner(ext.nd, ext.nd) = -MatrixXd::Identity(ext.nd, ext.nd);
  return G;
}

MatrixXd sym_unit(int n, int a, int b) {
  MatrixXd E = MatrixXd::Zero(n, n);
  E(a, b) = 1.0;
  E(b, a) = 1.0;
  return E;
}

MatrixXd terminal_weight(const ExtendedSystem& ext, GainKind kind) {
  if (kind == GainKind::InducedL2) return MatrixXd::Zero(ext.n(), ext.n());
  const double T = ext.horizon();
  if (ext.D2(T).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument(
        "assemble_robust_sdp: L2-to-Euclidean gain requires zero terminal feedthrough");
  }
  const MatrixXd C2 = ext.C2(T);
  return C2.transpose() * C2;
}

// Coefficients of P(t) in the storage variables, as (var, matrix) pairs.
std::vector<LmiTerm> storage_terms_value(const RobustSdp& sdp, const SplineBasis& basis,
                                         const MatrixBasis& mbasis, double t, double sign) {
  std::vector<LmiTerm> terms;
  Eigen::VectorXd h, hd;
  basis.eval(t, h, hd);
  const SdpLayout& L = sdp.layout;
  for (int j = 0; j < L.n_knots; ++j) {
    if (std::abs(h(j)) < 1e-15) continue;
    int p = 0;
    for (int a = 0; a < sdp.n; ++a)
      for (int b = a; b < sdp.n; ++b, ++p) {
        terms.push_back({L.spline_start + j * L.n_sym + p, sign * h(j) * sym_unit(sdp.n, a, b)});
      }
  }
  for (int k = 0; k < L.n_mbasis; ++k) {
    terms.push_back({L.mbasis_start + k, sign * mbasis.eval(k, t).P});
  }
  return terms;
}

}  // namespace

RobustSdp assemble_robust_sdp(const ExtendedSystem& ext, GainKind kind,
                              const MultiplierParam& mparam, const SplineBasis& basis,
                              const MatrixBasis& mbasis, const TimeGrid& t_dlmi, double eps) {
  if (mparam.n_z() != ext.nz()) {
    throw std::invalid_argument("assemble_robust_sdp: multiplier size differs from filter output");
  }
  const double T = ext.horizon();
  if (std::abs(t_dlmi.horizon() - T) > 1e-9 * T ||
      std::abs(basis.knots().horizon() - T) > 1e-9 * T) {
    throw std::invalid_argument("assemble_robust_sdp: grids must span [0, T]");
  }
  const MatrixXd F = terminal_weight(ext, kind);

  RobustSdp sdp;
  sdp.n = ext.n();
  SdpLayout& L = sdp.layout;
  ConicProgram& prog = sdp.program;
  L.gamma2 = prog.add_variable("gamma2", 1.0);
  L.mult_start = prog.num_vars();
  L.n_mult = static_cast<int>(mparam.num_variables());
  for (int v = 0; v < L.n_mult; ++v) prog.add_variable("M" + std::to_string(v));
  L.spline_start = prog.num_vars();
  L.n_knots = static_cast<int>(basis.size());
  L.n_sym = static_cast<int>(packed_size(sdp.n));
  for (int j = 0; j < L.n_knots; ++j)
    for (int a = 0; a < sdp.n; ++a)
      for (int b = a; b < sdp.n; ++b) {
        prog.add_variable("X" + std::to_string(j) + "_" + std::to_string(a) + "_" +
                          std::to_string(b));
      }
  L.mbasis_start = prog.num_vars();
  L.n_mbasis = static_cast<int>(mbasis.size());
  for (int k = 0; k < L.n_mbasis; ++k) prog.add_variable("x" + std::to_string(k));

  std::vector<PointData> pts;
  double rho = 0.0;
  for (double t : t_dlmi.points()) {
    pts.push_back(point_data(ext, kind, t));
    rho = std::max(rho, pts.back().constant.norm());
  }
  sdp.eps = eps > 0.0 ? eps : 1e-6 * (1.0 + rho);
  const MatrixXd G = gamma_block(ext);
  const int s = ext.n() + ext.n_in();

  for (std::size_t k = 0; k < t_dlmi.size(); ++k) {
    const double t = t_dlmi[k];
    const PointData& d = pts[k];
    LmiBlock blk;
    blk.name = "dlmi t=" + std::to_string(t);
    blk.F0 = d.constant + sdp.eps * MatrixXd::Identity(s, s);
    blk.terms.push_back({L.gamma2, G});
    for (int v = 0; v < L.n_mult; ++v) {
      const auto& var = mparam.variables()[v];
      const double w = mparam.weight(var, t);
      if (w != 0.0) blk.terms.push_back({L.mult_start + v, w * d.L.transpose() * var.E * d.L});
    }
    Eigen::VectorXd h, hd;
    basis.eval(t, h, hd);
    for (int j = 0; j < L.n_knots; ++j) {
      if (std::abs(h(j)) < 1e-15 && std::abs(hd(j)) < 1e-15) continue;
      int p = 0;
      for (int a = 0; a < sdp.n; ++a)
        for (int b = a; b < sdp.n; ++b, ++p) {
          const MatrixXd E = sym_unit(sdp.n, a, b);
          blk.terms.push_back(
              {L.spline_start + j * L.n_sym + p, storage_block(d, h(j) * E, hd(j) * E)});
        }
    }
    for (int m = 0; m < L.n_mbasis; ++m) {
      const StorageValue H = mbasis.eval(m, t);
      blk.terms.push_back({L.mbasis_start + m, storage_block(d, H.P, H.Pdot)});
    }
    prog.add_lmi(std::move(blk));
  }
  sdp.num_dlmi = t_dlmi.size();

  LmiBlock term;
  term.name = "terminal";
  term.F0 = F + sdp.eps * MatrixXd::Identity(sdp.n, sdp.n);
  term.terms = storage_terms_value(sdp, basis, mbasis, T, -1.0);
  prog.add_lmi(std::move(term));

  for (std::size_t b = 0; b < mparam.blocks().size(); ++b) {
    const DecisionBlock& db = mparam.blocks()[b];
    const int start = L.mult_start + static_cast<int>(mparam.block_start(b));
    if (db.kind == BlockKind::ConstantSymmetric) continue;
    LmiBlock blk;
    if (db.kind == BlockKind::ConstantPsd) {
      blk.name = "multiplier psd " + std::to_string(b);
      blk.F0 = MatrixXd::Zero(db.size, db.size);
      int p = 0;
      for (int i = 0; i < db.size; ++i)
        for (int j = i; j < db.size; ++j, ++p) {
          MatrixXd E = MatrixXd::Zero(db.size, db.size);
          E(i, j) = E(j, i) = -1.0;
          blk.terms.push_back({start + p, E});
        }
    } else {
      const int ns = static_cast<int>(db.grid->size());
      blk.name = "multiplier nonneg " + std::to_string(b);
      blk.F0 = MatrixXd::Zero(ns, ns);
      for (int i = 0; i < ns; ++i) {
        MatrixXd E = MatrixXd::Zero(ns, ns);
        E(i, i) = -1.0;
        blk.terms.push_back({start + i, E});
      }
    }
    prog.add_lmi(std::move(blk));
  }
  return sdp;
}

NominalSdp assemble_nominal_sdp(const LtvSystem& sys, GainKind kind, const SplineBasis& basis,
                                const TimeGrid& t_dlmi, double eps) {
  const PartitionedLtvSystem G = PartitionedLtvSystem::FromPartition(sys, 0, 0);
  const IqcFilter psi(Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, 0),
                      Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, 0));
  ExtendedSystem ext = extend_system(G, psi);
  MultiplierParam mparam(0, {});
  RobustSdp sdp = assemble_robust_sdp(ext, kind, mparam, basis, MatrixBasis(), t_dlmi, eps);
  return {std::move(ext), std::move(mparam), std::move(sdp)};
}

void constrain_initial_set(RobustSdp& sdp, const Eigen::MatrixXd& E0, double alpha1) {
  if (!(alpha1 > 0.0)) throw std::invalid_argument("constrain_initial_set: alpha1 must be > 0");
  if (E0.rows() != E0.cols() || E0.rows() > sdp.n) {
    throw std::invalid_argument("constrain_initial_set: E0 dimension");
  }
  if (min_eigenvalue(E0) <= 0.0) {
    throw std::invalid_argument("constrain_initial_set: E0 must be positive definite");
  }
  // P(0) = sum_j h_j(0) X_j + sum_k H_k(0) x_k; h_j(0) = delta_j0 for the cardinal basis.
  LmiBlock blk;
  blk.name = "initial set";
  blk.F0 = MatrixXd::Zero(sdp.n, sdp.n);
  blk.F0.topLeftCorner(E0.rows(), E0.cols()) = -alpha1 * E0;
  const SdpLayout& L = sdp.layout;
  if (L.n_knots > 0) {
    int p = 0;
    for (int a = 0; a < sdp.n; ++a)
      for (int b = a; b < sdp.n; ++b, ++p) {
        blk.terms.push_back({L.spline_start + p, sym_unit(sdp.n, a, b)});
      }
  }
  if (L.n_mbasis > 0) {
    throw std::invalid_argument(
        "constrain_initial_set: add the constraint before matrix basis functions are used");
  }
  sdp.program.add_lmi(std::move(blk));
}

void fix_gamma(RobustSdp& sdp, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("fix_gamma: gamma must be >= 0");
  sdp.program.fix_variable(sdp.layout.gamma2, gamma * gamma);
}

SdpOutcome solve_robust_sdp(const RobustSdp& sdp, const ConicSolver& solver) {
  const SdpSolution sol = solver.solve(sdp.program);
  SdpOutcome out;
  out.status = sol.status;
  out.stats = sol.stats;
  const SdpLayout& L = sdp.layout;
  out.gamma2 = sol.y(L.gamma2);
  out.multiplier = sol.y.segment(L.mult_start, L.n_mult);
  for (int j = 0; j < L.n_knots; ++j) {
    out.storage.X.push_back(unpack_upper(sol.y.segment(L.spline_start + j * L.n_sym, L.n_sym), sdp.n));
  }
  out.storage.x = sol.y.segment(L.mbasis_start, L.n_mbasis);
  return out;
}

SdpOutcome solve_robust_sdp(const RobustSdp& sdp) {
  return solve_robust_sdp(sdp, InteriorPointSolver());
}

Eigen::MatrixXd dlmi_block(const ExtendedSystem& ext, GainKind kind,
                           const MultiplierParam& mparam, const Eigen::VectorXd& mult,
                           const StorageValue& P, double gamma2, double t) {
  const PointData d = point_data(ext, kind, t);
  MatrixXd blk = d.constant + storage_block(d, P.P, P.Pdot) + gamma2 * gamma_block(ext);
  for (std::size_t v = 0; v < mparam.num_variables(); ++v) {
    const auto& var = mparam.variables()[v];
    const double w = mparam.weight(var, t);
    if (w != 0.0) blk += mult(v) * w * d.L.transpose() * var.E * d.L;
  }
  return symmetrize(blk);
}

}  // namespace ltviqc
