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

#include "ltviqc/dlmi/interior_point.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace ltviqc {

const char* to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::Optimal:
      return "optimal";
    case SdpStatus::Infeasible:
      return "infeasible";
    case SdpStatus::SolverFailure:
      return "solver_failure";
  }
  return "unknown";
}

SolverOptions SolverOptions::FromEnvironment() {
  SolverOptions opts;
  if (const char* v = std::getenv("LTVIQC_SOLVER_VERBOSE")) {
    opts.verbose = std::string(v) != "" && std::string(v) != "0";
  }
  return opts;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Block {
  int s = 0;
  MatrixXd C;             // -F0 (with fixed variables folded in), scaled
  std::vector<int> idx;   // compressed variable index per column of V
  MatrixXd V;             // column k: vec(A_k), scaled
};

MatrixXd unvec(const VectorXd& v, int s) { return Eigen::Map<const MatrixXd>(v.data(), s, s); }

VectorXd vec(const MatrixXd& M) { return Eigen::Map<const VectorXd>(M.data(), M.size()); }

MatrixXd sym(const MatrixXd& M) { return 0.5 * (M + M.transpose()); }

// Largest alpha with X + alpha dX >= 0 (infinity if unbounded).
double max_step(const MatrixXd& X, const MatrixXd& dX) {
  Eigen::LLT<MatrixXd> llt(X);
  if (llt.info() != Eigen::Success) return 0.0;
  const MatrixXd L = llt.matrixL();
  const MatrixXd Li = L.triangularView<Eigen::Lower>().solve(
      MatrixXd::Identity(X.rows(), X.cols()));
  const MatrixXd S = sym(Li * dX * Li.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(S, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

}  // namespace

SdpSolution InteriorPointSolver::solve(const ConicProgram& program) const {
  const SolverOptions& opt = options_;
  const int nvars = program.num_vars();
  const VectorXd cost = program.objective();
  SdpSolution out;
  out.y = VectorXd::Zero(nvars);
  for (const auto& [var, value] : program.fixed()) out.y(var) = value;

  // Compress to free variables that appear in at least one block.
  std::vector<int> compressed(nvars, -1), active;
  for (const auto& blk : program.blocks()) {
    for (const auto& term : blk.terms) {
      if (!program.fixed().count(term.var) && compressed[term.var] < 0) {
        compressed[term.var] = static_cast<int>(active.size());
        active.push_back(term.var);
      }
    }
  }
  for (int i = 0; i < nvars; ++i) {
    if (compressed[i] < 0 && !program.fixed().count(i) && cost(i) != 0.0) {
      out.stats.message = "variable '" + program.variable_names()[i] +
                          "' has a cost but enters no constraint (unbounded)";
      return out;
    }
  }
  const int m = static_cast<int>(active.size());
  VectorXd b(m);
  for (int k = 0; k < m; ++k) b(k) = -cost(active[k]);

  std::vector<Block> blocks;
  int n_total = 0;
  for (const auto& lmi : program.blocks()) {
    Block blk;
    blk.s = lmi.size();
    if (blk.s == 0) continue;
    MatrixXd F0 = lmi.F0;
    std::vector<const LmiTerm*> free_terms;
    for (const auto& term : lmi.terms) {
      auto it = program.fixed().find(term.var);
      if (it != program.fixed().end()) {
        F0 += it->second * term.coeff;
      } else {
        free_terms.push_back(&term);
      }
    }
    double scale = F0.norm();
    for (const auto* t : free_terms) scale = std::max(scale, t->coeff.norm());
    scale = scale > 0.0 ? 1.0 / scale : 1.0;
    blk.C = -scale * sym(F0);
    blk.V.resize(blk.s * blk.s, static_cast<Eigen::Index>(free_terms.size()));
    for (std::size_t k = 0; k < free_terms.size(); ++k) {
      blk.idx.push_back(compressed[free_terms[k]->var]);
      blk.V.col(static_cast<Eigen::Index>(k)) = scale * vec(sym(free_terms[k]->coeff));
    }
    n_total += blk.s;
    blocks.push_back(std::move(blk));
  }
  if (blocks.empty()) {
    out.status = m == 0 ? SdpStatus::Optimal : SdpStatus::SolverFailure;
    out.stats.message = "no constraints";
    out.objective = cost.dot(out.y);
    return out;
  }
  const std::size_t nb = blocks.size();
  double normC = 0.0;
  for (const auto& blk : blocks) normC += blk.C.squaredNorm();
  normC = std::sqrt(normC);
  const double normb = b.norm();

  auto scatter_AX = [&](const std::vector<MatrixXd>& X) {
    VectorXd r = VectorXd::Zero(m);
    for (std::size_t i = 0; i < nb; ++i) {
      const VectorXd loc = blocks[i].V.transpose() * vec(X[i]);
      for (std::size_t k = 0; k < blocks[i].idx.size(); ++k) r(blocks[i].idx[k]) += loc(k);
    }
    return r;
  };
  auto Aty = [&](std::size_t i, const VectorXd& y) {
    VectorXd loc(blocks[i].idx.size());
    for (std::size_t k = 0; k < blocks[i].idx.size(); ++k) loc(k) = y(blocks[i].idx[k]);
    return unvec(blocks[i].V * loc, blocks[i].s);
  };

  // Starting point.
  std::vector<MatrixXd> X(nb), Z(nb), Zinv(nb), Rd(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    const Block& blk = blocks[i];
    const double s = blk.s;
    double xi = std::max(10.0, std::sqrt(s)), eta = std::max({10.0, std::sqrt(s), blk.C.norm()});
    for (std::size_t k = 0; k < blk.idx.size(); ++k) {
      const double an = blk.V.col(static_cast<Eigen::Index>(k)).norm();
      xi = std::max(xi, s * (1.0 + std::abs(b(blk.idx[k]))) / (1.0 + an));
      eta = std::max(eta, an);
    }
    X[i] = xi * MatrixXd::Identity(blk.s, blk.s);
    Z[i] = eta * MatrixXd::Identity(blk.s, blk.s);
  }
  VectorXd y = VectorXd::Zero(m);

  auto finish = [&](SdpStatus status, const std::string& msg) {
    out.status = status;
    out.stats.message = msg;
    for (int k = 0; k < m; ++k) out.y(active[k]) = y(k);
    out.objective = cost.dot(out.y);
    return out;
  };

  // Late iterations can lose accuracy when the Schur complement becomes
  // ill-conditioned; the best iterate seen so far is kept as a fallback.
  struct Best {
    double merit = std::numeric_limits<double>::infinity();
    VectorXd y;
    SolverStats stats;
    int iteration = 0;
  } best;
  auto finish_best = [&](const std::string& reason) {
    const SolverStats& bs = best.stats;
    if (best.y.size() == m && bs.primal_infeas < opt.reduced_tol &&
        bs.dual_infeas < opt.reduced_tol && bs.rel_gap < opt.reduced_tol) {
      const int its = out.stats.iterations;
      y = best.y;
      out.stats = bs;
      out.stats.iterations = its;
      return finish(SdpStatus::Optimal, "converged to reduced accuracy at iteration " +
                                            std::to_string(best.iteration) + " (" + reason + ")");
    }
    return finish(SdpStatus::SolverFailure, reason);
  };

  int stalls = 0;
  for (int it = 0;; ++it) {
    const VectorXd AX = scatter_AX(X);
    const VectorXd rp = b - AX;
    double pobj = 0.0, xz = 0.0, rd2 = 0.0;
    for (std::size_t i = 0; i < nb; ++i) {
      Rd[i] = blocks[i].C - Z[i] - Aty(i, y);
      pobj += (blocks[i].C.array() * X[i].array()).sum();
      xz += (X[i].array() * Z[i].array()).sum();
      rd2 += Rd[i].squaredNorm();
    }
    const double dobj = b.dot(y);
    const double mu = xz / n_total;
    SolverStats& st = out.stats;
    st.iterations = it;
    st.primal_infeas = rp.norm() / (1.0 + normb);
    st.dual_infeas = std::sqrt(rd2) / (1.0 + normC);
    st.rel_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    st.primal_obj = pobj;
    st.dual_obj = dobj;
    if (opt.verbose) {
      std::fprintf(stderr, "ipm %3d  pobj % .8e  dobj % .8e  pinf %.2e  dinf %.2e  gap %.2e  mu %.2e\n",
                   it, pobj, dobj, st.primal_infeas, st.dual_infeas, st.rel_gap, mu);
    }
    if (st.primal_infeas < opt.tol && st.dual_infeas < opt.tol && st.rel_gap < opt.tol) {
      return finish(SdpStatus::Optimal, "converged");
    }
    const double merit = std::max({st.primal_infeas, st.dual_infeas, st.rel_gap});
    if (merit < 0.5 * best.merit) {
      best.merit = merit;
      best.y = y;
      best.stats = st;
      best.iteration = it;
    } else if (best.merit < opt.reduced_tol && it - best.iteration >= opt.patience) {
      return finish_best("no progress in " + std::to_string(opt.patience) + " iterations");
    }
    // X with A(X) ~ 0 and <C, X> < 0 certifies that no y satisfies the LMIs.
    if (pobj < 0.0 && AX.norm() <= opt.infeas_tol * (-pobj)) {
      return finish(SdpStatus::Infeasible, "LMI infeasibility certificate found");
    }
    // y with A'(y) + Z ~ 0 and b'y > 0 is an unbounded direction of the LMI program.
    if (dobj > 0.0) {
      double r = 0.0;
      for (std::size_t i = 0; i < nb; ++i) r += (Aty(i, y) + Z[i]).squaredNorm();
      if (std::sqrt(r) <= opt.infeas_tol * dobj && st.dual_infeas > opt.tol) {
        return finish(SdpStatus::SolverFailure, "objective unbounded below");
      }
    }
    if (it >= opt.max_iter || stalls >= 3) {
      return finish_best(it >= opt.max_iter ? "iteration limit reached" : "step length stalled");
    }

    // Schur complement M_kl = <A_k, X A_l Z^{-1}>.
    MatrixXd M = MatrixXd::Zero(m, m);
    bool ok = true;
    for (std::size_t i = 0; i < nb && ok; ++i) {
      Eigen::LLT<MatrixXd> llt(Z[i]);
      if (llt.info() != Eigen::Success) {
        ok = false;
        break;
      }
      Zinv[i] = sym(llt.solve(MatrixXd::Identity(blocks[i].s, blocks[i].s)));
      const Block& blk = blocks[i];
      const auto mb = static_cast<Eigen::Index>(blk.idx.size());
      if (mb == 0) continue;
      MatrixXd W(blk.s * blk.s, mb);
      for (Eigen::Index k = 0; k < mb; ++k) {
        W.col(k) = vec(X[i] * unvec(blk.V.col(k), blk.s) * Zinv[i]);
      }
      const MatrixXd Mb = blk.V.transpose() * W;
      for (Eigen::Index k = 0; k < mb; ++k)
        for (Eigen::Index l = 0; l < mb; ++l) M(blk.idx[k], blk.idx[l]) += Mb(k, l);
    }
    if (!ok) {
      return finish_best("dual slack lost positive definiteness");
    }
    M = sym(M);
    Eigen::LLT<MatrixXd> Mf(M);
    double reg = 1e-14 * std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
    for (int tries = 0; Mf.info() != Eigen::Success && tries < 8; ++tries, reg *= 100.0) {
      Mf.compute(M + reg * MatrixXd::Identity(m, m));
    }
    if (Mf.info() != Eigen::Success) {
      return finish_best("Schur complement is singular");
    }

    // Direction for the complementarity target G: X Z -> G.
    auto direction = [&](const std::vector<MatrixXd>& G, std::vector<MatrixXd>& dX,
                         VectorXd& dy, std::vector<MatrixXd>& dZ) {
      VectorXd rhs = rp;
      for (std::size_t i = 0; i < nb; ++i) {
        const MatrixXd T = G[i] * Zinv[i] - X[i] - X[i] * Rd[i] * Zinv[i];
        const VectorXd loc = blocks[i].V.transpose() * vec(T);
        for (std::size_t k = 0; k < blocks[i].idx.size(); ++k) rhs(blocks[i].idx[k]) -= loc(k);
      }
      dy = Mf.solve(rhs);
      for (int r = 0; r < 2; ++r) dy += Mf.solve(rhs - M * dy);
      for (std::size_t i = 0; i < nb; ++i) {
        dZ[i] = Rd[i] - Aty(i, dy);
        dX[i] = sym(G[i] * Zinv[i] - X[i] - X[i] * dZ[i] * Zinv[i]);
      }
    };
    auto step_lengths = [&](const std::vector<MatrixXd>& dX, const std::vector<MatrixXd>& dZ,
                            double& ap, double& ad) {
      ap = ad = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < nb; ++i) {
        ap = std::min(ap, max_step(X[i], dX[i]));
        ad = std::min(ad, max_step(Z[i], dZ[i]));
      }
    };

    std::vector<MatrixXd> G(nb), dXa(nb), dZa(nb), dX(nb), dZ(nb);
    VectorXd dya, dy;
    for (std::size_t i = 0; i < nb; ++i) G[i] = MatrixXd::Zero(blocks[i].s, blocks[i].s);
    direction(G, dXa, dya, dZa);
    double ap, ad;
    step_lengths(dXa, dZa, ap, ad);
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);
    double xz_aff = 0.0;
    for (std::size_t i = 0; i < nb; ++i) {
      xz_aff += ((X[i] + ap * dXa[i]).array() * (Z[i] + ad * dZa[i]).array()).sum();
    }
    const double sigma = std::clamp(std::pow(std::max(0.0, xz_aff / xz), 3.0), 0.0, 1.0);
    for (std::size_t i = 0; i < nb; ++i) {
      G[i] = sigma * mu * MatrixXd::Identity(blocks[i].s, blocks[i].s) - dXa[i] * dZa[i];
    }
    direction(G, dX, dy, dZ);
    step_lengths(dX, dZ, ap, ad);
    const double frac = 0.98;
    ap = std::min(1.0, frac * ap);
    ad = std::min(1.0, frac * ad);
    stalls = (ap < 1e-10 && ad < 1e-10) ? stalls + 1 : 0;
    for (std::size_t i = 0; i < nb; ++i) {
      X[i] = sym(X[i] + ap * dX[i]);
      Z[i] = sym(Z[i] + ad * dZ[i]);
    }
    y += ad * dy;
  }
}

}  // namespace ltviqc
