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

#include "ltviqc/iteration/algorithm.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <stdexcept>

#include "ltviqc/common/symmetric.hpp"
#include "ltviqc/dlmi/robust_sdp.hpp"
#include "ltviqc/iqc/extended_system.hpp"
#include "ltviqc/iteration/refine_grid.hpp"

namespace ltviqc {

RobustGainResult robust_gain_iterate(const PartitionedLtvSystem& G, const IqcSpec& iqc,
                                     GainKind perf, const IterationConfig& config) {
  if (!(config.tol > 0.0) || config.max_iter < 1) {
    throw std::invalid_argument("robust_gain_iterate: need tol > 0 and max_iter >= 1");
  }
  const double T = G.horizon();
  const ExtendedSystem ext = extend_system(G, iqc.filter);
  const SplineBasis basis(config.knots ? *config.knots
                                       : TimeGrid::Uniform(T, static_cast<std::size_t>(
                                                                  std::max(2, config.spline_points))),
                          config.spline_end);
  TimeGrid t_dlmi = config.t_dlmi ? *config.t_dlmi
                                  : TimeGrid::Uniform(T, static_cast<std::size_t>(
                                                             std::max(2, config.dlmi_points)));
  const InteriorPointSolver solver(config.solver);
  FixedMultiplierOptions fm;
  fm.rel_tol = config.bisect_tol;
  fm.rde = config.rde;

  RobustGainResult out;
  out.horizon = T;
  MatrixBasis mbasis;
  for (int i = 1; i <= config.max_iter; ++i) {
    const auto start = std::chrono::steady_clock::now();
    IterationRecord rec;
    rec.iteration = i;
    rec.grid_size = t_dlmi.size();

    const RobustSdp sdp =
        assemble_robust_sdp(ext, perf, iqc.param, basis, mbasis, t_dlmi, config.eps);
    const SdpOutcome sol = solve_robust_sdp(sdp, solver);
    rec.status = sol.status;
    rec.sdp_iterations = sol.stats.iterations;
    if (sol.status != SdpStatus::Optimal) {
      rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      out.log.records.push_back(rec);
      out.log.termination = std::string("sdp ") + to_string(sol.status) + ": " + sol.stats.message;
      return out;
    }
    rec.gamma_sdp = sol.gamma();

    const Eigen::VectorXd mult = iqc.param.project(sol.multiplier);
    const MatrixSignal M = iqc.param.assemble(mult, T);
    FixedMultiplierResult fixed = rde_bisect_fixed_M(ext, M, perf, rec.gamma_sdp, fm);
    rec.gamma_rde = fixed.gamma;
    rec.rde_calls = fixed.rde_calls;

    // Grid refinement (only when the SDP undercuts the certificate).
    if (rec.gamma_sdp < rec.gamma_rde) {
      const StorageFn P = storage_fn(basis, mbasis, sol.storage);
      auto margin = [&](double t) {
        return max_eigenvalue(dlmi_block(ext, perf, iqc.param, sol.multiplier, P(t), sol.gamma2, t));
      };
      const TimeGrid dense = fixed.finite() ? fixed.P->grid() : TimeGrid::Uniform(T, 2001);
      const std::size_t before = t_dlmi.size();
      t_dlmi = refine_grid(t_dlmi, margin, dense.points(), config.max_added_points);
      rec.added_points = t_dlmi.size() - before;
    }

    if (fixed.finite()) {
      if (fixed.gamma < out.gamma_best) {
        out.gamma_best = fixed.gamma;
        out.multiplier = mult;
        out.M_best = M;
        out.P_best = *fixed.P;
      }
      mbasis = MatrixBasis({*fixed.P});
    } else {
      out.log.warnings.push_back("iteration " + std::to_string(i) +
                                 ": SDP feasible but the RDE has no solution for any gamma; "
                                 "matrix basis cleared");
      mbasis = MatrixBasis();
    }
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.log.records.push_back(rec);

    if (std::isfinite(rec.gamma_rde) &&
        std::abs(rec.gamma_sdp - rec.gamma_rde) < config.tol * rec.gamma_sdp) {
      out.converged = true;
      out.log.termination = "converged";
      return out;
    }
  }
  out.log.termination = "iteration limit";
  return out;
}

std::vector<HorizonResult> gain_vs_horizon(const PartitionedLtvSystem& G,
                                           const std::function<IqcSpec(double)>& iqc_for,
                                           GainKind perf, const std::vector<double>& horizons,
                                           const IterationConfig& config, int jobs) {
  for (std::size_t k = 0; k < horizons.size(); ++k) {
    if (!(horizons[k] > 0.0) || (k > 0 && horizons[k] <= horizons[k - 1])) {
      throw std::invalid_argument("gain_vs_horizon: horizons must be positive and ascending");
    }
  }
  auto run = [&](double T) {
    HorizonResult r;
    r.horizon = T;
    try {
      r.result = robust_gain_iterate(G.with_horizon(T), iqc_for(T), perf, config);
    } catch (const std::exception& e) {
      r.error = e.what();
      r.result.horizon = T;
    }
    return r;
  };
  std::vector<HorizonResult> out;
  if (jobs <= 1) {
    for (double T : horizons) out.push_back(run(T));
    return out;
  }
  std::vector<std::future<HorizonResult>> pending;
  std::size_t next = 0;
  out.resize(horizons.size());
  std::vector<std::size_t> slot;
  while (next < horizons.size() || !pending.empty()) {
    while (next < horizons.size() && static_cast<int>(pending.size()) < jobs) {
      pending.push_back(std::async(std::launch::async, run, horizons[next]));
      slot.push_back(next++);
    }
    out[slot.front()] = pending.front().get();
    pending.erase(pending.begin());
    slot.erase(slot.begin());
  }
  return out;
}

}  // namespace ltviqc
