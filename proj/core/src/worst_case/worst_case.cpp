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

#include "ltviqc/worst_case/worst_case.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "ltviqc/common/errors.hpp"
#include "ltviqc/ltv/quadratic_cost.hpp"
#include "ltviqc/ltv/simulate.hpp"
#include "ltviqc/worst_case/hamiltonian.hpp"

namespace ltviqc {

WorstCaseInput worst_case_disturbance(const LtvSystem& sys, GainKind kind, double gamma,
                                      const WorstCaseOptions& options) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("worst_case_disturbance: gamma must be positive");
  }
  if (options.samples < 2) throw std::invalid_argument("worst_case_disturbance: samples < 2");
  const QuadraticCost cost =
      kind == GainKind::InducedL2 ? cost_for_l2_gain(sys, gamma) : cost_for_l2e_gain(sys, gamma);
  if (!cost.r_negative_definite()) {
    throw std::invalid_argument("worst_case_disturbance: gamma is below the feedthrough gain");
  }
  const HamiltonianSystem H(sys.A(), sys.B(), cost);
  const TransitionBlocks blocks = transition_blocks(H, cost.F(), options.ode);
  const auto cp = conjugate_point_scan(blocks, options.rel_threshold);
  if (!cp) {
    std::ostringstream msg;
    msg << "worst_case_disturbance: no conjugate point on [0, T] at gamma = " << gamma
        << "; gamma is not below the gain";
    throw NumericalError(msg.str());
  }
  const int n = H.n();
  const double T = H.horizon();
  const double t0 = cp->t0;

  // d(t) = -R^{-1} (S' x + B' lambda) with [x; lambda] = [X1; X2] v on (t0, T].
  std::vector<double> ts;
  if (t0 > 0.0) ts.push_back(0.0);
  const double jump = 1e-9 * T;
  const bool has_jump = t0 > 0.0;
  const TimeGrid uniform = TimeGrid::Uniform(T - t0, options.samples);
  for (double s : uniform.points()) {
    double t = t0 + s;
    if (has_jump && s == 0.0) {
      ts.push_back(t0);
      t = t0 + jump;
    }
    if (t > ts.back()) ts.push_back(std::min(t, T));
  }
  ts.back() = T;
  std::vector<Eigen::VectorXd> dv;
  dv.reserve(ts.size());
  for (double t : ts) {
    if (has_jump && t <= t0) {
      dv.push_back(Eigen::VectorXd::Zero(sys.nd()));
      continue;
    }
    const Eigen::MatrixXd X = blocks.eval(t);
    const Eigen::VectorXd x = X.topRows(n) * cp->v;
    const Eigen::VectorXd lam = X.bottomRows(n) * cp->v;
    const CostBlocks c = cost.at(t);
    dv.push_back((-c.R).llt().solve(c.S.transpose() * x + sys.B()(t).transpose() * lam));
  }
  VectorSignal d(TimeGrid(ts), std::move(dv));
  const double dn = l2_norm(d);
  if (!(dn > 0.0)) throw NumericalError("worst_case_disturbance: constructed input is zero");
  {
    std::vector<Eigen::VectorXd> scaled;
    for (const auto& s : d.samples()) scaled.push_back(s / dn);
    d = VectorSignal(d.grid(), std::move(scaled));
  }

  const SimulationResult sim = simulate(sys, d, Eigen::VectorXd::Zero(sys.nx()), options.ode);
  std::vector<Eigen::VectorXd> d_on_x;
  for (double t : sim.x.grid().points()) d_on_x.push_back(d(t));
  const VectorSignal d_fine(sim.x.grid(), std::move(d_on_x));

  WorstCaseInput out{d, sim.x, sim.e, t0, gamma, 0.0, 0.0};
  const double d_norm = l2_norm(d_fine);
  out.ratio = kind == GainKind::InducedL2 ? l2_norm(sim.e) / d_norm
                                          : sim.e.samples().back().norm() / d_norm;
  out.cost = cost_eval(cost, sim.x, d_fine);
  if (out.ratio < (1.0 - options.ratio_tol) * gamma) {
    std::ostringstream msg;
    msg << "worst_case_disturbance: achieved ratio " << out.ratio << " is below "
        << (1.0 - options.ratio_tol) << " * " << gamma << " (t0 = " << t0 << ", J = " << out.cost
        << ")";
    throw NumericalError(msg.str());
  }
  return out;
}

void write_worst_case_csv(const WorstCaseInput& wc, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("write_worst_case_csv: cannot open " + path.string());
  f << "t";
  for (Eigen::Index i = 0; i < wc.d.rows(); ++i) f << ",d" << i;
  f << '\n' << std::setprecision(12);
  for (std::size_t k = 0; k < wc.d.grid().size(); ++k) {
    f << wc.d.grid()[k];
    for (Eigen::Index i = 0; i < wc.d.rows(); ++i) f << ',' << wc.d.samples()[k](i);
    f << '\n';
  }
}

}  // namespace ltviqc
