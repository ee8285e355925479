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

#include "ltviqc/ltv/simulate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ltviqc/common/errors.hpp"

namespace ltviqc {

SimulationResult simulate(const LtvSystem& sys, const VectorSignal& d,
                          const Eigen::VectorXd& x0, const OdeOptions& options) {
  if (d.rows() != sys.nd()) {
    throw std::invalid_argument("simulate: input has " + std::to_string(d.rows()) +
                                " channels, system expects " + std::to_string(sys.nd()));
  }
  if (x0.size() != sys.nx()) throw std::invalid_argument("simulate: x0 dimension");
  const double T = sys.horizon();
  if (std::abs(d.horizon() - T) > 1e-12 * T) {
    throw std::invalid_argument("simulate: input horizon differs from system horizon");
  }
  const TimeGrid grid = TimeGrid::Merge(sys.grid(), d.grid());
  const auto& pts = grid.points();

  std::vector<Eigen::VectorXd> xs, es;
  xs.reserve(pts.size());
  es.reserve(pts.size());
  auto output = [&](std::size_t k, const Eigen::VectorXd& x) {
    const double t = pts[k];
    return Eigen::VectorXd(sys.C()(t) * x + sys.D()(t) * d(t));
  };

  Eigen::VectorXd x = x0;
  xs.push_back(x);
  es.push_back(output(0, x));
  double h = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double ta = pts[k];
    const double tb = pts[k + 1];
    const double tm = 0.5 * (ta + tb);
    const std::size_t sa = sys.A().grid().segment(tm);
    const std::size_t sb = sys.B().grid().segment(tm);
    const std::size_t sd = d.grid().segment(tm);
    if (x.size() == 0) {  // static system: nothing to integrate
      xs.push_back(x);
      es.push_back(output(k + 1, x));
      continue;
    }
    auto rhs = [&](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
      dy = sys.A().eval_in_segment(sa, t) * y +
           sys.B().eval_in_segment(sb, t) * d.eval_in_segment(sd, t);
    };
    auto res = integrate_segment(rhs, x, ta, tb, options, T, h);
    if (res.status != OdeStatus::Completed) {
      throw NumericalError("simulate: integrator step failure at t = " +
                           std::to_string(res.t));
    }
    x = res.y;
    h = res.next_step;
    xs.push_back(x);
    es.push_back(output(k + 1, x));
  }
  return {VectorSignal(grid, std::move(xs)), VectorSignal(grid, std::move(es))};
}

double l2_norm_squared(const VectorSignal& v) {
  const auto& g = v.grid();
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < g.size(); ++k) {
    const double h = g[k + 1] - g[k];
    if (v.interp() == Interp::ZeroOrderHold) {
      acc += h * v.samples()[k].squaredNorm();
    } else {
      acc += 0.5 * h * (v.samples()[k].squaredNorm() + v.samples()[k + 1].squaredNorm());
    }
  }
  return acc;
}

double l2_norm(const VectorSignal& v) { return std::sqrt(l2_norm_squared(v)); }

double cost_eval(const QuadraticCost& cost, const VectorSignal& x, const VectorSignal& d) {
  if (x.rows() != cost.nx() || d.rows() != cost.nd()) {
    throw std::invalid_argument("cost_eval: dimension mismatch");
  }
  if (!(x.grid() == d.grid())) {
    throw std::invalid_argument("cost_eval: x and d must share a grid");
  }
  const auto& g = x.grid();
  auto integrand = [&](std::size_t k) {
    const double t = g[k];
    const Eigen::VectorXd& xv = x.samples()[k];
    const Eigen::VectorXd& dv = d.samples()[k];
    const CostBlocks c = cost.at(t);
    return xv.dot(c.Q * xv) + 2.0 * xv.dot(c.S * dv) + dv.dot(c.R * dv);
  };
  double acc = 0.0;
  double prev = integrand(0);
  for (std::size_t k = 0; k + 1 < g.size(); ++k) {
    const double next = integrand(k + 1);
    acc += 0.5 * (g[k + 1] - g[k]) * (prev + next);
    prev = next;
  }
  const Eigen::VectorXd& xT = x.samples().back();
  return xT.dot(cost.F() * xT) + acc;
}

}  // namespace ltviqc
