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

#include "ltviqc/ltv/ode.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>

namespace ltviqc {

namespace odeint = boost::numeric::odeint;

OdeSegmentResult integrate_segment(const OdeRhs& rhs, Eigen::VectorXd y0, double t0,
                                   double t1, const OdeOptions& options,
                                   double time_scale, double initial_step,
                                   const OdeObserver& observer) {
  using State = std::vector<double>;
  const auto n = y0.size();
  OdeSegmentResult result{OdeStatus::Completed, t0, y0, initial_step, 0};
  const double span = t1 - t0;
  if (span == 0.0) return result;
  const double dir = span > 0.0 ? 1.0 : -1.0;
  const double min_step = options.min_step_ratio * std::abs(time_scale);

  Eigen::VectorXd yv(n), dyv(n);
  auto system = [&](const State& x, State& dxdt, double t) {
    yv = Eigen::Map<const Eigen::VectorXd>(x.data(), n);
    rhs(t, yv, dyv);
    Eigen::Map<Eigen::VectorXd>(dxdt.data(), n) = dyv;
  };

  auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol,
                                         odeint::runge_kutta_dopri5<State>());
  State x(y0.data(), y0.data() + n);
  double t = t0;
  double h = initial_step > 0.0 ? initial_step : std::abs(span) / 16.0;
  h = std::min(h, std::abs(span));

  while (dir * (t1 - t) > 0.0) {
    const double remaining = std::abs(t1 - t);
    // Avoid a sliver step at the very end of the segment.
    double step = std::min(h, remaining);
    if (remaining - step < 1e-10 * remaining + 4.0 * min_step) step = remaining;
    double dt = dir * step;
    const double t_before = t;
    const bool last = step == remaining;
    odeint::controlled_step_result res = stepper.try_step(system, x, t, dt);
    if (res == odeint::success) {
      ++result.steps;
      if (last) t = t1;  // remove round-off in t + dt
      h = std::abs(dt);  // odeint's proposal for the next step
      Eigen::Map<const Eigen::VectorXd> ym(x.data(), n);
      if (!ym.allFinite()) {
        result.status = OdeStatus::StepUnderflow;
        result.t = t_before;
        return result;
      }
      if (observer && !observer(t, ym)) {
        result.status = OdeStatus::Stopped;
        result.t = t;
        result.y = ym;
        result.next_step = h;
        return result;
      }
      if (result.steps > options.max_steps) {
        result.status = OdeStatus::StepUnderflow;
        result.t = t;
        result.y = ym;
        return result;
      }
    } else {
      h = std::abs(dt);
      if (h < min_step) {
        result.status = OdeStatus::StepUnderflow;
        result.t = t;
        result.y = Eigen::Map<const Eigen::VectorXd>(x.data(), n);
        result.next_step = h;
        return result;
      }
    }
  }
  result.t = t1;
  result.y = Eigen::Map<const Eigen::VectorXd>(x.data(), n);
  result.next_step = h;
  return result;
}

}  // namespace ltviqc
