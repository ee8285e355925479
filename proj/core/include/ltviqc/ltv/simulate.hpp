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
#include "ltviqc/ltv/quadratic_cost.hpp"
#include "ltviqc/ltv/signal.hpp"

namespace ltviqc {

struct SimulationResult {
  VectorSignal x;
  VectorSignal e;
};

/// Integrates the state equation from x0 driven by d. The output grid is the
/// union of the system grid and the grid of d.
SimulationResult simulate(const LtvSystem& sys, const VectorSignal& d,
                          const Eigen::VectorXd& x0,
                          const OdeOptions& options = {});

/// Trapezoid integral of v(t)'v(t), or a rectangle rule for zero-order hold.
double l2_norm_squared(const VectorSignal& v);
double l2_norm(const VectorSignal& v);

/// x(T)'F x(T) + quadrature of [x; d]'[Q S; S' R][x; d] on the grid of x.
double cost_eval(const QuadraticCost& cost, const VectorSignal& x,
                 const VectorSignal& d);

}  // namespace ltviqc
