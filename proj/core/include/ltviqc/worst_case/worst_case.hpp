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

#include <filesystem>

#include "ltviqc/ltv/ltv_system.hpp"
#include "ltviqc/ltv/ode.hpp"
#include "ltviqc/ltv/signal.hpp"
#include "ltviqc/riccati/gain.hpp"

namespace ltviqc {

struct WorstCaseOptions {
  /// Tighter than the default: the construction should give J(d) = 0.
  OdeOptions ode{1e-11, 1e-9};
  /// Points of the uniform grid on [t0, T] on which d is sampled.
  std::size_t samples = 4001;
  double rel_threshold = 1e-8;
  /// The achieved ratio must reach (1 - ratio_tol) * gamma.
  double ratio_tol = 0.01;
};

struct WorstCaseInput {
  VectorSignal d;          // unit L2 norm
  VectorSignal x;          // simulated state
  VectorSignal e;          // simulated output
  double t0 = 0.0;         // conjugate point; d = 0 before it
  double gamma = 0.0;      // target level
  double ratio = 0.0;      // |e| / |d| (or |e(T)| / |d|)
  double cost = 0.0;       // J(d) at gamma
};

/// Disturbance attaining (close to) gamma, built from the conjugate point of
/// the Hamiltonian at gamma. gamma must lie below the nominal gain.
/// Throws NumericalError when no conjugate point exists or the simulated
/// ratio falls short.
WorstCaseInput worst_case_disturbance(const LtvSystem& sys, GainKind kind, double gamma,
                                      const WorstCaseOptions& options = {});

/// CSV with columns t, d0, d1, ...
void write_worst_case_csv(const WorstCaseInput& wc, const std::filesystem::path& path);

}  // namespace ltviqc
