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

#include <random>

#include <benchmark/benchmark.h>

#include "ltviqc/dlmi/robust_sdp.hpp"
#include "ltviqc/dlmi/spline_basis.hpp"
#include "ltviqc/iteration/algorithm.hpp"
#include "ltviqc/riccati/gain.hpp"
#include "ltviqc/riccati/oracles.hpp"
#include "ltviqc/riccati/rde.hpp"
#include "ltviqc/studies/reference_plant.hpp"
#include "ltviqc/studies/random_systems.hpp"
#include "ltviqc/worst_case/worst_case.hpp"

namespace {

using namespace ltviqc;

LtvSystem random_system(int states) {
  std::mt19937_64 rng(42);
  RandomLtvOptions o;
  o.states = states;
  o.inputs = 2;
  o.outputs = 2;
  return random_stable_ltv(rng, o);
}

void BM_RdeBackward(benchmark::State& state) {
  const LtvSystem sys = random_system(static_cast<int>(state.range(0)));
  const double gamma = 2.0 * bisect_gain(sys, GainKind::InducedL2).upper;
  const QuadraticCost cost = cost_for_l2_gain(sys, gamma);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_rde_backward(sys.A(), sys.B(), cost));
  }
}
BENCHMARK(BM_RdeBackward)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_BisectGain(benchmark::State& state) {
  const LtvSystem sys = random_system(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bisect_gain(sys, GainKind::InducedL2).upper);
  }
}
BENCHMARK(BM_BisectGain)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_LiftedOracle(benchmark::State& state) {
  const LtvSystem sys = random_system(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lifted_l2_gain_oracle(sys, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_LiftedOracle)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_NominalSdp(benchmark::State& state) {
  const LtvSystem sys = random_system(2);
  const SplineBasis basis(TimeGrid::Uniform(sys.horizon(), 10));
  const TimeGrid t_dlmi = TimeGrid::Uniform(sys.horizon(), static_cast<std::size_t>(state.range(0)));
  const NominalSdp nom = assemble_nominal_sdp(sys, GainKind::InducedL2, basis, t_dlmi);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_robust_sdp(nom.sdp).gamma());
  }
}
BENCHMARK(BM_NominalSdp)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_RobustIteration(benchmark::State& state) {
  const PartitionedLtvSystem G = reference_plant_system(static_cast<double>(state.range(0)));
  const IqcSpec iqc = reference_plant_iqc();
  for (auto _ : state) {
    benchmark::DoNotOptimize(robust_gain_iterate(G, iqc, GainKind::InducedL2).gamma_best);
  }
}
BENCHMARK(BM_RobustIteration)->Arg(1)->Arg(10)->Unit(benchmark::kSecond)->Iterations(1);

void BM_WorstCase(benchmark::State& state) {
  const LtvSystem sys = random_system(2);
  const double gamma = 0.99 * bisect_gain(sys, GainKind::InducedL2).lower;
  for (auto _ : state) {
    benchmark::DoNotOptimize(worst_case_disturbance(sys, GainKind::InducedL2, gamma).ratio);
  }
}
BENCHMARK(BM_WorstCase)->Unit(benchmark::kMillisecond);

void BM_SplineEval(benchmark::State& state) {
  const SplineBasis basis(TimeGrid::Uniform(1.0, static_cast<std::size_t>(state.range(0))),
                          SplineEnd::NotAKnot);
  Eigen::VectorXd h, hd;
  double t = 0.0;
  for (auto _ : state) {
    basis.eval(t, h, hd);
    benchmark::DoNotOptimize(h.data());
    t += 0.013;
    if (t > 1.0) t -= 1.0;
  }
}
BENCHMARK(BM_SplineEval)->Arg(10)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
