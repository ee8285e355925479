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

#include "ltviqc/studies/delta_sampling.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <future>

namespace ltviqc {

LtiSystem reference_worst_delta() {
  return LtiSystem::FromTransferFunction(Eigen::Vector3d(-0.7861, -3.383, -3.631),
                                         Eigen::Vector3d(0.8, 3.414, 3.631));
}

LtiSystem random_unit_delta(int states, std::mt19937_64& rng) {
  for (;;) {
    const LtiSystem d = random_stable_siso(states, rng);
    const double norm = hinf_norm(d);
    if (norm > 1e-8) return d.scaled(1.0 / norm);
  }
}

namespace {

void evaluate(const PartitionedLtvSystem& plant, const DeltaSamplingOptions& options,
              DeltaSample& s) {
  try {
    s.hinf = hinf_norm(s.delta);
    const LtvSystem closed = close_uncertainty_loop(plant, s.delta);
    const GainBound g = bisect_gain(closed, options.kind, std::nullopt, options.bisection);
    s.gain = g.upper;
    s.gain_lower = g.lower;
    s.status = "ok";
  } catch (const std::exception& e) {
    s.status = e.what();
  }
}

}  // namespace

DeltaReport sample_delta_validate(const PartitionedLtvSystem& plant, double gamma_robust,
                                  const DeltaSamplingOptions& options) {
  DeltaReport report;
  report.gamma_robust = gamma_robust;
  if (options.n_samples == 0) return report;

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> states(0, options.max_states);
  if (options.include_reference_worst) {
    DeltaSample s;
    s.delta = reference_worst_delta();
    // Keep the fixed sample admissible.
    const double norm = hinf_norm(s.delta);
    if (norm > 1.0) s.delta = s.delta.scaled(1.0 / norm);
    s.states = s.delta.n();
    s.fixed = true;
    report.samples.push_back(std::move(s));
  }
  while (report.samples.size() < options.n_samples) {
    DeltaSample s;
    s.states = states(rng);
    s.delta = random_unit_delta(s.states, rng);
    report.samples.push_back(std::move(s));
  }

  const std::size_t jobs = std::max(1u, options.jobs);
  for (std::size_t start = 0; start < report.samples.size(); start += jobs) {
    const std::size_t stop = std::min(report.samples.size(), start + jobs);
    if (jobs == 1) {
      evaluate(plant, options, report.samples[start]);
      continue;
    }
    std::vector<std::future<void>> futures;
    for (std::size_t k = start; k < stop; ++k) {
      futures.push_back(std::async(std::launch::async, [&, k] {
        evaluate(plant, options, report.samples[k]);
      }));
    }
    for (auto& f : futures) f.get();
  }

  for (std::size_t k = 0; k < report.samples.size(); ++k) {
    const auto& s = report.samples[k];
    if (s.status != "ok") {
      ++report.failures;
      continue;
    }
    if (report.worst_index < 0 || s.gain > report.max_gain) {
      report.max_gain = s.gain;
      report.worst_index = static_cast<int>(k);
    }
    if (s.gain > gamma_robust + options.soundness_tol) report.sound = false;
  }
  return report;
}

nlohmann::json to_json(const DeltaReport& report) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : report.samples) {
    samples.push_back({{"states", s.states},
                       {"fixed", s.fixed},
                       {"hinf", s.hinf},
                       {"gain", s.gain},
                       {"gain_lower", s.gain_lower},
                       {"status", s.status}});
  }
  return {{"samples", samples},
          {"summary",
           {{"count", report.samples.size()},
            {"failures", report.failures},
            {"gamma_robust", report.gamma_robust},
            {"max_gain", report.max_gain},
            {"worst_index", report.worst_index},
            {"sound", report.sound}}}};
}

}  // namespace ltviqc
