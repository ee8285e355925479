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

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ltviqc/studies/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ltviqc acceptance suite"};
  ltviqc::AcceptanceOptions options;
  std::vector<int> only, expect_fail;
  bool verbose = false;
  app.add_flag("--quick", options.quick, "Reduced horizons and sample counts");
  app.add_option("--seed", options.seed, "Seed for randomized criteria");
  app.add_option("--jobs", options.jobs, "Worker threads for sweeps and sampling")
      ->check(CLI::Range(1u, 64u));
  app.add_option("--only", only, "Criteria to run (1-8)")->delimiter(',')->check(CLI::Range(1, 8));
  app.add_option("--expect-fail", expect_fail,
                 "Known failing criteria: still run and reported, but not counted in the exit code")
      ->delimiter(',')
      ->check(CLI::Range(1, 8));
  app.add_flag("-v,--verbose", verbose, "Print progress lines");
  CLI11_PARSE(app, argc, argv);

  if (verbose) {
    options.progress = [](const std::string& line) { std::cerr << line << std::endl; };
  }
  const auto results = ltviqc::run_acceptance(options, only);

  int failed = 0, expected = 0;
  for (const auto& r : results) {
    const bool known =
        std::find(expect_fail.begin(), expect_fail.end(), r.id) != expect_fail.end();
    std::printf("[%s] criterion %d: %s -- %s (%.1f s)\n", ltviqc::to_string(r.status), r.id,
                r.name.c_str(), r.detail.c_str(), r.seconds);
    if (r.status == ltviqc::CriterionStatus::Fail) {
      if (known) {
        ++expected;
      } else {
        ++failed;
      }
    } else if (known && r.status == ltviqc::CriterionStatus::Pass) {
      std::printf("note: criterion %d was expected to fail but passed\n", r.id);
    }
  }
  std::printf("%d of %zu criteria failed", failed + expected, results.size());
  if (expected > 0) std::printf(" (%d known)", expected);
  std::printf("\n");
  return failed == 0 ? 0 : 1;
}
