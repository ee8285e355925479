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

#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "ltviqc/iqc/extended_system.hpp"
#include "ltviqc/iteration/algorithm.hpp"
#include "ltviqc/iteration/fixed_multiplier.hpp"
#include "ltviqc/iteration/refine_grid.hpp"
#include "ltviqc/iteration/serialization.hpp"
#include "ltviqc/studies/lti.hpp"
#include "ltviqc/studies/reference_plant.hpp"

using namespace ltviqc;
using Eigen::MatrixXd;

TEST(RefineGrid, PeaksFirstThenLargest) {
  const TimeGrid g = TimeGrid::Uniform(1.0, 3);  // 0, 0.5, 1
  const std::vector<double> dense{0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9};
  // two bumps: peak 1.0 at 0.2, peak 0.5 at 0.8; 0.3 has 0.9 but is not a peak
  auto margin = [](double t) {
    if (t < 0.45) return 1.0 - 5.0 * std::abs(t - 0.2);
    return 0.5 - 5.0 * std::abs(t - 0.8);
  };
  const TimeGrid r1 = refine_grid(g, margin, dense, 1);
  EXPECT_EQ(r1.size(), 4u);
  EXPECT_DOUBLE_EQ(r1[1], 0.2);
  const TimeGrid r2 = refine_grid(g, margin, dense, 2);
  EXPECT_DOUBLE_EQ(r2[r2.size() - 2], 0.8);
  const TimeGrid r3 = refine_grid(g, margin, dense, 3);
  EXPECT_EQ(r3.size(), 6u);
  EXPECT_DOUBLE_EQ(r3[2], 0.3);
  EXPECT_EQ(refine_grid(g, [](double) { return -1.0; }, dense, 5).size(), 3u);
}

TEST(RefineGrid, SkipsExistingPoints) {
  const TimeGrid g = TimeGrid::Uniform(1.0, 3);
  const std::vector<double> dense{0.5, 0.5 + 1e-12};
  EXPECT_EQ(refine_grid(g, [](double) { return 1.0; }, dense, 5).size(), 3u);
}

TEST(FixedMultiplier, ZeroMultiplierGivesNoCertificate) {
  const PartitionedLtvSystem G = reference_plant_system(1.0);
  const IqcSpec spec = reference_plant_iqc();
  const ExtendedSystem ext = extend_system(G, spec.filter);
  const MatrixSignal M = MatrixSignal::Constant(MatrixXd::Zero(ext.nz(), ext.nz()), 1.0);
  const FixedMultiplierResult r = rde_bisect_fixed_M(ext, M, GainKind::InducedL2);
  EXPECT_FALSE(r.finite());
  EXPECT_TRUE(std::isinf(r.gamma));
}

TEST(FixedMultiplier, IdentityMultiplierBoundsNominal) {
  const PartitionedLtvSystem G = reference_plant_system(1.0);
  const IqcSpec spec = reference_plant_iqc();
  const ExtendedSystem ext = extend_system(G, spec.filter);
  const MatrixSignal M = spec.param.assemble(spec.param.pack({MatrixXd::Identity(2, 2)}), 1.0);
  const FixedMultiplierResult r = rde_bisect_fixed_M(ext, M, GainKind::InducedL2);
  ASSERT_TRUE(r.finite());
  const GainBound nominal = bisect_gain(G.nominal(), GainKind::InducedL2);
  EXPECT_GE(r.gamma, nominal.lower);
}

// The robust bound must cover the nominal plant and any closed loop with a
// unit-norm Delta, and match the reference value for T = 1.
TEST(RobustIteration, ReferencePlantShortHorizon) {
  const PartitionedLtvSystem G = reference_plant_system(1.0);
  const RobustGainResult r = robust_gain_iterate(G, reference_plant_iqc(), GainKind::InducedL2);
  ASSERT_TRUE(r.certified());
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations(), 3);
  EXPECT_NEAR(r.gamma_best, 0.155164, 1e-3 * 0.155164);

  const double nominal = bisect_gain(G.nominal(), GainKind::InducedL2, std::nullopt,
                                     {1e-6, 60, {}}).upper;
  EXPECT_GE(r.gamma_best, nominal);
  for (double k : {-1.0, 1.0}) {
    const LtvSystem cl = close_uncertainty_loop(G, LtiSystem::Static(MatrixXd::Constant(1, 1, k)));
    EXPECT_LE(bisect_gain(cl, GainKind::InducedL2, std::nullopt, {1e-6, 60, {}}).upper,
              r.gamma_best + 1e-6);
  }

  const auto j = to_json(r);
  EXPECT_EQ(j["iterations"], r.iterations());
  EXPECT_TRUE(j["certified"].get<bool>());
  std::ostringstream os;
  write_log_csv(os, r.log);
  EXPECT_EQ(os.str().rfind("iteration,gamma_sdp,gamma_rde", 0), 0u);
}

TEST(RobustIteration, RejectsBadConfig) {
  IterationConfig c;
  c.max_iter = 0;
  EXPECT_THROW(robust_gain_iterate(reference_plant_system(1.0), reference_plant_iqc(),
                                   GainKind::InducedL2, c),
               std::invalid_argument);
}

TEST(RobustIteration, HorizonSweep) {
  const auto rows = gain_vs_horizon(
      reference_plant_system(1.0), [](double) { return reference_plant_iqc(); },
      GainKind::InducedL2, {1.0, 2.0}, IterationConfig{}, 2);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_DOUBLE_EQ(rows[0].horizon, 1.0);
  EXPECT_DOUBLE_EQ(rows[1].horizon, 2.0);
  EXPECT_TRUE(rows[0].error.empty());
  EXPECT_LT(rows[0].result.gamma_best, rows[1].result.gamma_best);
  std::ostringstream os;
  write_curve_csv(os, rows);
  EXPECT_EQ(os.str().rfind("T,gamma\n1,", 0), 0u);
  EXPECT_THROW(gain_vs_horizon(reference_plant_system(1.0),
                               [](double) { return reference_plant_iqc(); }, GainKind::InducedL2,
                               {2.0, 1.0}),
               std::invalid_argument);
}
