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
#include <complex>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "ltviqc/iqc/extended_system.hpp"
#include "ltviqc/iqc/filter.hpp"
#include "ltviqc/iqc/multiplier.hpp"
#include "ltviqc/iqc/robust_cost.hpp"
#include "ltviqc/iqc/serialization.hpp"
#include "ltviqc/studies/reference_plant.hpp"

using namespace ltviqc;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorSignal sine(double T, std::size_t n, double gain = 1.0) {
  const TimeGrid g = TimeGrid::Uniform(T, n);
  std::vector<VectorXd> s;
  for (double t : g.points()) s.push_back(VectorXd::Constant(1, gain * std::sin(t)));
  return VectorSignal(g, s);
}

MatrixXd psd(int n, double shift) {
  MatrixXd L = MatrixXd::Random(n, n);
  return L * L.transpose() + shift * MatrixXd::Identity(n, n);
}

}  // namespace

// Psi11(s) = [1; 1/(s + p)] on each channel
TEST(IqcFilterOracle, UnitNormTransfer) {
  const IqcSpec spec = make_unit_norm_lti_iqc(1, 10.0);
  const std::complex<double> s(0.0, 3.0);
  const Eigen::MatrixXcd G = spec.filter.transfer(s);
  ASSERT_EQ(G.rows(), 4);
  ASSERT_EQ(G.cols(), 2);
  const std::complex<double> lag = 1.0 / (s + 10.0);
  EXPECT_NEAR(std::abs(G(0, 0) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(G(1, 0) - lag), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(G(2, 1) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(G(3, 1) - lag), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(G(0, 1)) + std::abs(G(1, 1)) + std::abs(G(2, 0)) + std::abs(G(3, 0)), 0.0,
              1e-14);
}

// Psi = I, M = diag(m, -m), w = 0.5 v: value = m (1 - 0.25) |v|^2, |v|^2 = pi / 2
TEST(IqcCheckOracle, StaticGainClosedForm) {
  const IqcSpec spec = make_unit_norm_lti_iqc(0, 1.0);
  const double T = std::numbers::pi;
  const MatrixSignal M = spec.param.assemble(spec.param.pack({MatrixXd::Constant(1, 1, 2.0)}), T);
  const double value = iqc_check(spec.filter, M, sine(T, 20001), sine(T, 20001, 0.5));
  EXPECT_NEAR(value, 2.0 * 0.75 * std::numbers::pi / 2, 1e-7);
}

TEST(IqcCheck, NormAboveOneCanViolate) {
  const IqcSpec spec = make_unit_norm_lti_iqc(1, 5.0);
  const double T = 4.0;
  const MatrixSignal M = spec.param.assemble(spec.param.pack({MatrixXd::Identity(2, 2)}), T);
  EXPECT_LT(iqc_check(spec.filter, M, sine(T, 4001), sine(T, 4001, 2.0)), 0.0);
  EXPECT_GT(iqc_check(spec.filter, M, sine(T, 4001), sine(T, 4001, -0.9)), 0.0);
}

TEST(IqcCheck, DimensionMismatchThrows) {
  const IqcSpec spec = make_unit_norm_lti_iqc(1, 5.0);
  const MatrixSignal M = MatrixSignal::Constant(MatrixXd::Identity(3, 3), 1.0);
  EXPECT_THROW(iqc_check(spec.filter, M, sine(1.0, 11), sine(1.0, 11)), std::invalid_argument);
}

TEST(IqcFilter, RejectsUnstableOrInconsistent) {
  const MatrixXd one = MatrixXd::Ones(1, 1);
  EXPECT_THROW(IqcFilter(one, one, one, one, one, one), std::invalid_argument);
  EXPECT_THROW(IqcFilter(-one, MatrixXd::Ones(2, 1), one, one, one, one), std::invalid_argument);
}

TEST(MultiplierParam, PackUnpackRoundTrip) {
  const IqcSpec spec = make_unit_norm_lti_iqc(2, 3.0);
  const MatrixXd M11 = psd(3, 0.1);
  const VectorXd vals = spec.param.pack({M11});
  EXPECT_EQ(vals.size(), 6);
  EXPECT_TRUE(spec.param.unpack(vals).front().isApprox(M11));
  const MatrixXd M = spec.param.assemble(vals, 1.0)(0.5);
  EXPECT_TRUE(M.topLeftCorner(3, 3).isApprox(M11));
  EXPECT_TRUE(M.bottomRightCorner(3, 3).isApprox(-M11));
  EXPECT_NEAR(M.topRightCorner(3, 3).norm(), 0.0, 1e-15);
}

TEST(MultiplierParam, FeasibilityAndProjection) {
  const IqcSpec spec = make_unit_norm_lti_iqc(1, 3.0);
  MatrixXd bad(2, 2);
  bad << 1.0, 0.0, 0.0, -0.5;
  const VectorXd vals = spec.param.pack({bad});
  EXPECT_FALSE(spec.param.feasible(vals));
  const VectorXd proj = spec.param.project(vals);
  EXPECT_TRUE(spec.param.feasible(proj));
  EXPECT_NEAR(spec.param.unpack(proj).front()(1, 1), 0.0, 1e-12);
}

TEST(MultiplierParam, TimeVaryingScalarIsHatInterpolated) {
  const TimeGrid g = TimeGrid::Uniform(2.0, 3);
  const IqcSpec spec = make_tv_real_iqc(g);
  VectorXd samples(3);
  samples << 1.0, 3.0, 0.0;
  const VectorXd vals = spec.param.pack({samples});
  const MatrixSignal M = spec.param.assemble(vals, 2.0);
  EXPECT_NEAR(M(0.5)(0, 0), 2.0, 1e-14);
  EXPECT_NEAR(M(0.5)(1, 1), -2.0, 1e-14);
  EXPECT_NEAR(M(1.5)(0, 0), 1.5, 1e-14);
  samples(2) = -1.0;
  EXPECT_FALSE(spec.param.feasible(spec.param.pack({samples})));
}

TEST(MultiplierParam, ConicCombination) {
  const IqcSpec a = make_unit_norm_lti_iqc(1, 3.0);
  const IqcSpec b = make_tv_real_iqc(TimeGrid::Uniform(1.0, 4));
  const IqcSpec c = conic_combine({a, b});
  EXPECT_EQ(c.param.n_z(), a.param.n_z() + b.param.n_z());
  EXPECT_EQ(c.param.num_variables(), a.param.num_variables() + b.param.num_variables());
  EXPECT_EQ(c.filter.n_z(), a.filter.n_z() + b.filter.n_z());
  EXPECT_EQ(c.filter.n_psi(), a.filter.n_psi() + b.filter.n_psi());
}

TEST(ExtendedSystem, Dimensions) {
  const PartitionedLtvSystem G = reference_plant_system(2.0);
  const IqcSpec spec = reference_plant_iqc();
  const ExtendedSystem ext = extend_system(G, spec.filter);
  EXPECT_EQ(ext.nG, G.nG());
  EXPECT_EQ(ext.n_psi, spec.filter.n_psi());
  EXPECT_EQ(ext.n(), G.nG() + spec.filter.n_psi());
  EXPECT_EQ(ext.nz(), spec.filter.n_z());
  EXPECT_EQ(ext.n_in(), G.nw() + G.nd());
  EXPECT_DOUBLE_EQ(ext.horizon(), 2.0);
}

// Filter inputs are (v, w) = (G's uncertainty output, Delta's output): the
// feedthrough from w must reach z unchanged.
TEST(ExtendedSystem, FeedthroughFromW) {
  const PartitionedLtvSystem G = reference_plant_system(1.0);
  const IqcSpec spec = make_unit_norm_lti_iqc(0, 1.0);
  const ExtendedSystem ext = extend_system(G, spec.filter);
  const MatrixXd D1 = ext.D1(0.0);
  EXPECT_NEAR(D1(1, 0), 1.0, 1e-15);  // z2 = w
  EXPECT_NEAR(D1(0, 0), G.D11(0.0)(0, 0), 1e-15);
}

TEST(RobustCost, GammaAffineMatchesDirectCost) {
  const PartitionedLtvSystem G = reference_plant_system(1.0);
  const IqcSpec spec = reference_plant_iqc();
  const ExtendedSystem ext = extend_system(G, spec.filter);
  const MatrixSignal M = spec.param.assemble(spec.param.pack({psd(2, 0.5)}), 1.0);
  const double gamma = 1.7;
  const QuadraticCost direct = merge_iqc_into_cost(robust_l2_cost(ext, gamma), ext, M);
  const QuadraticCost affine = robust_cost_data(ext, GainKind::InducedL2, M).at(gamma);
  for (double t : {0.0, 0.33, 1.0}) {
    const CostBlocks a = direct.at(t), b = affine.at(t);
    EXPECT_TRUE(a.Q.isApprox(b.Q, 1e-12));
    EXPECT_TRUE(a.S.isApprox(b.S, 1e-12));
    EXPECT_TRUE(a.R.isApprox(b.R, 1e-12));
  }
}

TEST(IqcSerialization, ParsesAndRejects) {
  using nlohmann::json;
  const IqcSpec s = iqc_spec_from_json(json::parse(R"({"type":"unit_norm_lti","v":2,"p":4})"), 1.0);
  EXPECT_EQ(s.filter.n_z(), 6);
  const IqcSpec c = iqc_spec_from_json(
      json::parse(R"({"type":"conic","parts":[{"type":"unit_norm_lti","v":0,"p":1},
                                              {"type":"tv_real","points":5}]})"),
      2.0);
  EXPECT_EQ(c.param.n_z(), 4);
  EXPECT_THROW(iqc_spec_from_json(json::parse(R"({"type":"unit_norm_lti","v":1,"p":4,"x":1})"), 1.0),
               std::invalid_argument);
  EXPECT_THROW(validate_iqc_json(json::parse(R"({"type":"nope"})")), std::invalid_argument);
  EXPECT_THROW(validate_iqc_json(json::parse(R"({"type":"unit_norm_lti","v":-1,"p":4})")),
               std::invalid_argument);
}
