#include "htl/localized_update.h"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "htl/datagen.h"
#include "htl/localization.h"
#include "test_util.h"

namespace htl {
namespace {

const double kEta = 1.0 / (20000.0 * 4.0);

TEST(LocalizedEtaTest, UsesSquaredConstant) {
  RunConfig cfg;
  cfg.c_a = 3.0;
  EXPECT_DOUBLE_EQ(LocalizedEta(cfg), 1.0 / 180000.0);
  EXPECT_DOUBLE_EQ(LocalizedEta(RunConfig{}), kEta);
}

TEST(LocalizedUpdateTest, HalvesTheDistance) {
  const std::size_t d = 8;
  const UnitVector v_star = UnitVector::Basis(d, 0);
  std::vector<double> start(d, 0.0);
  start[0] = 1.0;
  start[1] = 0.008;
  const UnitVector v = Normalize(start);
  int halved = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const LabeledSampleSet s = testing::GaussianHalfspaceSet(1000000, v_star.coords(), 40 + seed);
    RunConfig cfg;
    cfg.seed = seed;
    Rng rng(seed);
    const UpdateOutcome out = LocalizedUpdate(s, v, 0.01, kEta, cfg, rng);
    halved += out.verdict == UpdateVerdict::kUpdated && Distance(*out.new_direction, v_star) <= 0.005;
  }
  EXPECT_GE(halved, 19);
}

TEST(LocalizedUpdateTest, UniformProjectionFailsRateCheck) {
  // Rate ~ integral of exp(-t^2 (1/delta^2 - 1) / 2) / 6 over [-3, 3]
  // ~ delta sqrt(2 pi) / 6 ~ 0.0042 < delta / 2.
  const std::size_t d = 4, n = 1000000;
  std::vector<double> pts = testing::GaussianPoints(n, d, 5);
  Rng rng(6);
  std::uniform_real_distribution<double> uniform(-3.0, 3.0);
  for (std::size_t j = 0; j < n; ++j) pts[j * d] = uniform(rng);
  const LabeledSampleSet s(pts, testing::HalfspaceLabels(pts, testing::E1(d)), d);
  const UpdateOutcome out = LocalizedUpdate(s, UnitVector::Basis(d, 0), 0.01, kEta, RunConfig{}, rng);
  EXPECT_EQ(out.verdict, UpdateVerdict::kRejectedNonGaussian);
  EXPECT_EQ(out.rejection_reason, "acceptance_rate");
  EXPECT_NEAR(out.acceptance_rate, 0.01 * std::sqrt(2.0 * std::numbers::pi) / 6.0, 0.0005);
  EXPECT_FALSE(out.inner_outcome.has_value());
}

TEST(LocalizedUpdateTest, HalfScaleRateProceedsToInnerLearner) {
  const LabeledSampleSet s = testing::GaussianHalfspaceSet(100000, testing::E1(5), 8);
  Rng rng(1);
  const UpdateOutcome out = LocalizedUpdate(s, UnitVector::Basis(5, 0), 0.5, kEta, RunConfig{}, rng);
  EXPECT_NEAR(out.acceptance_rate, 0.5, 0.01);
  EXPECT_TRUE(out.inner_outcome.has_value());
  EXPECT_EQ(out.verdict, UpdateVerdict::kUpdated);
}

TEST(LocalizedUpdateTest, TooFewExpectedAcceptancesIsInputError) {
  const LabeledSampleSet s = testing::GaussianHalfspaceSet(99999, testing::E1(3), 1);
  Rng rng(1);
  EXPECT_THROW(LocalizedUpdate(s, UnitVector::Basis(3, 0), 0.01, kEta, RunConfig{}, rng),
               InputError);
}

TEST(LocalizedUpdateTest, RadialMarginalFailsInnerMomentTest) {
  // Rademacher coordinates orthogonal to v survive localization untouched,
  // so the inner degree-4 test sees them.
  const std::size_t d = 4, n = 400000;
  std::vector<double> pts = testing::GaussianPoints(n, d, 2);
  Rng rng(3);
  for (std::size_t j = 0; j < n; ++j) pts[j * d + 2] = (rng() & 1) ? 1.0 : -1.0;
  const LabeledSampleSet s(pts, testing::HalfspaceLabels(pts, testing::E1(d)), d);
  const UpdateOutcome out = LocalizedUpdate(s, UnitVector::Basis(d, 0), 0.05, kEta, RunConfig{}, rng);
  EXPECT_EQ(out.verdict, UpdateVerdict::kRejectedNonGaussian);
  EXPECT_EQ(out.rejection_reason, "moment_test");
}

TEST(LocalizedUpdateTest, DeterministicGivenSeed) {
  const LabeledSampleSet s = testing::GaussianHalfspaceSet(200000, testing::E1(4), 4);
  const UnitVector v = Normalize(std::vector<double>{1.0, 0.005, 0.0, 0.0});
  Rng a(9), b(9);
  const UpdateOutcome x = LocalizedUpdate(s, v, 0.01, kEta, RunConfig{}, a);
  const UpdateOutcome y = LocalizedUpdate(s, v, 0.01, kEta, RunConfig{}, b);
  EXPECT_EQ(x.acceptance_rate, y.acceptance_rate);
  ASSERT_TRUE(x.new_direction && y.new_direction);
  EXPECT_EQ(*x.new_direction, *y.new_direction);
}

TEST(LocalizedUpdateTest, NoiseAmplificationWithinTwoOptOverDelta) {
  const std::size_t d = 4, n = 1000000;
  const double delta = 0.02;
  const UnitVector v_star = UnitVector::Basis(d, 0);
  for (NoiseKind kind : {NoiseKind::kRandomFlip, NoiseKind::kBoundaryFlip}) {
    const LabeledSampleSet s =
        Generate(d, n, MarginalFamily{}, v_star, NoiseModel{kind, 0.002, std::nullopt}, 7);
    const double opt_emp = EmpiricalError(Halfspace{v_star}, s);
    Rng rng(3);
    const LocalizedSample loc = RejectionSample(s, v_star, delta, rng);
    const double amplified = EmpiricalError(Halfspace{v_star}, loc.accepted);
    const double slack = 4.0 * std::sqrt(0.25 / static_cast<double>(loc.accepted.size()));
    EXPECT_LE(amplified, 2.0 * opt_emp / delta + slack) << ToString(kind);
  }
}

}  // namespace
}  // namespace htl
