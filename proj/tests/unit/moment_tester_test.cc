#include "htl/moment_tester.h"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"

namespace htl {
namespace {

std::vector<double> RademacherPoints(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> pts(n * d);
  for (double& x : pts) x = (rng() & 1) ? 1.0 : -1.0;
  return pts;
}

int CertifiedCount(std::size_t d, int k, std::uint64_t base_seed) {
  RunConfig cfg;
  int certified = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const std::vector<double> pts = testing::GaussianPoints(100000, d, base_seed + s);
    if (MomentMatchTest(PointView(pts, d), k, cfg).verdict == CertVerdict::kCertified) {
      ++certified;
    }
  }
  return certified;
}

TEST(MomentToleranceTest, StatisticalBand) {
  RunConfig cfg;
  const MonomialExponent m({4, 0});
  EXPECT_DOUBLE_EQ(MomentTolerance(m, 4, 10000, cfg), 6.0 * std::sqrt(96.0 / 10000.0));
}

TEST(MomentToleranceTest, StrictModeClosedForm) {
  RunConfig cfg;
  cfg.strict_moment_constant = 2.0;
  const MonomialExponent m({1, 1, 0});
  // (1 / (k d^k)) (1 / (C sqrt k))^{k+1} with k = 2, d = 3, C = 2.
  const double expected = (1.0 / (2.0 * 9.0)) * std::pow(1.0 / (2.0 * std::sqrt(2.0)), 3.0);
  EXPECT_NEAR(MomentTolerance(m, 2, 12345, cfg), expected, 1e-15);
}

TEST(MomentMatchTest, GaussianCertifiedAtDegreeFour) { EXPECT_GE(CertifiedCount(5, 4, 100), 19); }

TEST(MomentMatchTest, GaussianCertifiedAtDegreeTwo) { EXPECT_GE(CertifiedCount(5, 2, 100), 19); }

TEST(MomentMatchTest, GaussianCertifiedAtDimensionTen) { EXPECT_GE(CertifiedCount(10, 4, 500), 19); }

TEST(MomentMatchTest, RademacherRejectedAtPureFourthPower) {
  const std::vector<double> pts = RademacherPoints(100000, 5, 1);
  const MomentTestReport r = MomentMatchTest(PointView(pts, 5), 4, RunConfig{});
  EXPECT_EQ(r.verdict, CertVerdict::kRejectedNonGaussian);
  ASSERT_FALSE(r.worst_violations.empty());
  const MomentViolation& worst = r.worst_violations.front();
  EXPECT_EQ(worst.monomial.degree(), 4);
  int nonzero = 0;
  for (int e : worst.monomial.exponents()) nonzero += e != 0;
  EXPECT_EQ(nonzero, 1);
  EXPECT_DOUBLE_EQ(worst.empirical, 1.0);
  EXPECT_DOUBLE_EQ(worst.reference, 3.0);
}

TEST(MomentMatchTest, ReportShapeAndOrdering) {
  const std::vector<double> pts = testing::GaussianPoints(5000, 3, 7);
  const MomentTestReport r = MomentMatchTest(PointView(pts, 3), 4, RunConfig{});
  EXPECT_EQ(r.degree, 4);
  EXPECT_EQ(r.sample_count, 5000u);
  EXPECT_EQ(r.monomials_tested, 34u);
  ASSERT_EQ(r.worst_violations.size(), kMaxReportedViolations);
  EXPECT_DOUBLE_EQ(r.worst_violations.front().Ratio(), r.max_ratio);
  for (std::size_t i = 1; i < r.worst_violations.size(); ++i) {
    EXPECT_GE(r.worst_violations[i - 1].Ratio(), r.worst_violations[i].Ratio());
  }
}

TEST(MomentMatchTest, TiesKeepGradedLexOrder) {
  // Every monomial has the same ratio on Rademacher data in the odd-free
  // even-power group x_i^2 (empirical exactly 1 = reference): ratio 0.
  const std::vector<double> pts = RademacherPoints(1000, 2, 3);
  RunConfig cfg;
  cfg.k_cap = 2;
  const MomentTestReport r = MomentMatchTest(PointView(pts, 2), 2, cfg);
  std::vector<MonomialExponent> zero_ratio;
  for (const auto& v : r.worst_violations) {
    if (v.Ratio() == 0.0) zero_ratio.push_back(v.monomial);
  }
  ASSERT_EQ(zero_ratio.size(), 2u);
  EXPECT_EQ(zero_ratio[0], MonomialExponent({2, 0}));
  EXPECT_EQ(zero_ratio[1], MonomialExponent({0, 2}));
}

TEST(MomentMatchTest, VerdictMatchesPerMonomialCheck) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::vector<double> pts = testing::GaussianPoints(300, 2, seed);
    RunConfig cfg;
    cfg.slack_multiplier = 2.0;
    const MomentTestReport r = MomentMatchTest(PointView(pts, 2), 4, cfg);
    EXPECT_EQ(r.verdict == CertVerdict::kCertified, r.max_ratio <= 1.0);
  }
}

TEST(MomentMatchTest, MonotoneInSlack) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::vector<double> pts = testing::GaussianPoints(500, 3, 40 + seed);
    bool certified_before = false;
    for (double s : {1.0, 2.0, 3.0, 4.0, 6.0, 10.0}) {
      RunConfig cfg;
      cfg.slack_multiplier = s;
      const bool certified =
          MomentMatchTest(PointView(pts, 3), 4, cfg).verdict == CertVerdict::kCertified;
      if (certified_before) EXPECT_TRUE(certified) << seed << " " << s;
      certified_before = certified_before || certified;
    }
  }
}

TEST(MomentMatchTest, Deterministic) {
  const std::vector<double> pts = testing::GaussianPoints(2000, 4, 5);
  const MomentTestReport a = MomentMatchTest(PointView(pts, 4), 4, RunConfig{});
  const MomentTestReport b = MomentMatchTest(PointView(pts, 4), 4, RunConfig{});
  EXPECT_EQ(a.max_ratio, b.max_ratio);
  ASSERT_EQ(a.worst_violations.size(), b.worst_violations.size());
  for (std::size_t i = 0; i < a.worst_violations.size(); ++i) {
    EXPECT_EQ(a.worst_violations[i].monomial, b.worst_violations[i].monomial);
    EXPECT_EQ(a.worst_violations[i].empirical, b.worst_violations[i].empirical);
  }
}

TEST(MomentMatchTest, Preconditions) {
  const std::vector<double> pts = testing::GaussianPoints(99, 2, 1);
  EXPECT_THROW(MomentMatchTest(PointView(pts, 2), 2, RunConfig{}), InputError);
  const std::vector<double> more = testing::GaussianPoints(200, 2, 1);
  EXPECT_THROW(MomentMatchTest(PointView(more, 2), 5, RunConfig{}), InputError);
  EXPECT_THROW(MomentMatchTest(PointView(more, 2), 0, RunConfig{}), InputError);
}

}  // namespace
}  // namespace htl
