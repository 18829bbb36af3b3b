#include "htl/datagen.h"

#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "htl/moment_tester.h"

namespace htl {
namespace {

UnitVector Planted(std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  return UnitVector::Random(d, rng);
}

std::size_t Disagreements(const LabeledSampleSet& s, const UnitVector& v) {
  std::size_t count = 0;
  for (std::size_t j = 0; j < s.size(); ++j) count += Predict(Halfspace{v}, s.x(j)) != s.y(j);
  return count;
}

TEST(GenerateTest, CleanLabelsAreConsistent) {
  const UnitVector v = Planted(6, 1);
  const LabeledSampleSet s = Generate(6, 20000, MarginalFamily{}, v, NoiseModel{}, 1);
  EXPECT_EQ(EmpiricalError(Halfspace{v}, s), 0.0);
}

TEST(GenerateTest, RandomFlipRate) {
  const UnitVector v = Planted(5, 2);
  const LabeledSampleSet s = Generate(5, 100000, MarginalFamily{}, v,
                                      NoiseModel{NoiseKind::kRandomFlip, 0.1, std::nullopt}, 2);
  EXPECT_NEAR(EmpiricalError(Halfspace{v}, s), 0.1, 0.005);
}

TEST(GenerateTest, BoundaryFlipExactCountAtSmallestMargins) {
  const UnitVector v = Planted(3, 3);
  const std::size_t n = 12345;
  const LabeledSampleSet s = Generate(3, n, MarginalFamily{}, v,
                                      NoiseModel{NoiseKind::kBoundaryFlip, 0.1, std::nullopt}, 3);
  EXPECT_EQ(Disagreements(s, v), 1234u);
  // Every flipped point has a smaller margin than every unflipped one.
  double max_flipped = 0.0, min_kept = 1e300;
  for (std::size_t j = 0; j < n; ++j) {
    const double m = std::abs(v.Dot(s.x(j)));
    if (Predict(Halfspace{v}, s.x(j)) != s.y(j)) {
      max_flipped = std::max(max_flipped, m);
    } else {
      min_kept = std::min(min_kept, m);
    }
  }
  EXPECT_LE(max_flipped, min_kept);
}

TEST(GenerateTest, WedgeFlipCountAndDirection) {
  const std::size_t d = 4, n = 20000;
  const UnitVector v = UnitVector::Basis(d, 0);
  const UnitVector wedge = UnitVector::Basis(d, 2);
  const LabeledSampleSet s =
      Generate(d, n, MarginalFamily{}, v, NoiseModel{NoiseKind::kWedgeFlip, 0.05, wedge}, 4);
  EXPECT_EQ(Disagreements(s, v), 1000u);
  double flipped_mean = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (Predict(Halfspace{v}, s.x(j)) != s.y(j)) flipped_mean += s.x(j)[2] / 1000.0;
  }
  // Upper half of a roughly Gaussian band: mean ~ sqrt(2/pi) ~ 0.8.
  EXPECT_GT(flipped_mean, 0.5);
}

TEST(GenerateTest, NoiseNeverExceedsOptPlusSampling) {
  const std::size_t n = 50000;
  const UnitVector v = Planted(5, 5);
  for (NoiseKind kind : {NoiseKind::kRandomFlip, NoiseKind::kBoundaryFlip, NoiseKind::kWedgeFlip}) {
    for (double opt : {0.01, 0.1, 0.3}) {
      const LabeledSampleSet s =
          Generate(5, n, MarginalFamily{}, v, NoiseModel{kind, opt, std::nullopt}, 6);
      EXPECT_LE(EmpiricalError(Halfspace{v}, s), opt + 4.0 * std::sqrt(opt / n));
    }
  }
}

TEST(GenerateTest, RademacherCoordinatesArePlusMinusOne) {
  const LabeledSampleSet s = Generate(5, 1000, MarginalFamily{MarginalKind::kRademacherCoords},
                                      Planted(5, 1), NoiseModel{}, 7);
  std::set<double> values(s.points_data().begin(), s.points_data().end());
  EXPECT_EQ(values, (std::set<double>{-1.0, 1.0}));
}

TEST(GenerateTest, MarginalsHaveUnitVarianceExceptScaledAxis) {
  const std::size_t d = 3, n = 200000;
  for (MarginalKind kind : {MarginalKind::kStandardGaussian, MarginalKind::kRademacherCoords,
                            MarginalKind::kUniformCube, MarginalKind::kStudentT,
                            MarginalKind::kGaussianMixture, MarginalKind::kScaledGaussian}) {
    MarginalFamily m{kind};
    m.dof = 5.0;  // finite fourth moment keeps the variance estimate tight
    const LabeledSampleSet s = Generate(d, n, m, Planted(d, 2), NoiseModel{}, 8);
    for (std::size_t i = 0; i < d; ++i) {
      double sq = 0.0;
      for (std::size_t j = 0; j < n; ++j) sq += s.x(j)[i] * s.x(j)[i];
      const double expected = kind == MarginalKind::kScaledGaussian && i == m.axis ? 9.0 : 1.0;
      EXPECT_NEAR(sq / n, expected, 0.03 * expected) << ToString(kind) << " " << i;
    }
  }
}

int RejectedCount(MarginalFamily m, int k, std::size_t d) {
  RunConfig cfg;
  int rejected = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const LabeledSampleSet s = Generate(d, 100000, m, Planted(d, seed), NoiseModel{}, 50 + seed);
    rejected += MomentMatchTest(s.view().points(), k, cfg).verdict == CertVerdict::kRejectedNonGaussian;
  }
  return rejected;
}

TEST(GenerateTest, GaussianPassesDegreeFour) {
  EXPECT_LE(RejectedCount(MarginalFamily{}, 4, 8), 1);
}

TEST(GenerateTest, NonGaussianFamiliesFailAtDetectionDegree) {
  EXPECT_GE(RejectedCount(MarginalFamily{MarginalKind::kRademacherCoords}, 4, 8), 19);
  EXPECT_GE(RejectedCount(MarginalFamily{MarginalKind::kUniformCube}, 4, 8), 19);
  EXPECT_GE(RejectedCount(MarginalFamily{MarginalKind::kStudentT}, 4, 8), 19);
  MarginalFamily scaled{MarginalKind::kScaledGaussian};
  scaled.factor = 1.5;
  EXPECT_GE(RejectedCount(scaled, 2, 8), 19);
}

TEST(GenerateTest, BitIdenticalGivenSeed) {
  const UnitVector v = Planted(4, 9);
  const NoiseModel noise{NoiseKind::kRandomFlip, 0.1, std::nullopt};
  const LabeledSampleSet a = Generate(4, 5000, MarginalFamily{MarginalKind::kStudentT}, v, noise, 10);
  const LabeledSampleSet b = Generate(4, 5000, MarginalFamily{MarginalKind::kStudentT}, v, noise, 10);
  EXPECT_EQ(a.points_data(), b.points_data());
  EXPECT_EQ(a.labels_data(), b.labels_data());
  const LabeledSampleSet c = Generate(4, 5000, MarginalFamily{MarginalKind::kStudentT}, v, noise, 11);
  EXPECT_NE(a.points_data(), c.points_data());
}

TEST(GenerateTest, InvalidParameters) {
  const UnitVector v = Planted(3, 1);
  EXPECT_THROW(Generate(1, 10, MarginalFamily{}, UnitVector::Basis(2, 0), NoiseModel{}, 1), InputError);
  EXPECT_THROW(Generate(3, 0, MarginalFamily{}, v, NoiseModel{}, 1), InputError);
  EXPECT_THROW(Generate(4, 10, MarginalFamily{}, v, NoiseModel{}, 1), InputError);
  EXPECT_THROW(Generate(3, 10, MarginalFamily{}, v, NoiseModel{NoiseKind::kClean, 0.1, std::nullopt}, 1),
               InputError);
  EXPECT_THROW(Generate(3, 10, MarginalFamily{}, v, NoiseModel{NoiseKind::kRandomFlip, 0.5, std::nullopt}, 1),
               InputError);
  MarginalFamily bad{MarginalKind::kStudentT};
  bad.dof = 2.5;
  EXPECT_THROW(Generate(3, 10, bad, v, NoiseModel{}, 1), InputError);
  MarginalFamily axis{MarginalKind::kScaledGaussian};
  axis.axis = 3;
  EXPECT_THROW(Generate(3, 10, axis, v, NoiseModel{}, 1), InputError);
  axis.axis = 0;
  axis.factor = 0.0;
  EXPECT_THROW(Generate(3, 10, axis, v, NoiseModel{}, 1), InputError);
}

TEST(NamesTest, RoundTrip) {
  for (MarginalKind k : {MarginalKind::kStandardGaussian, MarginalKind::kRademacherCoords,
                         MarginalKind::kUniformCube, MarginalKind::kScaledGaussian,
                         MarginalKind::kStudentT, MarginalKind::kGaussianMixture}) {
    EXPECT_EQ(ParseMarginalKind(ToString(k)), k);
  }
  for (NoiseKind k : {NoiseKind::kClean, NoiseKind::kRandomFlip, NoiseKind::kBoundaryFlip,
                      NoiseKind::kWedgeFlip}) {
    EXPECT_EQ(ParseNoiseKind(ToString(k)), k);
  }
  EXPECT_THROW(ParseMarginalKind("laplace"), InputError);
  EXPECT_THROW(ParseNoiseKind("flip"), InputError);
}

}  // namespace
}  // namespace htl
