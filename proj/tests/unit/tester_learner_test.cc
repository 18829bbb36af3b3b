#include "htl/tester_learner.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "htl/datagen.h"
#include "test_util.h"

namespace htl {
namespace {

constexpr double kEpsilon = 0.25;

RunConfig Config(std::uint64_t seed) {
  RunConfig cfg;
  cfg.epsilon = kEpsilon;
  cfg.seed = seed;
  return cfg;
}

LabeledSampleSet Planted(std::size_t d, std::size_t n, MarginalKind marginal, NoiseKind noise,
                         double opt, std::uint64_t seed, UnitVector* v_star_out = nullptr) {
  Rng rng(seed * 7 + 1);
  const UnitVector v_star = UnitVector::Random(d, rng);
  if (v_star_out) *v_star_out = v_star;
  return Generate(d, n, MarginalFamily{marginal}, v_star, NoiseModel{noise, opt, std::nullopt}, seed);
}

TEST(ScheduleTest, RoundsAndScales) {
  EXPECT_EQ(LastRound(0.05), 5);
  EXPECT_EQ(LastRound(0.25), 2);
  EXPECT_EQ(LastRound(0.1), 4);
  EXPECT_DOUBLE_EQ(RoundDelta(0), 0.01);
  EXPECT_DOUBLE_EQ(RoundDelta(3), 0.00125);
  EXPECT_EQ(SelectionMinSamples(0.05), 1199u);
  EXPECT_THROW(LastRound(0.5), InputError);
}

TEST(ScheduleTest, WedgeRadii) {
  EXPECT_EQ(WedgeSchedule(0, 0.05), (std::vector<double>{0.05}));
  EXPECT_EQ(WedgeSchedule(0, 0.005), (std::vector<double>{0.005, 0.01}));
  EXPECT_EQ(WedgeSchedule(1, 0.005), (std::vector<double>{0.005}));
}

TEST(PlanBudgetTest, DisjointOrderedSlices) {
  const std::size_t n = RequiredSampleCount(8, 0.05);
  const BudgetPlan plan = PlanBudget(n, 8, 0.05);
  ASSERT_EQ(plan.rounds.size(), 6u);
  std::size_t cursor = 0;
  std::vector<SliceRange> all = {plan.weak};
  all.insert(all.end(), plan.rounds.begin(), plan.rounds.end());
  all.push_back(plan.wedge);
  all.push_back(plan.selection);
  for (const SliceRange& r : all) {
    EXPECT_GE(r.begin, cursor);
    cursor = r.begin + r.count;
  }
  EXPECT_LE(cursor, n);
  EXPECT_EQ(plan.weak.count, static_cast<std::size_t>(std::floor(0.25 * n)));
  for (std::size_t t = 0; t < plan.rounds.size(); ++t) {
    EXPECT_GE(plan.rounds[t].count * RoundDelta(static_cast<int>(t)), kPlannedAcceptedPerRound);
    if (t > 0) EXPECT_NEAR(plan.rounds[t].count, 2.0 * plan.rounds[t - 1].count, 2.0);
  }
}

TEST(PlanBudgetTest, ShortfallIsNamed) {
  const std::size_t n = RequiredSampleCount(8, 0.05);
  try {
    PlanBudget(n / 2, 8, 0.05);
    FAIL() << "expected a budget error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("localization round"), std::string::npos) << e.what();
  }
  EXPECT_THROW(PlanBudget(1000, 8, 0.05), InputError);
}

TEST(TestableLearnTest, LearnsCleanGaussian) {
  const std::size_t d = 4, n = RequiredSampleCount(d, kEpsilon);
  UnitVector v_star = UnitVector::Basis(d, 0);
  const LabeledSampleSet s = Planted(d, n, MarginalKind::kStandardGaussian, NoiseKind::kClean, 0.0, 1, &v_star);
  const LearnReport r = TestableLearn(s, Config(1));
  ASSERT_EQ(r.verdict, LearnVerdict::kLearned) << r.rejection_stage.value_or("");
  ASSERT_TRUE(r.hypothesis.has_value());
  EXPECT_EQ(r.rounds_planned, 3);
  EXPECT_EQ(r.rounds_completed, 3);
  EXPECT_EQ(r.candidates.size(), static_cast<std::size_t>(r.rounds_completed + 1));
  EXPECT_FALSE(r.rejection_stage.has_value());

  const LabeledSampleSet test = Planted(d, 200000, MarginalKind::kStandardGaussian, NoiseKind::kClean, 0.0, 1);
  EXPECT_LE(EmpiricalError(*r.hypothesis, test), kEpsilon);
  EXPECT_LE(Distance(r.hypothesis->normal, v_star), 0.05);
}

TEST(TestableLearnTest, SelectionIsReproducibleArgmin) {
  const std::size_t d = 4, n = RequiredSampleCount(d, kEpsilon);
  const LabeledSampleSet s = Planted(d, n, MarginalKind::kStandardGaussian, NoiseKind::kRandomFlip, 0.05, 2);
  const LearnReport r = TestableLearn(s, Config(2));
  ASSERT_EQ(r.verdict, LearnVerdict::kLearned);
  const SampleView held_out = s.view().Slice(r.plan.selection.begin, r.plan.selection.count);
  std::size_t best = 0;
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    const Candidate& c = r.candidates[i];
    ASSERT_TRUE(c.empirical_error.has_value());
    EXPECT_EQ(*c.empirical_error, EmpiricalError(Halfspace{c.direction}, held_out));
    EXPECT_DOUBLE_EQ(c.delta, RoundDelta(c.round));
    if (*c.empirical_error < *r.candidates[best].empirical_error) best = i;
  }
  EXPECT_EQ(r.hypothesis->normal, r.candidates[best].direction);
}

TEST(TestableLearnTest, RademacherRejectedAtWeakLearner) {
  const std::size_t d = 4, n = RequiredSampleCount(d, kEpsilon);
  const LabeledSampleSet s = Planted(d, n, MarginalKind::kRademacherCoords, NoiseKind::kClean, 0.0, 3);
  const LearnReport r = TestableLearn(s, Config(3));
  EXPECT_EQ(r.verdict, LearnVerdict::kRejectedNonGaussian);
  EXPECT_EQ(r.rejection_stage, std::optional<std::string>("weak_learner.moment_test"));
  EXPECT_FALSE(r.hypothesis.has_value());
  EXPECT_TRUE(r.candidates.empty());
}

TEST(TestableLearnTest, InsufficientBudgetIsInputError) {
  const LabeledSampleSet s = Planted(4, 50000, MarginalKind::kStandardGaussian, NoiseKind::kClean, 0.0, 4);
  EXPECT_THROW(TestableLearn(s, Config(4)), InputError);
}

TEST(TestableLearnTest, DeterministicGivenSeed) {
  const std::size_t d = 4, n = RequiredSampleCount(d, kEpsilon);
  const LabeledSampleSet s = Planted(d, n, MarginalKind::kStandardGaussian, NoiseKind::kBoundaryFlip, 0.02, 5);
  const LearnReport a = TestableLearn(s, Config(5));
  const LearnReport b = TestableLearn(s, Config(5));
  ASSERT_EQ(a.candidates.size(), b.candidates.size());
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    EXPECT_EQ(a.candidates[i].direction, b.candidates[i].direction);
  }
  EXPECT_EQ(a.acceptance_rates, b.acceptance_rates);
}

TEST(RunLocalizationTraceTest, StopsWhenStageCannotFundARound) {
  const std::size_t d = 4;
  UnitVector v_star = UnitVector::Basis(d, 0);
  std::uint64_t draw = 0;
  Rng rng(11);
  v_star = UnitVector::Random(d, rng);
  const SampleSource source = [&](std::size_t count) {
    return Generate(d, count, MarginalFamily{}, v_star, NoiseModel{}, 100 + draw++);
  };
  RunConfig cfg;
  cfg.epsilon = 0.05;
  const LocalizationTrace trace = RunLocalizationTrace(source, 400000, cfg);
  ASSERT_EQ(trace.verdict, LearnVerdict::kLearned);
  // 400000 delta_t >= 1200 for t = 0, 1 only.
  ASSERT_EQ(trace.directions.size(), 3u);
  EXPECT_EQ(trace.deltas, (std::vector<double>{0.01, 0.005}));
  EXPECT_EQ(draw, 3u);
  for (std::size_t t = 0; t < trace.directions.size(); ++t) {
    EXPECT_LE(Distance(trace.directions[t], v_star), RoundDelta(static_cast<int>(t))) << t;
  }
}

}  // namespace
}  // namespace htl
