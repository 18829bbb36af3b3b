// The full tester-learner: weak learn an initial direction, refine it over
// ceil(log2(1/epsilon)) + 1 localization rounds with halving scale, certify
// every candidate with the wedge test, and return the candidate with the
// smallest error on a held-out selection slice.
//
// The master sample set is cut up front into disjoint slices so each stage
// sees fresh samples:
//   25% weak learning | 60% localization rounds | 10% wedge tests | 5% selection
// Round t's share of the localization budget is proportional to 1/delta_t,
// which keeps the expected number of accepted samples equal across rounds.

#ifndef HTL_TESTER_LEARNER_H_
#define HTL_TESTER_LEARNER_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "htl/core_types.h"
#include "htl/localized_update.h"
#include "htl/weak_learner.h"
#include "htl/wedge_tester.h"

namespace htl {

// Planned expected acceptances per round. Sits about six binomial standard
// deviations above kMinWeakLearnSamples so the inner learner's sample floor
// holds on Gaussian data.
inline constexpr double kPlannedAcceptedPerRound = 1200.0;

inline constexpr double kWeakFraction = 0.25;
inline constexpr double kLocalizationFraction = 0.60;
inline constexpr double kWedgeFraction = 0.10;

// Empirical constant C in "held-out error <= C opt + epsilon", fitted once on
// Gaussian runs with seeds disjoint from the acceptance suite, then frozen.
inline constexpr double kErrorConstant = 1.0;

struct SliceRange {
  std::size_t begin = 0;
  std::size_t count = 0;
};

struct BudgetPlan {
  SliceRange weak;
  std::vector<SliceRange> rounds;
  SliceRange wedge;
  SliceRange selection;
  double expected_accepted_per_round = 0.0;
};

// delta_t = (1/100) 2^{-t}.
double RoundDelta(int t);
// ceil(log2(1/epsilon)); rounds run for t = 0 .. LastRound(epsilon).
int LastRound(double epsilon);
// ceil(ln(1/epsilon) / epsilon^2).
std::size_t SelectionMinSamples(double epsilon);
// Wedge radii a candidate from round t must pass: max(delta_t, epsilon) and
// epsilon (deduplicated, ascending).
std::vector<double> WedgeSchedule(int t, double epsilon);

// Throws InputError naming the shortfall when n cannot fund every stage.
BudgetPlan PlanBudget(std::size_t n, std::size_t d, double epsilon);
// Smallest n for which PlanBudget succeeds.
std::size_t RequiredSampleCount(std::size_t d, double epsilon);

struct Candidate {
  int round = 0;
  UnitVector direction;
  double delta = 0.0;
  std::optional<double> empirical_error;  // set once selection runs
};

struct WedgeRecord {
  int round = 0;
  double eta = 0.0;
  CertVerdict verdict = CertVerdict::kCertified;
  double tv_discrepancy = 0.0;
  double worst_slab_eigenvalue = 0.0;
  std::string failed_check;
};

struct LearnReport {
  LearnVerdict verdict = LearnVerdict::kRejectedNonGaussian;
  std::optional<Halfspace> hypothesis;  // present iff kLearned
  std::vector<Candidate> candidates;
  std::optional<std::string> rejection_stage;
  std::optional<int> rejection_round;
  std::size_t samples_consumed = 0;
  int rounds_planned = 0;
  int rounds_completed = 0;
  double epsilon = 0.0;
  double tau = 0.0;
  std::size_t dim = 0;
  RunConfig config;
  BudgetPlan plan;
  std::vector<double> acceptance_rates;
  std::vector<WedgeRecord> wedge_tests;
  // Wall-clock seconds per stage; kept out of the deterministic report.
  std::map<std::string, double> stage_seconds;
};

LearnReport TestableLearn(const SampleView& samples, const RunConfig& cfg);

// Draws `count` fresh samples.
using SampleSource = std::function<LabeledSampleSet(std::size_t count)>;

struct LocalizationTrace {
  LearnVerdict verdict = LearnVerdict::kRejectedNonGaussian;
  // v^(0), v^(1), ...: the weak learner's output followed by each round's.
  std::vector<UnitVector> directions;
  std::vector<double> deltas;  // delta_t of each completed round
  std::optional<std::string> rejection_stage;
};

// Weak learning followed by localization rounds t = 0 .. LastRound(epsilon),
// each stage on `stage_samples` fresh samples from `source`. Rounds stop
// early, without rejecting, once stage_samples * delta_t falls below
// kPlannedAcceptedPerRound.
LocalizationTrace RunLocalizationTrace(const SampleSource& source, std::size_t stage_samples,
                                       const RunConfig& cfg);

}  // namespace htl

#endif  // HTL_TESTER_LEARNER_H_
