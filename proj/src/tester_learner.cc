#include "htl/tester_learner.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace htl {
namespace {

class StageTimer {
 public:
  StageTimer(std::map<std::string, double>& sink, std::string stage)
      : sink_(sink), stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
    sink_[stage_] += dt.count();
  }

 private:
  std::map<std::string, double>& sink_;
  std::string stage_;
  std::chrono::steady_clock::time_point start_;
};

void CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw InputError("epsilon must be in (0, 1/2)");
}

std::string WedgeCheckName(const FailedWedgeCheck& f) {
  return f.check == WedgeCheck::kTv ? "tv" : "slab_moment";
}

// Sums of 1/delta_t over the planned rounds.
double RoundWeightTotal(int last_round) {
  double total = 0.0;
  for (int t = 0; t <= last_round; ++t) total += 1.0 / RoundDelta(t);
  return total;
}

struct RoundsResult {
  bool rejected = false;
  std::string stage;
  int round = 0;
};

// Runs rounds t = 0 .. last_round starting from directions.back(), appending
// each refined direction. `slice(t)` yields round t's samples; a nullopt
// slice ends the loop early without rejecting.
RoundsResult RunRounds(std::vector<UnitVector>& directions, int last_round, double eta,
                       const RunConfig& stage_cfg, Rng& rng,
                       const std::function<std::optional<SampleView>(int)>& slice,
                       std::vector<double>* rates) {
  for (int t = 0; t <= last_round; ++t) {
    const auto samples = slice(t);
    if (!samples) break;
    const UpdateOutcome update =
        LocalizedUpdate(*samples, directions.back(), RoundDelta(t), eta, stage_cfg, rng);
    if (rates) rates->push_back(update.acceptance_rate);
    if (update.verdict != UpdateVerdict::kUpdated) {
      return {true, "localized_update." + update.rejection_reason, t};
    }
    directions.push_back(*update.new_direction);
  }
  return {};
}

}  // namespace

double RoundDelta(int t) { return 0.01 * std::ldexp(1.0, -t); }

int LastRound(double epsilon) {
  CheckEpsilon(epsilon);
  return static_cast<int>(std::ceil(std::log2(1.0 / epsilon)));
}

std::size_t SelectionMinSamples(double epsilon) {
  CheckEpsilon(epsilon);
  return static_cast<std::size_t>(std::ceil(std::log(1.0 / epsilon) / (epsilon * epsilon)));
}

std::vector<double> WedgeSchedule(int t, double epsilon) {
  CheckEpsilon(epsilon);
  const double own = std::max(RoundDelta(t), epsilon);
  if (own == epsilon) return {epsilon};
  return {epsilon, own};
}

BudgetPlan PlanBudget(std::size_t n, std::size_t d, double epsilon) {
  CheckEpsilon(epsilon);
  if (d < 2) throw InputError("dimension must be at least 2");
  const int last = LastRound(epsilon);
  const auto nd = static_cast<double>(n);

  BudgetPlan plan;
  const auto weak = static_cast<std::size_t>(std::floor(kWeakFraction * nd));
  const auto loc = static_cast<std::size_t>(std::floor(kLocalizationFraction * nd));
  const auto wedge = static_cast<std::size_t>(std::floor(kWedgeFraction * nd));
  const std::size_t selection = n - weak - loc - wedge;

  std::size_t cursor = 0;
  plan.weak = {cursor, weak};
  cursor += weak;
  const double total_weight = RoundWeightTotal(last);
  std::size_t loc_used = 0;
  for (int t = 0; t <= last; ++t) {
    const auto share = static_cast<std::size_t>(
        std::floor(static_cast<double>(loc) * (1.0 / RoundDelta(t)) / total_weight));
    plan.rounds.push_back({cursor + loc_used, share});
    loc_used += share;
  }
  cursor += loc;
  plan.wedge = {cursor, wedge};
  cursor += wedge;
  plan.selection = {cursor, selection};
  plan.expected_accepted_per_round = static_cast<double>(loc) / total_weight;

  std::string shortfall;
  if (weak < kMinWeakLearnSamples) shortfall = "weak-learning slice";
  for (int t = 0; t <= last && shortfall.empty(); ++t) {
    if (static_cast<double>(plan.rounds[static_cast<std::size_t>(t)].count) * RoundDelta(t) <
        kPlannedAcceptedPerRound) {
      shortfall = "localization round " + std::to_string(t);
    }
  }
  if (shortfall.empty() && wedge < WedgeMinSamples(epsilon)) shortfall = "wedge slice";
  if (shortfall.empty() && selection < SelectionMinSamples(epsilon)) {
    shortfall = "selection slice";
  }
  if (!shortfall.empty()) {
    throw InputError("sample budget insufficient for the " + shortfall + ": n = " +
                     std::to_string(n) + ", need at least " +
                     std::to_string(RequiredSampleCount(d, epsilon)));
  }
  return plan;
}

std::size_t RequiredSampleCount(std::size_t /*d*/, double epsilon) {
  const int last = LastRound(epsilon);
  const double loc = kPlannedAcceptedPerRound * RoundWeightTotal(last) / kLocalizationFraction;
  const double weak = static_cast<double>(kMinWeakLearnSamples) / kWeakFraction;
  const double wedge = static_cast<double>(WedgeMinSamples(epsilon)) / kWedgeFraction;
  const double sel = static_cast<double>(SelectionMinSamples(epsilon)) /
                     (1.0 - kWeakFraction - kLocalizationFraction - kWedgeFraction);
  auto n = static_cast<std::size_t>(std::ceil(std::max({loc, weak, wedge, sel})));
  // Flooring in the per-round shares can leave a round a few samples short.
  n += static_cast<std::size_t>(std::ceil(RoundWeightTotal(last) / kLocalizationFraction)) + 64;
  return n;
}

LearnReport TestableLearn(const SampleView& samples, const RunConfig& cfg) {
  cfg.Validate();
  CheckEpsilon(cfg.epsilon);
  LearnReport report;
  report.config = cfg;
  report.epsilon = cfg.epsilon;
  report.tau = cfg.tau;
  report.dim = samples.dim();
  report.plan = PlanBudget(samples.size(), samples.dim(), cfg.epsilon);
  const int last = LastRound(cfg.epsilon);
  report.rounds_planned = last + 1;

  // Failure budget split evenly over every tester invocation.
  std::size_t wedge_invocations = 0;
  for (int t = 0; t <= last + 1; ++t) wedge_invocations += WedgeSchedule(t, cfg.epsilon).size();
  RunConfig stage_cfg = cfg;
  stage_cfg.tau = cfg.tau / static_cast<double>(1 + report.rounds_planned + wedge_invocations);

  const double eta = LocalizedEta(cfg);
  Rng rng(cfg.seed);
  const auto slice = [&](const SliceRange& r) { return samples.Slice(r.begin, r.count); };

  // Stage 1: initial direction.
  std::vector<UnitVector> directions;
  {
    StageTimer timer(report.stage_seconds, "weak_learner");
    const WeakLearnOutcome weak = WeakProperLearn(slice(report.plan.weak), eta, stage_cfg, rng());
    report.samples_consumed += report.plan.weak.count;
    if (weak.verdict != LearnVerdict::kLearned) {
      report.rejection_stage = "weak_learner." + weak.rejection_reason;
      return report;
    }
    directions.push_back(*weak.direction);
  }

  const auto record_candidates = [&]() {
    for (std::size_t t = 0; t < directions.size(); ++t) {
      report.candidates.push_back({static_cast<int>(t), directions[t],
                                   RoundDelta(static_cast<int>(t)), std::nullopt});
    }
  };

  // Stage 2: localization rounds.
  {
    StageTimer timer(report.stage_seconds, "localization");
    const RoundsResult rounds = RunRounds(
        directions, last, eta, stage_cfg, rng,
        [&](int t) -> std::optional<SampleView> {
          const SliceRange& r = report.plan.rounds[static_cast<std::size_t>(t)];
          report.samples_consumed += r.count;
          return slice(r);
        },
        &report.acceptance_rates);
    report.rounds_completed = static_cast<int>(directions.size()) - 1;
    if (rounds.rejected) {
      record_candidates();
      report.rejection_stage = rounds.stage;
      report.rejection_round = rounds.round;
      return report;
    }
  }
  record_candidates();

  // Stage 3: wedge certification of every candidate.
  {
    StageTimer timer(report.stage_seconds, "wedge_tests");
    const PointView wedge_points = slice(report.plan.wedge).points();
    report.samples_consumed += report.plan.wedge.count;
    for (const Candidate& c : report.candidates) {
      for (double radius : WedgeSchedule(c.round, cfg.epsilon)) {
        const WedgeVerdict w = WedgeBoundTest(wedge_points, c.direction, radius, stage_cfg);
        report.wedge_tests.push_back({c.round, radius, w.verdict, w.tv_discrepancy,
                                      w.worst_slab_eigenvalue,
                                      w.failed_check ? WedgeCheckName(*w.failed_check) : ""});
        if (w.verdict != CertVerdict::kCertified) {
          report.rejection_stage = "wedge_test." + WedgeCheckName(*w.failed_check);
          report.rejection_round = c.round;
          return report;
        }
      }
    }
  }

  // Stage 4: selection by held-out empirical error; ties go to the earlier round.
  {
    StageTimer timer(report.stage_seconds, "selection");
    const SampleView held_out = slice(report.plan.selection);
    report.samples_consumed += report.plan.selection.count;
    std::size_t best = 0;
    for (std::size_t i = 0; i < report.candidates.size(); ++i) {
      Candidate& c = report.candidates[i];
      c.empirical_error = EmpiricalError(Halfspace{c.direction}, held_out);
      if (*c.empirical_error < *report.candidates[best].empirical_error) best = i;
    }
    report.hypothesis = Halfspace{report.candidates[best].direction};
  }
  report.verdict = LearnVerdict::kLearned;
  return report;
}

LocalizationTrace RunLocalizationTrace(const SampleSource& source, std::size_t stage_samples,
                                       const RunConfig& cfg) {
  cfg.Validate();
  CheckEpsilon(cfg.epsilon);
  const int last = LastRound(cfg.epsilon);
  RunConfig stage_cfg = cfg;
  stage_cfg.tau = cfg.tau / static_cast<double>(2 + last);
  const double eta = LocalizedEta(cfg);
  Rng rng(cfg.seed);

  LocalizationTrace trace;
  std::optional<LabeledSampleSet> held;
  held.emplace(source(stage_samples));
  const WeakLearnOutcome weak = WeakProperLearn(*held, eta, stage_cfg, rng());
  if (weak.verdict != LearnVerdict::kLearned) {
    trace.rejection_stage = "weak_learner." + weak.rejection_reason;
    return trace;
  }
  trace.directions.push_back(*weak.direction);

  const RoundsResult rounds = RunRounds(
      trace.directions, last, eta, stage_cfg, rng,
      [&](int t) -> std::optional<SampleView> {
        if (static_cast<double>(stage_samples) * RoundDelta(t) < kPlannedAcceptedPerRound) {
          return std::nullopt;
        }
        held.emplace(source(stage_samples));
        return held->view();
      },
      nullptr);
  for (std::size_t t = 0; t + 1 < trace.directions.size(); ++t) {
    trace.deltas.push_back(RoundDelta(static_cast<int>(t)));
  }
  if (rounds.rejected) {
    trace.rejection_stage = rounds.stage;
    return trace;
  }
  trace.verdict = LearnVerdict::kLearned;
  return trace;
}

}  // namespace htl
