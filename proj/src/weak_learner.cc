#include "htl/weak_learner.h"

#include <algorithm>
#include <cmath>

namespace htl {

std::string ToString(LearnVerdict v) {
  return v == LearnVerdict::kLearned ? "Learned" : "RejectedNonGaussian";
}

int ImpliedMomentDegree(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw InputError("eta must be in (0,1)");
  const double k = std::ceil(std::log(1.0 / eta) / (eta * eta));
  return static_cast<int>(std::clamp(k, 1.0, 1e6));
}

WeakLearnOutcome WeakProperLearn(const SampleView& samples, double eta, const RunConfig& cfg,
                                 std::optional<std::uint64_t> shuffle_seed) {
  cfg.Validate();
  if (!(eta > 0.0 && eta < 1.0)) throw InputError("eta must be in (0,1)");
  if (samples.size() < kMinWeakLearnSamples) {
    throw InputError("weak learner needs at least " + std::to_string(kMinWeakLearnSamples) +
                     " samples");
  }

  WeakLearnOutcome out;
  const int k = std::min(cfg.k_cap, ImpliedMomentDegree(eta));
  out.moment_report = MomentMatchTest(samples.points(), k, cfg);
  if (out.moment_report.verdict == CertVerdict::kRejectedNonGaussian) {
    out.rejection_reason = "moment_test";
    return out;
  }

  out.chow = EstimateChow(samples, DefaultBatchCount(samples.dim(), cfg.tau),
                          shuffle_seed.value_or(cfg.seed));
  try {
    out.direction = Normalize(out.chow->vector);
  } catch (const DegenerateVectorError&) {
    out.rejection_reason = "degenerate_direction";
    return out;
  }
  out.verdict = LearnVerdict::kLearned;
  return out;
}

}  // namespace htl
