#include "htl/localized_update.h"

#include "htl/localization.h"

namespace htl {

std::string ToString(UpdateVerdict v) {
  return v == UpdateVerdict::kUpdated ? "Updated" : "RejectedNonGaussian";
}

double LocalizedEta(const RunConfig& cfg) { return 1.0 / (20000.0 * cfg.c_a * cfg.c_a); }

UpdateOutcome LocalizedUpdate(const SampleView& samples, const UnitVector& v, double delta,
                              double eta, const RunConfig& cfg, Rng& rng) {
  cfg.Validate();
  if (!(delta > 0.0 && delta <= 0.5)) throw InputError("delta must be in (0, 1/2]");
  if (static_cast<double>(samples.size()) * delta < kMinExpectedAccepted) {
    throw InputError("localized update expects at least 1000 accepted samples; got n * delta = " +
                     std::to_string(static_cast<double>(samples.size()) * delta));
  }

  UpdateOutcome out;
  std::optional<LocalizedSample> localized;
  try {
    localized.emplace(RejectionSample(samples, v, delta, rng));
  } catch (const EmptyLocalizationError&) {
    out.rejection_reason = "acceptance_rate";
    return out;
  }
  out.acceptance_rate = localized->rate;
  out.accepted_count = localized->accepted.size();
  if (out.acceptance_rate < delta / 2.0 || out.acceptance_rate > 1.5 * delta) {
    out.rejection_reason = "acceptance_rate";
    return out;
  }
  if (out.accepted_count < kMinWeakLearnSamples) {
    out.rejection_reason = "accepted_count";
    return out;
  }

  const LabeledSampleSet whitened = Whiten(localized->accepted, v, delta);
  out.inner_outcome = WeakProperLearn(whitened, eta, cfg, rng());
  if (out.inner_outcome->verdict != LearnVerdict::kLearned) {
    out.rejection_reason = out.inner_outcome->rejection_reason;
    return out;
  }
  out.new_direction = UnwhitenDirection(*out.inner_outcome->direction, v, delta);
  out.verdict = UpdateVerdict::kUpdated;
  return out;
}

}  // namespace htl
