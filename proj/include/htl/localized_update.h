// One localization round: rejection-sample toward v at scale delta, check
// the acceptance rate, whiten, run the weak learner, and map its direction
// back to the standard frame.

#ifndef HTL_LOCALIZED_UPDATE_H_
#define HTL_LOCALIZED_UPDATE_H_

#include <optional>
#include <string>

#include "htl/core_types.h"
#include "htl/weak_learner.h"

namespace htl {

enum class UpdateVerdict { kUpdated, kRejectedNonGaussian };
std::string ToString(UpdateVerdict v);

// n * delta must reach this many expected acceptances.
inline constexpr double kMinExpectedAccepted = 1000.0;

struct UpdateOutcome {
  UpdateVerdict verdict = UpdateVerdict::kRejectedNonGaussian;
  std::optional<UnitVector> new_direction;  // present iff kUpdated
  double acceptance_rate = 0.0;
  std::size_t accepted_count = 0;
  std::optional<WeakLearnOutcome> inner_outcome;  // present iff the rate check passed
  // Empty on success; otherwise "acceptance_rate", "accepted_count",
  // "moment_test" or "degenerate_direction".
  std::string rejection_reason;
};

// Accuracy handed to the inner weak learner: 1 / (20000 c_a^2).
double LocalizedEta(const RunConfig& cfg);

// Rate check: [delta/2, 3 delta/2]. If the rate passes but fewer than
// kMinWeakLearnSamples samples survive, the shortfall is itself reported as
// non-Gaussian evidence ("accepted_count").
UpdateOutcome LocalizedUpdate(const SampleView& samples, const UnitVector& v, double delta,
                              double eta, const RunConfig& cfg, Rng& rng);

}  // namespace htl

#endif  // HTL_LOCALIZED_UPDATE_H_
