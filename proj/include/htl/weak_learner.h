// Weak proper tester-learner: certify low-degree moments, then return the
// normalized robust Chow vector.

#ifndef HTL_WEAK_LEARNER_H_
#define HTL_WEAK_LEARNER_H_

#include <cstdint>
#include <optional>
#include <string>

#include "htl/chow_estimator.h"
#include "htl/core_types.h"
#include "htl/moment_tester.h"

namespace htl {

enum class LearnVerdict { kLearned, kRejectedNonGaussian };
std::string ToString(LearnVerdict v);

inline constexpr std::size_t kMinWeakLearnSamples = 1000;

struct WeakLearnOutcome {
  LearnVerdict verdict = LearnVerdict::kRejectedNonGaussian;
  std::optional<UnitVector> direction;  // present iff kLearned
  MomentTestReport moment_report;
  std::optional<ChowEstimate> chow;     // absent when the moment test rejects
  // "moment_test" or "degenerate_direction" on rejection, empty otherwise.
  std::string rejection_reason;
};

// ceil(ln(1/eta) / eta^2), the moment degree the accuracy target asks for
// (absolute constant taken as 1). Always >= 1.
int ImpliedMomentDegree(double eta);

// Runs the degree-min(k_cap, ImpliedMomentDegree(eta)) moment test and, if it
// certifies, the median-of-means Chow estimate with
// DefaultBatchCount(d, cfg.tau) batches cut after a shuffle seeded by
// `shuffle_seed` (cfg.seed when absent).
WeakLearnOutcome WeakProperLearn(const SampleView& samples, double eta, const RunConfig& cfg,
                                 std::optional<std::uint64_t> shuffle_seed = std::nullopt);

}  // namespace htl

#endif  // HTL_WEAK_LEARNER_H_
