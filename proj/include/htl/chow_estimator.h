// Robust degree-1 Chow vector E[y x] by coordinate-wise median-of-means.

#ifndef HTL_CHOW_ESTIMATOR_H_
#define HTL_CHOW_ESTIMATOR_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "htl/core_types.h"

namespace htl {

struct ChowEstimate {
  std::vector<double> vector;
  int batch_count = 0;
  // Median absolute deviation of the batch means around the median.
  std::vector<double> per_coordinate_spread;
};

// 2 * ceil(ln(d / tau)) + 1, at least 3.
int DefaultBatchCount(std::size_t d, double tau);

// Splits the samples into `batch_count` contiguous batches of floor(n / b)
// samples each (trailing remainder dropped) and returns, per coordinate, the
// median of the batch means of y * x_i. With `shuffle_seed` the batches are
// cut from a seeded permutation of the samples instead of input order.
ChowEstimate EstimateChow(const SampleView& samples, int batch_count,
                          std::optional<std::uint64_t> shuffle_seed = std::nullopt);

}  // namespace htl

#endif  // HTL_CHOW_ESTIMATOR_H_
