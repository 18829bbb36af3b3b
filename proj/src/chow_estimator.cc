#include "htl/chow_estimator.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace htl {
namespace {

// Median of an odd-length list.
double OddMedian(std::vector<double> values) {
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

}  // namespace

int DefaultBatchCount(std::size_t d, double tau) {
  if (d == 0 || !(tau > 0.0 && tau < 1.0)) throw InputError("invalid batch-count inputs");
  const double lg = std::log(static_cast<double>(d) / tau);
  const int b = 2 * static_cast<int>(std::ceil(std::max(lg, 1.0))) + 1;
  return std::max(b, 3);
}

ChowEstimate EstimateChow(const SampleView& samples, int batch_count,
                          std::optional<std::uint64_t> shuffle_seed) {
  if (batch_count < 1 || batch_count % 2 == 0) {
    throw InputError("batch count must be a positive odd number");
  }
  const std::size_t n = samples.size();
  const auto batches = static_cast<std::size_t>(batch_count);
  if (n < batches) throw InputError("fewer samples than batches");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (shuffle_seed) {
    Rng rng(*shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }

  const std::size_t d = samples.dim();
  const std::size_t batch_size = n / batches;
  // means[i * batches + b]: batch b's mean of y * x_i.
  std::vector<double> means(d * batches, 0.0);
  for (std::size_t b = 0; b < batches; ++b) {
    std::vector<double> sum(d, 0.0);
    for (std::size_t j = b * batch_size; j < (b + 1) * batch_size; ++j) {
      const std::size_t idx = order[j];
      const double y = samples.y(idx);
      const auto x = samples.x(idx);
      for (std::size_t i = 0; i < d; ++i) sum[i] += y * x[i];
    }
    for (std::size_t i = 0; i < d; ++i) {
      means[i * batches + b] = sum[i] / static_cast<double>(batch_size);
    }
  }

  ChowEstimate est;
  est.batch_count = batch_count;
  est.vector.resize(d);
  est.per_coordinate_spread.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> col(means.begin() + static_cast<std::ptrdiff_t>(i * batches),
                            means.begin() + static_cast<std::ptrdiff_t>((i + 1) * batches));
    const double med = OddMedian(col);
    for (double& c : col) c = std::abs(c - med);
    est.vector[i] = med;
    est.per_coordinate_spread[i] = OddMedian(std::move(col));
  }
  return est;
}

}  // namespace htl
