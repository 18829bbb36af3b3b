// Shared numeric types for the halfspace tester-learner: unit directions,
// labeled sample sets (owning and non-owning), halfspace evaluation, the
// run configuration, and the small vector kernels every module relies on.

#ifndef HTL_CORE_TYPES_H_
#define HTL_CORE_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace htl {

// Malformed arguments or violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A vector too short to be normalized.
class DegenerateVectorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kNormFloor = 1e-12;
inline constexpr double kUnitTolerance = 1e-9;

// The single random engine type threaded through a run.
using Rng = std::mt19937_64;

double Dot(std::span<const double> a, std::span<const double> b);
double Norm(std::span<const double> a);
double Distance(std::span<const double> a, std::span<const double> b);

// Direction in d >= 2 dimensions with unit Euclidean norm.
class UnitVector {
 public:
  // Validates ||coords|| = 1 within kUnitTolerance; does not rescale.
  explicit UnitVector(std::vector<double> coords);

  // Standard basis vector e_{axis} in `dim` dimensions.
  static UnitVector Basis(std::size_t dim, std::size_t axis);
  // Uniformly random direction on the sphere.
  static UnitVector Random(std::size_t dim, Rng& rng);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> span() const { return coords_; }
  const std::vector<double>& coords() const { return coords_; }

  double Dot(std::span<const double> x) const;
  UnitVector Negated() const;

  friend bool operator==(const UnitVector&, const UnitVector&) = default;

 private:
  std::vector<double> coords_;
};

// v / ||v||; throws DegenerateVectorError when ||v|| <= kNormFloor.
UnitVector Normalize(std::span<const double> v);

double Distance(const UnitVector& a, const UnitVector& b);

// Row-major points without labels.
class PointView {
 public:
  PointView(std::span<const double> data, std::size_t dim);

  std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  std::span<const double> row(std::size_t i) const {
    return data_.subspan(i * dim_, dim_);
  }
  std::span<const double> data() const { return data_; }

 private:
  std::span<const double> data_;
  std::size_t dim_;
};

// Non-owning window onto a contiguous run of labeled samples.
class SampleView {
 public:
  SampleView(std::span<const double> points, std::span<const std::int8_t> labels,
             std::size_t dim);

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return dim_; }
  std::span<const double> x(std::size_t i) const {
    return points_.subspan(i * dim_, dim_);
  }
  int y(std::size_t i) const { return labels_[i]; }

  PointView points() const { return PointView(points_, dim_); }
  std::span<const std::int8_t> labels() const { return labels_; }

  // Samples [begin, begin + count).
  SampleView Slice(std::size_t begin, std::size_t count) const;

 private:
  std::span<const double> points_;
  std::span<const std::int8_t> labels_;
  std::size_t dim_;
};

// Owning set of n >= 1 samples (x, y) with finite x in R^d and y in {-1, +1}.
class LabeledSampleSet {
 public:
  // `points` is row-major n x dim. Validates every invariant.
  LabeledSampleSet(std::vector<double> points, std::vector<std::int8_t> labels,
                   std::size_t dim);

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return dim_; }
  std::span<const double> x(std::size_t i) const {
    return std::span<const double>(points_).subspan(i * dim_, dim_);
  }
  int y(std::size_t i) const { return labels_[i]; }

  const std::vector<double>& points_data() const { return points_; }
  const std::vector<std::int8_t>& labels_data() const { return labels_; }

  SampleView view() const { return SampleView(points_, labels_, dim_); }
  operator SampleView() const { return view(); }  // NOLINT

 private:
  std::vector<double> points_;
  std::vector<std::int8_t> labels_;
  std::size_t dim_;
};

// Copies a view into an owning set (the view must be non-empty).
LabeledSampleSet Materialize(const SampleView& view);

// Homogeneous halfspace sign(normal . x), with sign(0) = +1.
struct Halfspace {
  UnitVector normal;

  int Predict(std::span<const double> x) const;
};

int Predict(const Halfspace& h, std::span<const double> x);

// Fraction of samples whose label disagrees with h.
double EmpiricalError(const Halfspace& h, const SampleView& samples);

// Parameters shared by every stage of a run.
struct RunConfig {
  double epsilon = 0.05;
  double tau = 0.1;
  std::uint64_t seed = 0;
  int k_cap = 4;
  double c_a = 2.0;
  double slack_multiplier = 6.0;
  // When set, moment matching uses the closed-form theoretical tolerance with
  // this absolute constant instead of the statistical band.
  std::optional<double> strict_moment_constant;

  // Throws InputError when any field is out of range.
  void Validate() const;
};

}  // namespace htl

#endif  // HTL_CORE_TYPES_H_
