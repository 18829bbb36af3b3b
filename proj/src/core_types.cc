#include "htl/core_types.h"

#include <cmath>
#include <sstream>

namespace htl {

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InputError("dimension mismatch in dot product");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

double Distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InputError("dimension mismatch in distance");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return std::sqrt(s);
}

UnitVector::UnitVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw InputError("unit vector needs dimension >= 2");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw InputError("unit vector has non-finite entry");
  }
  const double n = Norm(coords_);
  if (std::abs(n - 1.0) > kUnitTolerance) {
    std::ostringstream msg;
    msg << "vector norm " << n << " is not 1";
    throw InputError(msg.str());
  }
}

UnitVector UnitVector::Basis(std::size_t dim, std::size_t axis) {
  if (axis >= dim) throw InputError("basis axis out of range");
  std::vector<double> c(dim, 0.0);
  c[axis] = 1.0;
  return UnitVector(std::move(c));
}

UnitVector UnitVector::Random(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> c(dim);
  // A Gaussian draw has norm far above the floor except with negligible
  // probability; redraw in that case.
  while (true) {
    for (double& x : c) x = normal(rng);
    if (Norm(c) > 1e-6) return Normalize(c);
  }
}

double UnitVector::Dot(std::span<const double> x) const {
  return htl::Dot(coords_, x);
}

UnitVector UnitVector::Negated() const {
  std::vector<double> c = coords_;
  for (double& x : c) x = -x;
  return UnitVector(std::move(c));
}

UnitVector Normalize(std::span<const double> v) {
  const double n = Norm(v);
  if (!(n > kNormFloor)) {
    std::ostringstream msg;
    msg << "cannot normalize vector of norm " << n;
    throw DegenerateVectorError(msg.str());
  }
  std::vector<double> c(v.begin(), v.end());
  for (double& x : c) x /= n;
  return UnitVector(std::move(c));
}

double Distance(const UnitVector& a, const UnitVector& b) {
  return Distance(a.span(), b.span());
}

PointView::PointView(std::span<const double> data, std::size_t dim)
    : data_(data), dim_(dim) {
  if (dim_ == 0 || data_.size() % dim_ != 0) {
    throw InputError("point buffer is not a whole number of rows");
  }
}

SampleView::SampleView(std::span<const double> points,
                       std::span<const std::int8_t> labels, std::size_t dim)
    : points_(points), labels_(labels), dim_(dim) {
  if (dim_ == 0 || points_.size() != labels_.size() * dim_) {
    throw InputError("points and labels disagree in length");
  }
}

SampleView SampleView::Slice(std::size_t begin, std::size_t count) const {
  if (begin > size() || count > size() - begin) {
    throw InputError("sample slice out of range");
  }
  return SampleView(points_.subspan(begin * dim_, count * dim_),
                    labels_.subspan(begin, count), dim_);
}

LabeledSampleSet::LabeledSampleSet(std::vector<double> points,
                                   std::vector<std::int8_t> labels,
                                   std::size_t dim)
    : points_(std::move(points)), labels_(std::move(labels)), dim_(dim) {
  if (dim_ == 0) throw InputError("sample dimension must be positive");
  if (labels_.empty()) throw InputError("sample set must be non-empty");
  if (points_.size() != labels_.size() * dim_) {
    throw InputError("points and labels disagree in length");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != 1 && labels_[i] != -1) {
      std::ostringstream msg;
      msg << "label at sample " << i << " is not -1 or +1";
      throw InputError(msg.str());
    }
  }
  for (double c : points_) {
    if (!std::isfinite(c)) throw InputError("sample has non-finite coordinate");
  }
}

LabeledSampleSet Materialize(const SampleView& view) {
  const auto pts = view.points().data();
  const auto lab = view.labels();
  return LabeledSampleSet(std::vector<double>(pts.begin(), pts.end()),
                          std::vector<std::int8_t>(lab.begin(), lab.end()),
                          view.dim());
}

int Halfspace::Predict(std::span<const double> x) const {
  if (x.size() != normal.dim()) {
    throw InputError("point dimension does not match halfspace");
  }
  return normal.Dot(x) >= 0.0 ? 1 : -1;
}

int Predict(const Halfspace& h, std::span<const double> x) {
  return h.Predict(x);
}

double EmpiricalError(const Halfspace& h, const SampleView& samples) {
  if (samples.size() == 0) throw InputError("empty sample set");
  if (samples.dim() != h.normal.dim()) {
    throw InputError("sample dimension does not match halfspace");
  }
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const int pred = h.normal.Dot(samples.x(i)) >= 0.0 ? 1 : -1;
    if (pred != samples.y(i)) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(samples.size());
}

void RunConfig::Validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must be in (0,1)");
  if (!(tau > 0.0 && tau < 1.0)) throw InputError("tau must be in (0,1)");
  if (k_cap < 2 || k_cap > 10) throw InputError("k_cap must be in [2,10]");
  if (!(c_a > 0.0)) throw InputError("c_a must be positive");
  if (!(slack_multiplier > 0.0)) throw InputError("slack multiplier must be positive");
  if (strict_moment_constant && !(*strict_moment_constant > 0.0)) {
    throw InputError("strict moment constant must be positive");
  }
}

}  // namespace htl
