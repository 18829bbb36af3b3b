#include "htl/localization.h"

#include <cmath>

namespace htl {
namespace {

void CheckSigma(double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw InputError("sigma must be in (0,1)");
}

// Slack on the distance preconditions for rounding in the caller's
// construction of the inputs.
constexpr double kPreconditionSlack = 1e-12;

}  // namespace

LocalizationTransform::LocalizationTransform(UnitVector v, double sigma)
    : v_(std::move(v)), sigma_(sigma) {
  CheckSigma(sigma_);
}

std::vector<double> LocalizationTransform::ApplySqrt(std::span<const double> x) const {
  const double along = v_.Dot(x);
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= (1.0 - sigma_) * along * v_[i];
  return out;
}

std::vector<double> LocalizationTransform::ApplyInverseSqrt(std::span<const double> x) const {
  const double along = v_.Dot(x);
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += (1.0 / sigma_ - 1.0) * along * v_[i];
  return out;
}

double AcceptanceProbability(double projection, double sigma) {
  CheckSigma(sigma);
  return std::exp(-projection * projection * (1.0 / (sigma * sigma) - 1.0) / 2.0);
}

LocalizedSample RejectionSample(const SampleView& samples, const UnitVector& v, double sigma,
                                Rng& rng) {
  CheckSigma(sigma);
  if (samples.dim() != v.dim()) throw InputError("sample dimension does not match v");
  if (samples.size() == 0) throw InputError("empty sample set");
  const double scale = (1.0 / (sigma * sigma) - 1.0) / 2.0;
  std::uniform_real_distribution<double> unit;
  std::vector<double> points;
  std::vector<std::int8_t> labels;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const auto x = samples.x(j);
    const double t = v.Dot(x);
    if (unit(rng) < std::exp(-t * t * scale)) {
      points.insert(points.end(), x.begin(), x.end());
      labels.push_back(static_cast<std::int8_t>(samples.y(j)));
    }
  }
  if (labels.empty()) throw EmptyLocalizationError("rejection sampling accepted no samples");
  const double rate = static_cast<double>(labels.size()) / static_cast<double>(samples.size());
  return {LabeledSampleSet(std::move(points), std::move(labels), samples.dim()), rate};
}

LabeledSampleSet Whiten(const SampleView& samples, const UnitVector& v, double sigma) {
  CheckSigma(sigma);
  if (samples.dim() != v.dim()) throw InputError("sample dimension does not match v");
  const std::size_t d = samples.dim();
  const double stretch = 1.0 / sigma - 1.0;
  std::vector<double> points(samples.size() * d);
  std::vector<std::int8_t> labels(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const auto x = samples.x(j);
    const double along = v.Dot(x);
    for (std::size_t i = 0; i < d; ++i) points[j * d + i] = x[i] + stretch * along * v[i];
    labels[j] = static_cast<std::int8_t>(samples.y(j));
  }
  return LabeledSampleSet(std::move(points), std::move(labels), d);
}

UnitVector UnwhitenDirection(const UnitVector& w, const UnitVector& v, double sigma) {
  return Normalize(LocalizationTransform(v, sigma).ApplyInverseSqrt(w.span()));
}

UnitVector WhitenDirection(const UnitVector& u, const UnitVector& v, double sigma) {
  return Normalize(LocalizationTransform(v, sigma).ApplySqrt(u.span()));
}

RefinementBound EvaluateRefinementBound(const UnitVector& v_star, const UnitVector& v,
                                        const UnitVector& w, double delta, double zeta) {
  if (v_star.dim() != v.dim() || v.dim() != w.dim()) throw InputError("dimension mismatch");
  if (!(delta > 0.0 && delta <= 0.01)) throw InputError("delta must be in (0, 1/100]");
  if (!(zeta >= 0.0 && zeta <= 0.01)) throw InputError("zeta must be in [0, 1/100]");
  if (Distance(v, v_star) > delta + kPreconditionSlack) {
    throw InputError("||v - v*|| exceeds delta");
  }
  const UnitVector target = WhitenDirection(v_star, v, delta);
  if (Distance(w, target) > zeta + kPreconditionSlack) {
    throw InputError("w is farther than zeta from the localized target");
  }
  const UnitVector refined = UnwhitenDirection(w, v, delta);
  return {Distance(refined, v_star), 5.0 * (delta * delta + delta * zeta)};
}

bool CheckRefinementBound(const UnitVector& v_star, const UnitVector& v, const UnitVector& w,
                          double delta, double zeta) {
  return EvaluateRefinementBound(v_star, v, w, delta, zeta).holds();
}

double OrthogonalUnwhitenedDistanceSq(double a, double xi) {
  if (!(a >= -1.0 && a <= 1.0)) throw InputError("a must be in [-1, 1]");
  if (!(xi > 0.0 && xi <= 1.0)) throw InputError("xi must be in (0, 1]");
  const double b = std::sqrt(1.0 - a * a);
  const double s = a / xi;
  return 2.0 - 2.0 * b / std::sqrt(s * s + b * b);
}

}  // namespace htl
