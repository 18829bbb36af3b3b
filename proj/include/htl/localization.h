// Soft localization toward a direction v: rejection sampling with acceptance
// probability exp(-(v.x)^2 (sigma^-2 - 1) / 2), and the rank-one maps
// Sigma^{+-1/2} with Sigma = I - (1 - sigma^2) v v^T that move points and
// directions between the localized and standard frames.

#ifndef HTL_LOCALIZATION_H_
#define HTL_LOCALIZATION_H_

#include <span>
#include <stdexcept>
#include <vector>

#include "htl/core_types.h"

namespace htl {

// Rejection sampling accepted nothing.
class EmptyLocalizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (v, sigma) standing for Sigma = I - (1 - sigma^2) v v^T; every map is
// applied in closed form in O(d).
class LocalizationTransform {
 public:
  LocalizationTransform(UnitVector v, double sigma);

  const UnitVector& v() const { return v_; }
  double sigma() const { return sigma_; }

  // Sigma^{1/2} x = x - (1 - sigma)(v.x) v
  std::vector<double> ApplySqrt(std::span<const double> x) const;
  // Sigma^{-1/2} x = x + (1/sigma - 1)(v.x) v
  std::vector<double> ApplyInverseSqrt(std::span<const double> x) const;

 private:
  UnitVector v_;
  double sigma_;
};

double AcceptanceProbability(double projection, double sigma);

struct LocalizedSample {
  LabeledSampleSet accepted;
  double rate;
};

// Keeps each sample independently with AcceptanceProbability(v.x, sigma),
// drawing one uniform per sample from `rng` in sample order.
// Throws EmptyLocalizationError when nothing is accepted.
LocalizedSample RejectionSample(const SampleView& samples, const UnitVector& v, double sigma,
                                Rng& rng);

// x -> Sigma^{-1/2} x for every point; labels unchanged.
LabeledSampleSet Whiten(const SampleView& samples, const UnitVector& v, double sigma);

// normalize(Sigma^{-1/2} w).
UnitVector UnwhitenDirection(const UnitVector& w, const UnitVector& v, double sigma);

// normalize(Sigma^{1/2} u), the image of a standard-frame direction in the
// localized frame.
UnitVector WhitenDirection(const UnitVector& u, const UnitVector& v, double sigma);

struct RefinementBound {
  double distance;  // ||normalize(Sigma^{-1/2} w) - v*||
  double bound;     // 5 (delta^2 + delta zeta)
  bool holds() const { return distance <= bound; }
};

// Evaluates the unwhitening refinement bound for v*, v, w with
// ||v - v*|| <= delta <= 1/100 and
// ||w - normalize(Sigma^{1/2} v*)|| <= zeta <= 1/100, Sigma built from
// (v, delta). Throws InputError when a precondition fails.
RefinementBound EvaluateRefinementBound(const UnitVector& v_star, const UnitVector& v,
                                        const UnitVector& w, double delta, double zeta);

bool CheckRefinementBound(const UnitVector& v_star, const UnitVector& v, const UnitVector& w,
                          double delta, double zeta);

// Squared distance to v* = e2 after unwhitening w = a e1 + b e2 along v = e1
// with scale xi: 2 - 2b / sqrt((a/xi)^2 + b^2), b = sqrt(1 - a^2).
double OrthogonalUnwhitenedDistanceSq(double a, double xi);

}  // namespace htl

#endif  // HTL_LOCALIZATION_H_
