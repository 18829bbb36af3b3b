// Monomial enumeration and exact standard-Gaussian moments, the reference
// side of every moment-matching test.

#ifndef HTL_GAUSSIAN_MOMENTS_H_
#define HTL_GAUSSIAN_MOMENTS_H_

#include <cstddef>
#include <vector>

#include "htl/core_types.h"

namespace htl {

// Largest total degree whose Gaussian moment is computed exactly; the
// tolerance of a degree-k test needs degree 2k, so k itself is capped at 10.
inline constexpr int kMaxMonomialDegree = 20;

// Exponent vector alpha in N^d with 1 <= |alpha| <= kMaxMonomialDegree,
// standing for the monomial prod_i x_i^{alpha_i}.
class MonomialExponent {
 public:
  explicit MonomialExponent(std::vector<int> exponents);

  const std::vector<int>& exponents() const { return exponents_; }
  int degree() const { return degree_; }
  std::size_t dim() const { return exponents_.size(); }

  double Evaluate(std::span<const double> x) const;
  // alpha + alpha (the square of the monomial).
  MonomialExponent Doubled() const;

  friend bool operator==(const MonomialExponent&, const MonomialExponent&) = default;
  // Graded-lexicographic: lower degree first, then larger leading exponents.
  friend bool GradedLexLess(const MonomialExponent& a, const MonomialExponent& b);

 private:
  std::vector<int> exponents_;
  int degree_;
};

bool GradedLexLess(const MonomialExponent& a, const MonomialExponent& b);

// Every monomial with 1 <= degree <= k in graded-lex order; C(d+k,k)-1 items.
std::vector<MonomialExponent> EnumerateMonomials(int d, int k);

// E_{x ~ N(0,I)}[m(x)] = prod_i (a_i - 1)!! if all a_i even, else 0.
double GaussianMoment(const MonomialExponent& m);

// Var_{N(0,I)}[m(x)] = E[m^2] - E[m]^2.
double GaussianMomentVariance(const MonomialExponent& m);

// (1/n) sum_j m(x_j).
double EmpiricalMoment(const PointView& points, const MonomialExponent& m);

// Empirical moments of every monomial of EnumerateMonomials(points.dim(), k),
// in that order, evaluated in one blocked pass over the points.
std::vector<double> EmpiricalMoments(const PointView& points, int k);

}  // namespace htl

#endif  // HTL_GAUSSIAN_MOMENTS_H_
