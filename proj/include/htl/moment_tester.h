// Certifies that the low-degree moments of a sample set match those of the
// standard Gaussian.

#ifndef HTL_MOMENT_TESTER_H_
#define HTL_MOMENT_TESTER_H_

#include <string>
#include <vector>

#include "htl/core_types.h"
#include "htl/gaussian_moments.h"

namespace htl {

enum class CertVerdict { kCertified, kRejectedNonGaussian };
std::string ToString(CertVerdict v);

inline constexpr std::size_t kMinMomentTestSamples = 100;
inline constexpr std::size_t kMaxReportedViolations = 10;

struct MomentViolation {
  MonomialExponent monomial;
  double empirical;
  double reference;
  double tolerance;

  double Ratio() const;
};

struct MomentTestReport {
  CertVerdict verdict = CertVerdict::kCertified;
  int degree = 0;
  std::size_t sample_count = 0;
  std::size_t monomials_tested = 0;
  // Largest |empirical - reference| / tolerance over all monomials.
  double max_ratio = 0.0;
  // Up to kMaxReportedViolations monomials with the largest ratio, descending;
  // ties in graded-lex order.
  std::vector<MomentViolation> worst_violations;
};

// Tolerance for one monomial at sample size n. Statistical mode:
// slack * sqrt(Var[m]/n). Strict mode: 1/(k d^k) * (1/(C sqrt k))^{k+1}.
double MomentTolerance(const MonomialExponent& m, int k, std::size_t n,
                       const RunConfig& cfg);

MomentTestReport MomentMatchTest(const PointView& points, int k, const RunConfig& cfg);

}  // namespace htl

#endif  // HTL_MOMENT_TESTER_H_
