// Certifies that every halfspace whose normal is within eta of v disagrees
// with sign(v . x) on O(eta) of the mass, by slicing the line along v into
// slabs of width eta and checking (a) the slab masses against the Gaussian
// and (b) bounded second moments orthogonal to v inside each slab.
//
// Event layout (2B + 3 entries, B = ceil(sqrt(ln(1/eta)) / eta)):
//   position 0          lower tail   v.x < -B eta
//   position i + B + 1  slab i       v.x in [i eta, (i + 1) eta), i = -B..B
//   position 2B + 2     upper tail   v.x >= (B + 1) eta
// Since B eta >= sqrt(ln(1/eta)) both tails lie beyond sqrt(ln(1/eta)).

#ifndef HTL_WEDGE_TESTER_H_
#define HTL_WEDGE_TESTER_H_

#include <optional>
#include <string>
#include <vector>

#include "htl/core_types.h"
#include "htl/moment_tester.h"

namespace htl {

inline constexpr std::size_t kSlabMinCount = 30;
inline constexpr double kSlabSecondMomentBound = 2.0;
inline constexpr double kSlabMeanBound = 1.0;
inline constexpr double kEigenTolerance = 1e-8;
// Disagreement constant C in Pr[sign(v.x) != sign(w.x)] <= C eta, as
// measured on Gaussian data at desk scale.
inline constexpr double kWedgeConstant = 10.0;

int SlabHalfCount(double eta);  // B

struct SlabDecomposition {
  UnitVector v;
  double eta;
  int half_count;  // B
  std::vector<std::size_t> counts;
  std::vector<double> slab_masses;
  std::vector<double> reference_masses;

  std::size_t size() const { return counts.size(); }
  // Event index (-B-1 .. B+1) of a position.
  int EventIndex(std::size_t position) const {
    return static_cast<int>(position) - half_count - 1;
  }
};

// Position (0 .. 2B+2) of projection t = v . x.
std::size_t SlabPosition(double t, double eta, int half_count);

SlabDecomposition DecomposeSlabs(const PointView& points, const UnitVector& v, double eta);

enum class WedgeCheck { kTv, kSlabMoment };

struct FailedWedgeCheck {
  WedgeCheck check;
  int slab_index = 0;  // event index, meaningful for kSlabMoment
};

struct WedgeVerdict {
  CertVerdict verdict = CertVerdict::kCertified;
  std::optional<FailedWedgeCheck> failed_check;  // present iff rejected
  double tv_discrepancy = 0.0;
  double tv_tolerance = 0.0;
  double worst_slab_eigenvalue = 0.0;
  double worst_slab_mean_norm = 0.0;
  SlabDecomposition slabs;
};

std::size_t WedgeMinSamples(double eta);

WedgeVerdict WedgeBoundTest(const PointView& points, const UnitVector& v, double eta,
                            const RunConfig& cfg);

// Fraction of points on which sign(v . x) and sign(w . x) differ.
double DisagreementFraction(const PointView& points, const UnitVector& v,
                            const UnitVector& w);

// Largest disagreement between v and random unit w with ||w - v|| <= eta:
// trial 0 is w = v, the remaining trials - 1 draw a uniform direction in the
// orthogonal complement of v and a distance uniform in (0, eta].
double VerifyWedgeCertificate(const PointView& points, const UnitVector& v, double eta,
                              int trials, Rng& rng);

}  // namespace htl

#endif  // HTL_WEDGE_TESTER_H_
