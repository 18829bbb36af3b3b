// Seeded synthetic data: points from a marginal family, labels from a
// planted halfspace, then label noise from one of several adversaries.

#ifndef HTL_DATAGEN_H_
#define HTL_DATAGEN_H_

#include <cstdint>
#include <optional>
#include <string>

#include "htl/core_types.h"

namespace htl {

enum class NoiseKind { kClean, kRandomFlip, kBoundaryFlip, kWedgeFlip };

struct NoiseModel {
  NoiseKind kind = NoiseKind::kClean;
  double opt = 0.0;
  std::optional<UnitVector> wedge_direction;  // kWedgeFlip only

  void Validate(std::size_t d) const;
};

enum class MarginalKind {
  kStandardGaussian,
  kRademacherCoords,
  kUniformCube,
  kScaledGaussian,
  kStudentT,
  kGaussianMixture,
};

struct MarginalFamily {
  MarginalKind kind = MarginalKind::kStandardGaussian;
  std::size_t axis = 1;     // kScaledGaussian
  double factor = 3.0;      // kScaledGaussian, > 0
  double dof = 3.0;         // kStudentT, >= 3
  double separation = 2.0;  // kGaussianMixture, >= 0

  void Validate(std::size_t d) const;
};

// Names used on the command line and in sidecar files: "gaussian",
// "rademacher", "uniform-cube", "scaled-gaussian", "student-t", "mixture";
// "clean", "random-flip", "boundary-flip", "wedge-flip".
std::string ToString(MarginalKind k);
std::string ToString(NoiseKind k);
MarginalKind ParseMarginalKind(const std::string& name);
NoiseKind ParseNoiseKind(const std::string& name);

// Draws n points i.i.d. from `marginal` (the generator is seeded with `seed`),
// labels them sign(v_star . x) and applies `noise`:
//   kRandomFlip    each label flipped independently with probability opt
//   kBoundaryFlip  the floor(opt n) points with smallest |v_star . x| flipped
//   kWedgeFlip     inside the band of the floor(2 opt n) points with smallest
//                  |v_star . x|, the floor(opt n) points with largest
//                  wedge_direction . x flipped (the default wedge direction
//                  is the first basis axis made orthogonal to v_star)
LabeledSampleSet Generate(std::size_t d, std::size_t n, const MarginalFamily& marginal,
                          const UnitVector& v_star, const NoiseModel& noise, std::uint64_t seed);

}  // namespace htl

#endif  // HTL_DATAGEN_H_
