#include "htl/datagen.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <boost/random/normal_distribution.hpp>

namespace htl {
namespace {

UnitVector DefaultWedgeDirection(const UnitVector& v_star) {
  for (std::size_t axis = 0; axis < v_star.dim(); ++axis) {
    std::vector<double> u(v_star.dim(), 0.0);
    u[axis] = 1.0;
    const double along = v_star[axis];
    for (std::size_t i = 0; i < u.size(); ++i) u[i] -= along * v_star[i];
    if (Norm(u) > 1e-3) return Normalize(u);
  }
  throw InputError("no wedge direction orthogonal to v*");
}

// Indices of the `count` samples with smallest |margin|, ties by index.
std::vector<std::size_t> SmallestMargins(const std::vector<double>& margin, std::size_t count) {
  std::vector<std::size_t> idx(margin.size());
  std::iota(idx.begin(), idx.end(), 0);
  const auto less = [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(margin[a]);
    const double mb = std::abs(margin[b]);
    return ma != mb ? ma < mb : a < b;
  };
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(),
                    less);
  idx.resize(count);
  return idx;
}

}  // namespace

void NoiseModel::Validate(std::size_t d) const {
  if (!(opt >= 0.0 && opt < 0.5)) throw InputError("opt must be in [0, 1/2)");
  if (kind == NoiseKind::kClean && opt != 0.0) {
    throw InputError("opt must be 0 when the noise model is clean");
  }
  if (wedge_direction) {
    if (kind != NoiseKind::kWedgeFlip) throw InputError("wedge direction only applies to wedge-flip");
    if (wedge_direction->dim() != d) throw InputError("wedge direction dimension mismatch");
  }
}

void MarginalFamily::Validate(std::size_t d) const {
  switch (kind) {
    case MarginalKind::kScaledGaussian:
      if (!(factor > 0.0)) throw InputError("scale factor must be positive");
      if (axis >= d) throw InputError("scaled axis out of range");
      break;
    case MarginalKind::kStudentT:
      if (!(dof >= 3.0)) throw InputError("student-t degrees of freedom must be >= 3");
      break;
    case MarginalKind::kGaussianMixture:
      if (!(separation >= 0.0)) throw InputError("mixture separation must be >= 0");
      break;
    default:
      break;
  }
}

std::string ToString(MarginalKind k) {
  switch (k) {
    case MarginalKind::kStandardGaussian: return "gaussian";
    case MarginalKind::kRademacherCoords: return "rademacher";
    case MarginalKind::kUniformCube: return "uniform-cube";
    case MarginalKind::kScaledGaussian: return "scaled-gaussian";
    case MarginalKind::kStudentT: return "student-t";
    case MarginalKind::kGaussianMixture: return "mixture";
  }
  return "unknown";
}

std::string ToString(NoiseKind k) {
  switch (k) {
    case NoiseKind::kClean: return "clean";
    case NoiseKind::kRandomFlip: return "random-flip";
    case NoiseKind::kBoundaryFlip: return "boundary-flip";
    case NoiseKind::kWedgeFlip: return "wedge-flip";
  }
  return "unknown";
}

MarginalKind ParseMarginalKind(const std::string& name) {
  for (auto k : {MarginalKind::kStandardGaussian, MarginalKind::kRademacherCoords,
                 MarginalKind::kUniformCube, MarginalKind::kScaledGaussian,
                 MarginalKind::kStudentT, MarginalKind::kGaussianMixture}) {
    if (ToString(k) == name) return k;
  }
  throw InputError("unknown marginal family '" + name + "'");
}

NoiseKind ParseNoiseKind(const std::string& name) {
  for (auto k : {NoiseKind::kClean, NoiseKind::kRandomFlip, NoiseKind::kBoundaryFlip,
                 NoiseKind::kWedgeFlip}) {
    if (ToString(k) == name) return k;
  }
  throw InputError("unknown noise model '" + name + "'");
}

LabeledSampleSet Generate(std::size_t d, std::size_t n, const MarginalFamily& marginal,
                          const UnitVector& v_star, const NoiseModel& noise, std::uint64_t seed) {
  if (d < 2) throw InputError("dimension must be at least 2");
  if (n < 1) throw InputError("sample count must be positive");
  if (v_star.dim() != d) throw InputError("planted direction dimension mismatch");
  marginal.Validate(d);
  noise.Validate(d);

  Rng rng(seed);
  // Ziggurat sampler; several times cheaper than the polar method.
  boost::random::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  std::bernoulli_distribution coin(0.5);
  std::vector<double> points(n * d);

  switch (marginal.kind) {
    case MarginalKind::kStandardGaussian:
      for (double& x : points) x = normal(rng);
      break;
    case MarginalKind::kRademacherCoords:
      for (double& x : points) x = coin(rng) ? 1.0 : -1.0;
      break;
    case MarginalKind::kUniformCube: {
      const double half_width = std::sqrt(3.0);
      for (double& x : points) x = half_width * (2.0 * unit(rng) - 1.0);
      break;
    }
    case MarginalKind::kScaledGaussian:
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < d; ++i) {
          const double z = normal(rng);
          points[j * d + i] = i == marginal.axis ? marginal.factor * z : z;
        }
      }
      break;
    case MarginalKind::kStudentT: {
      std::student_t_distribution<double> student(marginal.dof);
      const double to_unit_variance = std::sqrt((marginal.dof - 2.0) / marginal.dof);
      for (double& x : points) x = to_unit_variance * student(rng);
      break;
    }
    case MarginalKind::kGaussianMixture: {
      // First coordinate is an equal mixture of N(+-s/2, 1), rescaled to unit
      // variance; the rest are standard normal.
      const double shift = marginal.separation / 2.0;
      const double scale = 1.0 / std::sqrt(1.0 + shift * shift);
      for (std::size_t j = 0; j < n; ++j) {
        const double centre = coin(rng) ? shift : -shift;
        points[j * d] = scale * (centre + normal(rng));
        for (std::size_t i = 1; i < d; ++i) points[j * d + i] = normal(rng);
      }
      break;
    }
  }

  std::vector<double> margin(n);
  std::vector<std::int8_t> labels(n);
  for (std::size_t j = 0; j < n; ++j) {
    margin[j] = v_star.Dot(std::span<const double>(points).subspan(j * d, d));
    labels[j] = margin[j] >= 0.0 ? 1 : -1;
  }

  const auto flips = static_cast<std::size_t>(std::floor(noise.opt * static_cast<double>(n)));
  switch (noise.kind) {
    case NoiseKind::kClean:
      break;
    case NoiseKind::kRandomFlip: {
      std::bernoulli_distribution flip(noise.opt);
      for (auto& y : labels) {
        if (flip(rng)) y = static_cast<std::int8_t>(-y);
      }
      break;
    }
    case NoiseKind::kBoundaryFlip:
      for (std::size_t j : SmallestMargins(margin, flips)) {
        labels[j] = static_cast<std::int8_t>(-labels[j]);
      }
      break;
    case NoiseKind::kWedgeFlip: {
      const UnitVector dir =
          noise.wedge_direction ? *noise.wedge_direction : DefaultWedgeDirection(v_star);
      std::vector<std::size_t> band = SmallestMargins(margin, std::min(n, 2 * flips));
      std::vector<double> score(n, 0.0);
      for (std::size_t j : band) score[j] = dir.Dot(std::span<const double>(points).subspan(j * d, d));
      std::partial_sort(band.begin(), band.begin() + static_cast<std::ptrdiff_t>(flips), band.end(),
                        [&](std::size_t a, std::size_t b) {
                          return score[a] != score[b] ? score[a] > score[b] : a < b;
                        });
      for (std::size_t i = 0; i < flips; ++i) {
        labels[band[i]] = static_cast<std::int8_t>(-labels[band[i]]);
      }
      break;
    }
  }
  return LabeledSampleSet(std::move(points), std::move(labels), d);
}

}  // namespace htl
