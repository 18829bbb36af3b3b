#include "htl/wedge_tester.h"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace htl {
namespace {

double StdNormalCdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

void CheckEta(double eta) {
  if (!(eta > 0.0 && eta <= 0.5)) throw InputError("wedge eta must be in (0, 1/2]");
}

}  // namespace

int SlabHalfCount(double eta) {
  CheckEta(eta);
  return static_cast<int>(std::ceil(std::sqrt(std::log(1.0 / eta)) / eta));
}

std::size_t SlabPosition(double t, double eta, int half_count) {
  const double b = static_cast<double>(half_count);
  if (t < -b * eta) return 0;
  if (t >= (b + 1.0) * eta) return static_cast<std::size_t>(2 * half_count + 2);
  const double i = std::clamp(std::floor(t / eta), -b, b);
  return static_cast<std::size_t>(static_cast<int>(i) + half_count + 1);
}

std::size_t WedgeMinSamples(double eta) {
  const auto events = static_cast<std::size_t>(2 * SlabHalfCount(eta) + 3);
  return std::max<std::size_t>(1000, 50 * events);
}

SlabDecomposition DecomposeSlabs(const PointView& points, const UnitVector& v, double eta) {
  CheckEta(eta);
  if (points.dim() != v.dim()) throw InputError("point dimension does not match v");
  if (points.size() == 0) throw InputError("empty sample set");
  const int b = SlabHalfCount(eta);
  const auto events = static_cast<std::size_t>(2 * b + 3);
  SlabDecomposition s{v, eta, b, std::vector<std::size_t>(events, 0),
                      std::vector<double>(events, 0.0), std::vector<double>(events, 0.0)};
  for (std::size_t j = 0; j < points.size(); ++j) {
    ++s.counts[SlabPosition(v.Dot(points.row(j)), eta, b)];
  }
  const double n = static_cast<double>(points.size());
  for (std::size_t p = 0; p < events; ++p) s.slab_masses[p] = static_cast<double>(s.counts[p]) / n;

  const double bd = static_cast<double>(b);
  s.reference_masses.front() = StdNormalCdf(-bd * eta);
  s.reference_masses.back() = 1.0 - StdNormalCdf((bd + 1.0) * eta);
  for (std::size_t p = 1; p + 1 < events; ++p) {
    const double i = static_cast<double>(s.EventIndex(p));
    s.reference_masses[p] = StdNormalCdf((i + 1.0) * eta) - StdNormalCdf(i * eta);
  }
  return s;
}

WedgeVerdict WedgeBoundTest(const PointView& points, const UnitVector& v, double eta,
                            const RunConfig& cfg) {
  cfg.Validate();
  CheckEta(eta);
  if (points.size() < WedgeMinSamples(eta)) {
    throw InputError("wedge test needs at least " + std::to_string(WedgeMinSamples(eta)) +
                     " samples at eta = " + std::to_string(eta));
  }
  WedgeVerdict out{CertVerdict::kCertified, std::nullopt, 0.0, 0.0, 0.0, 0.0,
                   DecomposeSlabs(points, v, eta)};
  const SlabDecomposition& slabs = out.slabs;
  const std::size_t events = slabs.size();
  const double n = static_cast<double>(points.size());

  for (std::size_t p = 0; p < events; ++p) {
    out.tv_discrepancy += std::abs(slabs.reference_masses[p] - slabs.slab_masses[p]);
  }
  out.tv_tolerance = eta + cfg.slack_multiplier * std::sqrt(static_cast<double>(events) / n);
  if (!(out.tv_discrepancy <= out.tv_tolerance)) {
    out.verdict = CertVerdict::kRejectedNonGaussian;
    out.failed_check = FailedWedgeCheck{WedgeCheck::kTv, 0};
  }

  // Per-slab first and second moments of x projected orthogonally to v.
  const std::size_t d = points.dim();
  std::vector<Eigen::VectorXd> sums(events, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d)));
  std::vector<Eigen::MatrixXd> outer(
      events, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
  Eigen::VectorXd perp(static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < points.size(); ++j) {
    const auto x = points.row(j);
    const double t = v.Dot(x);
    const std::size_t p = SlabPosition(t, eta, slabs.half_count);
    if (slabs.counts[p] < kSlabMinCount) continue;
    for (std::size_t i = 0; i < d; ++i) perp[static_cast<Eigen::Index>(i)] = x[i] - t * v[i];
    sums[p] += perp;
    outer[p].selfadjointView<Eigen::Lower>().rankUpdate(perp);
  }

  for (std::size_t p = 0; p < events; ++p) {
    if (slabs.counts[p] < kSlabMinCount) continue;
    const double m = static_cast<double>(slabs.counts[p]);
    const Eigen::MatrixXd second = outer[p].selfadjointView<Eigen::Lower>().toDenseMatrix() / m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(second, Eigen::EigenvaluesOnly);
    const double top = solver.eigenvalues().maxCoeff();
    const double mean_norm = (sums[p] / m).norm();
    out.worst_slab_eigenvalue = std::max(out.worst_slab_eigenvalue, top);
    out.worst_slab_mean_norm = std::max(out.worst_slab_mean_norm, mean_norm);
    const bool ok = top <= kSlabSecondMomentBound + kEigenTolerance && mean_norm <= kSlabMeanBound;
    if (!ok && !out.failed_check) {
      out.verdict = CertVerdict::kRejectedNonGaussian;
      out.failed_check = FailedWedgeCheck{WedgeCheck::kSlabMoment, slabs.EventIndex(p)};
    }
  }
  return out;
}

double DisagreementFraction(const PointView& points, const UnitVector& v, const UnitVector& w) {
  if (points.dim() != v.dim() || points.dim() != w.dim()) {
    throw InputError("dimension mismatch in disagreement");
  }
  if (points.size() == 0) throw InputError("empty sample set");
  std::size_t differ = 0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    const auto x = points.row(j);
    if ((v.Dot(x) >= 0.0) != (w.Dot(x) >= 0.0)) ++differ;
  }
  return static_cast<double>(differ) / static_cast<double>(points.size());
}

double VerifyWedgeCertificate(const PointView& points, const UnitVector& v, double eta,
                              int trials, Rng& rng) {
  if (trials < 1) throw InputError("need at least one trial");
  if (!(eta > 0.0 && eta <= 2.0)) throw InputError("certificate radius must be in (0, 2]");
  const std::size_t d = v.dim();
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  double worst = DisagreementFraction(points, v, v);
  for (int trial = 1; trial < trials; ++trial) {
    // Uniform direction orthogonal to v.
    std::vector<double> u(d);
    double len = 0.0;
    do {
      for (double& c : u) c = normal(rng);
      const double along = v.Dot(u);
      for (std::size_t i = 0; i < d; ++i) u[i] -= along * v[i];
      len = Norm(u);
    } while (len < 1e-9);
    for (double& c : u) c /= len;
    const double r = eta * (1.0 - unit(rng));  // (0, eta]
    const double angle = 2.0 * std::asin(std::min(1.0, r / 2.0));
    std::vector<double> w(d);
    for (std::size_t i = 0; i < d; ++i) w[i] = std::cos(angle) * v[i] + std::sin(angle) * u[i];
    worst = std::max(worst, DisagreementFraction(points, v, Normalize(w)));
  }
  return worst;
}

}  // namespace htl
