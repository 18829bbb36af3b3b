#include "htl/moment_tester.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace htl {

std::string ToString(CertVerdict v) {
  return v == CertVerdict::kCertified ? "Certified" : "RejectedNonGaussian";
}

double MomentViolation::Ratio() const {
  return std::abs(empirical - reference) / tolerance;
}

double MomentTolerance(const MonomialExponent& m, int k, std::size_t n,
                       const RunConfig& cfg) {
  if (cfg.strict_moment_constant) {
    const double c = *cfg.strict_moment_constant;
    const double kd = static_cast<double>(k);
    const double d = static_cast<double>(m.dim());
    return std::pow(1.0 / (c * std::sqrt(kd)), kd + 1.0) / (kd * std::pow(d, kd));
  }
  return cfg.slack_multiplier *
         std::sqrt(GaussianMomentVariance(m) / static_cast<double>(n));
}

MomentTestReport MomentMatchTest(const PointView& points, int k, const RunConfig& cfg) {
  cfg.Validate();
  if (points.size() < kMinMomentTestSamples) {
    throw InputError("moment test needs at least " +
                     std::to_string(kMinMomentTestSamples) + " samples");
  }
  if (k < 1 || k > cfg.k_cap) throw InputError("moment degree must be in [1, k_cap]");

  const auto monomials = EnumerateMonomials(static_cast<int>(points.dim()), k);
  const auto empirical = EmpiricalMoments(points, k);

  std::vector<MomentViolation> all;
  all.reserve(monomials.size());
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    all.push_back({monomials[i], empirical[i], GaussianMoment(monomials[i]),
                   MomentTolerance(monomials[i], k, points.size(), cfg)});
  }

  MomentTestReport report;
  report.degree = k;
  report.sample_count = points.size();
  report.monomials_tested = all.size();
  for (const auto& v : all) {
    report.max_ratio = std::max(report.max_ratio, v.Ratio());
    if (!(std::abs(v.empirical - v.reference) <= v.tolerance)) {
      report.verdict = CertVerdict::kRejectedNonGaussian;
    }
  }

  // `all` is already in graded-lex order, so a stable sort breaks ties by it.
  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return all[a].Ratio() > all[b].Ratio();
  });
  const std::size_t keep = std::min(kMaxReportedViolations, order.size());
  for (std::size_t i = 0; i < keep; ++i) report.worst_violations.push_back(all[order[i]]);
  return report;
}

}  // namespace htl
