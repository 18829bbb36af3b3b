#include "htl/gaussian_moments.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>

namespace htl {
namespace {

// (a-1)!! for even a >= 0, in exact integer arithmetic. 19!! fits easily.
std::uint64_t OddDoubleFactorial(int even_exponent) {
  std::uint64_t r = 1;
  for (int f = even_exponent - 1; f > 1; f -= 2) r *= static_cast<std::uint64_t>(f);
  return r;
}

void AppendDegree(int d, int remaining, std::size_t pos, std::vector<int>& current,
                  std::vector<MonomialExponent>& out) {
  if (pos + 1 == static_cast<std::size_t>(d)) {
    current[pos] = remaining;
    out.emplace_back(current);
    current[pos] = 0;
    return;
  }
  for (int a = remaining; a >= 0; --a) {
    current[pos] = a;
    AppendDegree(d, remaining - a, pos + 1, current, out);
  }
  current[pos] = 0;
}

}  // namespace

MonomialExponent::MonomialExponent(std::vector<int> exponents)
    : exponents_(std::move(exponents)), degree_(0) {
  if (exponents_.empty()) throw InputError("monomial needs at least one variable");
  for (int a : exponents_) {
    if (a < 0) throw InputError("monomial exponents must be non-negative");
    degree_ += a;
  }
  if (degree_ < 1 || degree_ > kMaxMonomialDegree) {
    throw InputError("monomial degree must be in [1, " +
                     std::to_string(kMaxMonomialDegree) + "]");
  }
}

double MonomialExponent::Evaluate(std::span<const double> x) const {
  if (x.size() != exponents_.size()) throw InputError("monomial dimension mismatch");
  double v = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int p = 0; p < exponents_[i]; ++p) v *= x[i];
  }
  return v;
}

MonomialExponent MonomialExponent::Doubled() const {
  std::vector<int> e = exponents_;
  for (int& a : e) a *= 2;
  return MonomialExponent(std::move(e));
}

bool GradedLexLess(const MonomialExponent& a, const MonomialExponent& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(b.exponents().begin(), b.exponents().end(),
                                      a.exponents().begin(), a.exponents().end());
}

std::vector<MonomialExponent> EnumerateMonomials(int d, int k) {
  if (d < 1) throw InputError("monomial dimension must be positive");
  if (k < 1 || k > kMaxMonomialDegree) throw InputError("monomial degree cap out of range");
  std::vector<MonomialExponent> out;
  std::vector<int> current(static_cast<std::size_t>(d), 0);
  for (int g = 1; g <= k; ++g) AppendDegree(d, g, 0, current, out);
  return out;
}

double GaussianMoment(const MonomialExponent& m) {
  std::uint64_t prod = 1;
  for (int a : m.exponents()) {
    if (a % 2 != 0) return 0.0;
    prod *= OddDoubleFactorial(a);
  }
  return static_cast<double>(prod);
}

double GaussianMomentVariance(const MonomialExponent& m) {
  const double mean = GaussianMoment(m);
  return GaussianMoment(m.Doubled()) - mean * mean;
}

double EmpiricalMoment(const PointView& points, const MonomialExponent& m) {
  if (points.size() == 0) throw InputError("empty sample set");
  if (points.dim() != m.dim()) throw InputError("monomial dimension mismatch");
  double sum = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j) sum += m.Evaluate(points.row(j));
  return sum / static_cast<double>(points.size());
}

std::vector<double> EmpiricalMoments(const PointView& points, int k) {
  if (points.size() == 0) throw InputError("empty sample set");
  const std::size_t d = points.dim();
  const auto monomials = EnumerateMonomials(static_cast<int>(d), k);
  const std::size_t count = monomials.size();

  // Each monomial of degree >= 2 is its parent (first nonzero exponent
  // lowered by one) times one coordinate; parents precede children.
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t m = 0; m < count; ++m) index.emplace(monomials[m].exponents(), m);
  std::vector<std::size_t> parent(count, 0);
  std::vector<std::size_t> axis(count, 0);
  std::vector<bool> linear(count, false);
  for (std::size_t m = 0; m < count; ++m) {
    const auto& e = monomials[m].exponents();
    const auto first = static_cast<std::size_t>(
        std::find_if(e.begin(), e.end(), [](int a) { return a > 0; }) - e.begin());
    axis[m] = first;
    if (monomials[m].degree() == 1) {
      linear[m] = true;
      continue;
    }
    std::vector<int> p = e;
    --p[first];
    parent[m] = index.at(p);
  }

  constexpr std::size_t kBlock = 256;
  std::vector<double> xt(d * kBlock);
  std::vector<double> vals(count * kBlock);
  std::vector<double> totals(count, 0.0);
  const std::size_t n = points.size();
  for (std::size_t start = 0; start < n; start += kBlock) {
    const std::size_t b = std::min(kBlock, n - start);
    for (std::size_t r = 0; r < b; ++r) {
      const auto row = points.row(start + r);
      for (std::size_t i = 0; i < d; ++i) xt[i * kBlock + r] = row[i];
    }
    for (std::size_t m = 0; m < count; ++m) {
      double* out = &vals[m * kBlock];
      const double* coord = &xt[axis[m] * kBlock];
      double s = 0.0;
      if (linear[m]) {
        for (std::size_t r = 0; r < b; ++r) {
          out[r] = coord[r];
          s += out[r];
        }
      } else {
        const double* par = &vals[parent[m] * kBlock];
        for (std::size_t r = 0; r < b; ++r) {
          out[r] = par[r] * coord[r];
          s += out[r];
        }
      }
      totals[m] += s;
    }
  }
  for (double& t : totals) t /= static_cast<double>(n);
  return totals;
}

}  // namespace htl
