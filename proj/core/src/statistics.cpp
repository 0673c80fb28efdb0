#include "inctree/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace inctree {

Real pairwise_sum(std::span<const Real> x) {
  if (x.size() <= 8) {
    Real s = 0;
    for (Real v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

Moments moments(std::span<const Real> x) {
  if (x.size() < 2) throw std::invalid_argument("moments need at least two values");
  Moments m;
  m.count = x.size();
  const Real n = static_cast<Real>(x.size());
  m.mean = pairwise_sum(x) / n;
  std::vector<Real> d2(x.size()), d3(x.size()), d4(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Real d = x[i] - m.mean;
    d2[i] = d * d;
    d3[i] = d2[i] * d;
    d4[i] = d2[i] * d2[i];
  }
  const Real s2 = pairwise_sum(d2), s3 = pairwise_sum(d3), s4 = pairwise_sum(d4);
  m.variance = s2 / (n - 1);
  const Real m2 = s2 / n;
  if (m2 > 0) {
    m.skewness = (s3 / n) / std::pow(m2, Real(1.5));
    m.excess_kurtosis = (s4 / n) / (m2 * m2) - 3;
  }
  return m;
}

std::vector<std::vector<Real>> covariance(const std::vector<std::vector<Real>>& columns) {
  const std::size_t k = columns.size();
  std::vector<std::vector<Real>> c(k, std::vector<Real>(k, 0));
  if (k == 0) return c;
  const std::size_t n = columns[0].size();
  if (n < 2) throw std::invalid_argument("covariance needs at least two samples");
  std::vector<Real> mean(k);
  for (std::size_t a = 0; a < k; ++a) {
    if (columns[a].size() != n) throw std::invalid_argument("covariance columns differ in length");
    mean[a] = pairwise_sum(columns[a]) / static_cast<Real>(n);
  }
  std::vector<Real> prod(n);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      for (std::size_t i = 0; i < n; ++i) prod[i] = (columns[a][i] - mean[a]) * (columns[b][i] - mean[b]);
      c[a][b] = c[b][a] = pairwise_sum(prod) / static_cast<Real>(n - 1);
    }
  }
  return c;
}

Real kolmogorov_tail(Real lambda) {
  if (lambda <= 0) return 1;
  if (lambda < 0.2L) return 1;
  Real s = 0;
  for (int k = 1; k <= 100; ++k) {
    const Real term = std::exp(-2 * Real(k) * k * lambda * lambda);
    s += (k % 2 == 1 ? term : -term);
    if (term < 1e-30L) break;
  }
  return std::clamp<Real>(2 * s, 0, 1);
}

Real kolmogorov_quantile(Real alpha) {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha must lie in (0,1)");
  Real lo = 0.2L, hi = 10;
  for (int it = 0; it < 200; ++it) {
    const Real mid = (lo + hi) / 2;
    (kolmogorov_tail(mid) > alpha ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

namespace {

Real normal_cdf(Real z) { return std::erfc(-z / std::sqrt(Real(2))) / 2; }

// gcd of pairwise differences when every value is an integer, else 0.
Real integer_lattice_step(std::span<const Real> sorted) {
  long long g = 0;
  for (Real v : sorted) {
    if (v != std::floor(v) || std::abs(v) > 1e15L) return 0;
  }
  const auto base = static_cast<long long>(sorted.front());
  for (Real v : sorted) g = std::gcd(g, static_cast<long long>(v) - base);
  return static_cast<Real>(g);
}

}  // namespace

KSResult ks_normal(std::span<const Real> x, Real alpha) {
  const Moments m = moments(x);
  KSResult r;
  r.count = x.size();
  r.alpha = alpha;
  const Real n = static_cast<Real>(x.size());
  const Real sd = std::sqrt(m.variance);
  std::vector<Real> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  r.lattice_step = integer_lattice_step(sorted);
  const Real h = sd > 0 ? r.lattice_step / sd : 0;

  Real raw = 0, corrected = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const Real z = sd > 0 ? (sorted[i] - m.mean) / sd : 0;
    const Real below = static_cast<Real>(i) / n;  // F_n(z-)
    const Real at = static_cast<Real>(j) / n;     // F_n(z)
    const Real phi = normal_cdf(z);
    raw = std::max({raw, std::abs(at - phi), std::abs(below - phi)});
    corrected = std::max({corrected, std::abs(at - normal_cdf(z + h / 2)), std::abs(below - normal_cdf(z - h / 2))});
    i = j;
  }
  if (sd == 0) raw = corrected = 1;
  r.statistic_raw = raw;
  r.statistic_corrected = corrected;
  const Real root_n = std::sqrt(n);
  r.critical_value = kolmogorov_quantile(alpha) / root_n;
  r.p_value_raw = kolmogorov_tail(raw * root_n);
  r.p_value_corrected = kolmogorov_tail(corrected * root_n);
  r.passed = corrected <= r.critical_value;
  return r;
}

}  // namespace inctree
