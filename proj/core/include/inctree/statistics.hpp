#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "inctree/quadrature.hpp"

namespace inctree {

// Fixed-order pairwise summation; the result depends only on the input order.
Real pairwise_sum(std::span<const Real> x);

struct Moments {
  std::size_t count = 0;
  Real mean = 0;
  Real variance = 0;  // unbiased, divisor count - 1
  Real skewness = 0;
  Real excess_kurtosis = 0;
};

// Requires at least two values.
Moments moments(std::span<const Real> x);

// Unbiased covariance matrix of the columns of `columns` (all equal length).
std::vector<std::vector<Real>> covariance(const std::vector<std::vector<Real>>& columns);

// Kolmogorov distribution tail P(K > lambda) = 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2).
Real kolmogorov_tail(Real lambda);
// lambda with kolmogorov_tail(lambda) = alpha.
Real kolmogorov_quantile(Real alpha);

struct KSResult {
  std::size_t count = 0;
  // sup |F_n - Phi| on the standardized sample.
  Real statistic_raw = 0;
  // Lattice-aware version: the ECDF at atom x is compared with Phi(x + h/2)
  // and its left limit with Phi(x - h/2), h the standardized lattice step.
  Real statistic_corrected = 0;
  Real lattice_step = 0;  // in original units; 0 for continuous data
  Real critical_value = 0;
  Real p_value_raw = 0;
  Real p_value_corrected = 0;
  Real alpha = 0;
  bool passed = false;  // decided on the corrected statistic
};

// One-sample KS test of the values standardized by their sample mean and
// variance against N(0,1), with asymptotic critical value
// kolmogorov_quantile(alpha) / sqrt(n). When the data are integers their
// lattice step (gcd of differences) is detected and used for the correction.
KSResult ks_normal(std::span<const Real> x, Real alpha = 1e-3L);

}  // namespace inctree
