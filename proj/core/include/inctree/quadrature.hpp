#pragma once

#include <cstddef>
#include <functional>
#include <limits>

namespace inctree {

using Real = long double;

inline constexpr Real kInfinity = std::numeric_limits<Real>::infinity();

struct QuadratureResult {
  Real value = 0;
  Real abs_error_estimate = 0;
  std::size_t evaluations = 0;
  bool converged = true;

  QuadratureResult& operator+=(const QuadratureResult& o) {
    value += o.value;
    abs_error_estimate += o.abs_error_estimate;
    evaluations += o.evaluations;
    converged = converged && o.converged;
    return *this;
  }
};

// Adaptive 61-point Gauss-Kronrod on a finite interval; b = kInfinity
// switches to exp-sinh. `tol` is relative to the L1 norm of f.
QuadratureResult integrate(const std::function<Real(Real)>& f, Real a, Real b, Real tol = 1e-13L);

// tanh-sinh on a finite interval; copes with algebraic endpoint behaviour
// such as v^sqrt5 at 0.
QuadratureResult integrate_tanh_sinh(const std::function<Real(Real)>& f, Real a, Real b, Real tol = 1e-15L);

// Sum of integrate() over consecutive breakpoints (the last may be kInfinity).
QuadratureResult integrate_pieces(const std::function<Real(Real)>& f, std::initializer_list<Real> points,
                                  Real tol = 1e-13L);

}  // namespace inctree
