#include "inctree/quadrature.hpp"

#include <cmath>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace inctree {

QuadratureResult integrate(const std::function<Real(Real)>& f, Real a, Real b, Real tol) {
  QuadratureResult r;
  auto counted = [&](Real x) {
    ++r.evaluations;
    return f(x);
  };
  Real err = 0, l1 = 0;
  if (std::isinf(b)) {
    boost::math::quadrature::exp_sinh<Real> es;
    const Real rel = std::max(tol, std::numeric_limits<Real>::epsilon() * 64);
    std::size_t levels = 0;
    r.value = es.integrate(counted, a, b, rel, &err, &l1, &levels);
    err = std::max(err, rel * l1);
  } else {
    r.value = boost::math::quadrature::gauss_kronrod<Real, 61>::integrate(counted, a, b, 18, tol, &err, &l1);
  }
  r.abs_error_estimate = err;
  r.converged = std::isfinite(r.value) && err <= std::max<Real>(tol * 1e3L, 1e3L * std::numeric_limits<Real>::epsilon() * l1);
  return r;
}

QuadratureResult integrate_tanh_sinh(const std::function<Real(Real)>& f, Real a, Real b, Real tol) {
  thread_local boost::math::quadrature::tanh_sinh<Real> ts;
  QuadratureResult r;
  auto counted = [&](Real x) {
    ++r.evaluations;
    return f(x);
  };
  Real err = 0, l1 = 0;
  std::size_t levels = 0;
  r.value = ts.integrate(counted, a, b, tol, &err, &l1, &levels);
  r.abs_error_estimate = std::max(err, std::numeric_limits<Real>::epsilon() * l1);
  r.converged = std::isfinite(r.value) && err <= std::max<Real>(tol * 1e3L * l1, 1e-30L);
  return r;
}

QuadratureResult integrate_pieces(const std::function<Real(Real)>& f, std::initializer_list<Real> points,
                                  Real tol) {
  std::vector<Real> p(points);
  QuadratureResult total;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) total += integrate(f, p[i], p[i + 1], tol);
  return total;
}

}  // namespace inctree
