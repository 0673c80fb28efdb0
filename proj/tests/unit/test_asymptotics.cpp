#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/expint.hpp>

#include "inctree/asymptotics.hpp"

using namespace inctree;

namespace {

// Midpoint rule for A(x) directly in u.
long double riemann_A(long double x, long panels) {
  const long double h = x / panels;
  long double s = 0;
  for (long i = 0; i < panels; ++i) {
    long double u = (i + 0.5L) * h;
    s += 1.0L / (1.0L - std::log1p(-u));
  }
  return s * h;
}

}  // namespace

TEST_CASE("A(x) endpoints and Euler-Gompertz") {
  CHECK(A_func(0).value == 0);
  const Real G = euler_gompertz().value;
  CHECK(std::abs(A_func(1).value - G) < 1e-15L);
  CHECK(std::abs(G - 0.596347L) < 1e-5L);
  // G = e E_1(1).
  const long double expint_G = std::exp(1.0L) * -boost::math::expint(-1.0L);
  CHECK(std::abs(G - expint_G) < 1e-15L);
  CHECK_THROWS_AS(A_func(1.5L), std::domain_error);
  CHECK_THROWS_AS(A_func(-0.1L), std::domain_error);
}

TEST_CASE("A(0.5) against a Riemann sum") {
  CHECK(std::abs(A_func(0.5L).value - riemann_A(0.5L, 10000000)) < 1e-6L);
}

TEST_CASE("A(x) near 1 follows its expansion") {
  const Real G = euler_gompertz().value;
  for (int k = 2; k <= 6; ++k) {
    const Real e = std::pow(10.0L, -k);
    const Real L = std::log(e);
    const Real diff = A_func(1 - e).value - (G + e / L);
    const Real ratio = diff / (e / (L * L));
    CHECK(std::abs(ratio) < 3);
    CHECK(std::abs(A_tail(1 - e).value - (G - A_func(1 - e).value)) < 1e-14L);
  }
}

TEST_CASE("recursive constants") {
  auto c = constants_rec();
  CHECK(std::abs(c.G.value - 0.596347L) < 1e-5L);
  CHECK(std::abs(c.mean.value - 0.192694L) < 1e-5L);
  CHECK(std::abs(c.mean.value - (2 * c.G.value - 1)) < 1e-15L);
  for (const auto* r : {&c.K1_direct, &c.K1_log_form, &c.K1_laguerre_form}) {
    CHECK(r->converged);
    CHECK(std::abs(r->value - 0.138629L) < 1e-4L);
  }
  auto agree = [](const QuadratureResult& a, const QuadratureResult& b) {
    return std::abs(a.value - b.value) <= a.abs_error_estimate + b.abs_error_estimate + 1e-15L;
  };
  CHECK(agree(c.K1_direct, c.K1_log_form));
  CHECK(agree(c.K1_direct, c.K1_laguerre_form));
  CHECK(agree(c.K1_log_form, c.K1_laguerre_form));
  CHECK(rec_G_minus(0) == 0);
}

TEST_CASE("binary constants") {
  auto c = constants_bin();
  CHECK(std::abs(c.C1.value - 0.085753L) < 1e-5L);
  CHECK(std::abs(c.K2.value - 0.057162L) < 1e-4L);
  const Real C1 = c.C1.value;
  CHECK(std::abs(c.K2.value - (4 * C1 - 2 * std::sqrt(5.0L) * C1 - C1 * C1 + c.C2.value)) < 1e-15L);
  CHECK(std::abs(c.F_minus_at_0) < 1e-15L);
  CHECK(std::abs(c.G_minus_at_0) < 1e-15L);
  CHECK(c.K2.abs_error_estimate < 1e-10L);
}

TEST_CASE("binary G_- by ODE and by its integral representation") {
  const Real C1 = constants_bin().C1.value;
  BinaryGMinus ode(C1);
  for (Real x : {0.05L, 0.2L, 0.5L, 0.8L, 0.95L}) {
    auto integral = bin_G_minus_integral(x, C1);
    CHECK(std::abs(ode.G_minus(x) - integral.value) < 1e-10L);
  }
}

TEST_CASE("series coefficients match the closed forms") {
  for (auto f : {FamilyId::Recursive, FamilyId::BinaryIncreasing}) {
    auto cf = closed_form_check(f, 30);
    CHECK(cf.passed);
    CHECK(cf.max_abs_diff < 1e-9L);
    CHECK(cf.rows.size() == 3);
  }
}
