#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "inctree/generators.hpp"
#include "inctree/quadrature.hpp"

namespace inctree {

class QuadratureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A(x) = int_0^x du / (1 - log(1-u)), 0 <= x <= 1, computed in s = -log(1-u)
// where the integrand becomes e^-s / (1+s). Throws std::domain_error outside
// [0,1].
QuadratureResult A_func(Real x, Real tol = 1e-15L);
// G - A(x) = int_S^inf e^-s/(1+s) ds with S = -log(1-x); accurate near x = 1.
QuadratureResult A_tail(Real x, Real tol = 1e-15L);
// Euler-Gompertz constant, A(1).
QuadratureResult euler_gompertz(Real tol = 1e-15L);

// Recursive-tree G_-(x) for x in [0,1).
Real rec_G_minus(Real x);

struct RecConstants {
  QuadratureResult G;
  QuadratureResult mean;  // 2G - 1
  // (i) the defining integral with G_- plugged in; (ii) the log(1 - log w)
  // form; (iii) the log^2(1+u) e^-u form.
  QuadratureResult K1_direct;
  QuadratureResult K1_log_form;
  QuadratureResult K1_laguerre_form;
};

struct BinConstants {
  QuadratureResult C1;  // also the binary mean constant
  QuadratureResult C2;
  QuadratureResult K2;
  Real F_minus_at_0 = 0;
  Real G_minus_at_0 = 0;
};

RecConstants constants_rec(Real tol = 1e-15L);
BinConstants constants_bin(Real tol = 1e-15L);

// Binary family pieces, u in [0,1).
Real bin_F_minus(Real u);
// Integrand of C1 in v = 1 - u.
Real bin_C1_integrand(Real v);

// G(u) and G_-(u) for the binary family from the linear ODE for
// h(s) = (1-u)^2 G_-(u), s = -log(1-u), stepped with dopri5 from memoized
// checkpoints.
class BinaryGMinus {
public:
  explicit BinaryGMinus(Real C1, Real ode_tol = 1e-14L);
  ~BinaryGMinus();
  BinaryGMinus(BinaryGMinus&&) noexcept;
  BinaryGMinus& operator=(BinaryGMinus&&) noexcept;

  Real h(Real s) const;
  Real G_minus(Real u) const;
  Real G(Real u) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// G_-(x) from its integral representation with the integrating factor
// (7+3 sqrt5 - 2(1-x)^sqrt5)^2 / (1-x)^(sqrt5-1).
QuadratureResult bin_G_minus_integral(Real x, Real C1, Real tol = 1e-14L);

struct ClosedFormRow {
  std::size_t k = 0;
  Real series_value = 0;
  Real closed_form = 0;
};

struct ClosedFormCheck {
  FamilyId family = FamilyId::Recursive;
  std::size_t order = 0;
  Real tol = 0;
  // Keyed by "F_plus", "F_minus", "G".
  std::map<std::string, std::vector<ClosedFormRow>> rows;
  Real max_abs_diff = 0;
  bool passed = false;
};

// Taylor coefficients from series_solve against series expansions of the
// closed forms, relative to max(1, |coefficient|).
ClosedFormCheck closed_form_check(FamilyId f, std::size_t order = 30, Real tol = 1e-9L);

}  // namespace inctree
