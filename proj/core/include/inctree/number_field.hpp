#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "inctree/polynomial.hpp"

namespace inctree {

// Malformed eigenvalue input (syntax, non-monic, degree 0).
class SpecError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// The minimal polynomial turned out to factor; carries a nontrivial monic
// factor over Q.
class ReducibleMinimalPolynomial : public std::runtime_error {
public:
  explicit ReducibleMinimalPolynomial(RatPolynomial factor);
  const RatPolynomial& factor() const noexcept { return factor_; }

private:
  RatPolynomial factor_;
};

// An eigenvalue alpha given as a root of a monic squarefree polynomial m(x).
// Nothing distinguishes one root of m from another: multiplicities are the
// same for every conjugate, so only exact zero tests are ever needed.
class EigenvalueSpec {
public:
  // m must be monic with integer coefficients, degree >= 1 and squarefree.
  // Integer roots of a degree >= 2 polynomial are reported as reducibility.
  static EigenvalueSpec from_minpoly(IntPolynomial m);
  // alpha = a; a need not be an integer (such alpha is never a tree
  // eigenvalue, and multiplicities come out as zero).
  static EigenvalueSpec rational(mpq_class a);
  // Integer/rational literal ("0", "-1", "3/2") or a monic integer polynomial
  // in x ("x^2-2", "x^2 - x - 1").
  static EigenvalueSpec parse(std::string_view text);

  std::size_t degree() const noexcept { return static_cast<std::size_t>(minpoly_.degree()); }
  bool is_rational() const noexcept { return degree() == 1; }
  // The root when degree() == 1.
  mpq_class rational_value() const { return -minpoly_.coeff(0); }
  const RatPolynomial& minpoly() const noexcept { return minpoly_; }
  bool is_algebraic_integer() const;
  // Integer minimal polynomial; throws SpecError if alpha is not an
  // algebraic integer.
  IntPolynomial int_minpoly() const;

  // Spec for -alpha: (-1)^d m(-x).
  EigenvalueSpec negated() const;

  std::string to_string() const;

  friend bool operator==(const EigenvalueSpec& a, const EigenvalueSpec& b) {
    return a.minpoly_ == b.minpoly_;
  }

private:
  explicit EigenvalueSpec(RatPolynomial m) : minpoly_(std::move(m)) {}
  RatPolynomial minpoly_;
};

// Element of Q[x]/(m): d rational coordinates in the power basis.
class FieldElement {
public:
  FieldElement() = default;
  explicit FieldElement(std::vector<mpq_class> c) : c_(std::move(c)) {}

  const std::vector<mpq_class>& coords() const noexcept { return c_; }
  std::vector<mpq_class>& coords() noexcept { return c_; }
  bool is_zero() const;
  RatPolynomial as_polynomial() const { return RatPolynomial(c_); }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.c_ == b.c_;
  }

private:
  std::vector<mpq_class> c_;
};

// Arithmetic in Q[x]/(m) for a fixed spec.
class NumberField {
public:
  explicit NumberField(const EigenvalueSpec& spec);

  const EigenvalueSpec& spec() const noexcept { return *spec_; }
  std::size_t degree() const noexcept { return d_; }

  FieldElement zero() const;
  FieldElement from_rational(const mpq_class& q) const;
  // The class of x, i.e. alpha itself.
  FieldElement alpha() const;
  FieldElement from_polynomial(const RatPolynomial& p) const;

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  // Throws std::domain_error on zero and ReducibleMinimalPolynomial when
  // gcd(e, m) is nontrivial.
  FieldElement inverse(const FieldElement& e) const;

private:
  const EigenvalueSpec* spec_;
  std::size_t d_;
};

FieldElement nf_inverse(const FieldElement& e, const EigenvalueSpec& spec);

}  // namespace inctree
