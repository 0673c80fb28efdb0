#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace inctree {

// Dense univariate polynomial, coefficients stored from the constant term up.
// The zero polynomial has no coefficients and degree -1.
template <class T>
class Polynomial {
public:
  Polynomial() = default;
  Polynomial(std::initializer_list<T> c) : c_(c) { trim(); }
  explicit Polynomial(std::vector<T> c) : c_(std::move(c)) { trim(); }

  static Polynomial constant(T v) { return Polynomial(std::vector<T>{std::move(v)}); }
  static Polynomial monomial(std::size_t k, T v = T(1)) {
    std::vector<T> c(k + 1, T(0));
    c[k] = std::move(v);
    return Polynomial(std::move(c));
  }

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<T>& coeffs() const noexcept { return c_; }
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  const T& lead() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator-(Polynomial a) { return a *= T(-1); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return Polynomial(std::move(r));
  }

  // p(-x).
  Polynomial reflected() const {
    auto r = c_;
    for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
    return Polynomial(std::move(r));
  }

  // Quotient and remainder. Over Z the divisor must be monic so that the
  // division stays integral.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    Polynomial rem = *this;
    if (degree() < d.degree()) return {Polynomial{}, rem};
    std::vector<T> q(c_.size() - d.c_.size() + 1, T(0));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
      const std::size_t shift = static_cast<std::size_t>(rem.degree() - d.degree());
      T f = rem.lead();
      if constexpr (!std::is_same_v<T, mpz_class>) f /= d.lead();
      q[shift] = f;
      for (std::size_t i = 0; i < d.c_.size(); ++i) rem.c_[i + shift] -= f * d.c_[i];
      rem.trim();
    }
    return {Polynomial(std::move(q)), std::move(rem)};
  }

  template <class Scalar>
  Scalar evaluate(const Scalar& x) const {
    Scalar acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + Scalar(c_[i]);
    return acc;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<T> c_;
};

using IntPolynomial = Polynomial<mpz_class>;
using RatPolynomial = Polynomial<mpq_class>;

RatPolynomial to_rational(const IntPolynomial& p);
// Clears denominators and content; the result has positive leading term.
IntPolynomial primitive_part(const RatPolynomial& p);

// Monic gcd over Q.
RatPolynomial gcd(RatPolynomial a, RatPolynomial b);

// Renders with variable x, e.g. "x^3 - 2*x + 1".
std::string to_string(const IntPolynomial& p, const char* var = "x");
std::string to_string(const RatPolynomial& p, const char* var = "x");

// Largest k with m^k dividing p (m monic, p nonzero).
std::size_t multiplicity_of_factor(IntPolynomial p, const IntPolynomial& m);

}  // namespace inctree
