#include "inctree/number_field.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace inctree {

ReducibleMinimalPolynomial::ReducibleMinimalPolynomial(RatPolynomial factor)
    : std::runtime_error("reducible minimal polynomial: nontrivial factor " + to_string(factor)),
      factor_(std::move(factor)) {}

namespace {

// Integer roots of a monic integer polynomial divide its constant term.
std::optional<mpz_class> find_integer_root(const IntPolynomial& m) {
  const mpz_class a0 = abs(m.coeff(0));
  if (a0 == 0) return mpz_class(0);
  if (mpz_sizeinbase(a0.get_mpz_t(), 2) > 40) return std::nullopt;
  const auto n = a0.get_ui();
  auto is_root = [&](long r) { return m.evaluate(mpz_class(r)) == 0; };
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    for (unsigned long c : {d, n / d}) {
      const long r = static_cast<long>(c);
      if (is_root(r)) return mpz_class(r);
      if (is_root(-r)) return mpz_class(-r);
    }
  }
  return std::nullopt;
}

}  // namespace

EigenvalueSpec EigenvalueSpec::from_minpoly(IntPolynomial m) {
  if (m.degree() < 1) throw SpecError("minimal polynomial must have degree at least 1");
  if (!m.is_monic()) throw SpecError("minimal polynomial must be monic: " + inctree::to_string(m));
  RatPolynomial q = to_rational(m);
  RatPolynomial g = gcd(q, q.derivative());
  if (g.degree() >= 1) throw ReducibleMinimalPolynomial(g);
  if (m.degree() >= 2) {
    if (auto r = find_integer_root(m)) {
      throw ReducibleMinimalPolynomial(RatPolynomial{mpq_class(-*r), mpq_class(1)});
    }
  }
  return EigenvalueSpec(std::move(q));
}

EigenvalueSpec EigenvalueSpec::rational(mpq_class a) {
  a.canonicalize();
  return EigenvalueSpec(RatPolynomial{mpq_class(-a), mpq_class(1)});
}

bool EigenvalueSpec::is_algebraic_integer() const {
  return std::all_of(minpoly_.coeffs().begin(), minpoly_.coeffs().end(),
                     [](const mpq_class& c) { return c.get_den() == 1; });
}

IntPolynomial EigenvalueSpec::int_minpoly() const {
  if (!is_algebraic_integer()) throw SpecError("eigenvalue " + to_string() + " is not an algebraic integer");
  std::vector<mpz_class> c;
  for (const auto& x : minpoly_.coeffs()) c.push_back(x.get_num());
  return IntPolynomial(std::move(c));
}

EigenvalueSpec EigenvalueSpec::negated() const {
  RatPolynomial r = minpoly_.reflected();
  if (degree() % 2 == 1) r *= mpq_class(-1);
  return EigenvalueSpec(std::move(r));
}

std::string EigenvalueSpec::to_string() const {
  if (is_rational()) return rational_value().get_str();
  return inctree::to_string(minpoly_);
}

namespace {

SpecError syntax(std::string_view text, const std::string& why) {
  return SpecError("cannot parse eigenvalue '" + std::string(text) + "': " + why);
}

bool is_rational_literal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  const std::size_t digits_start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == digits_start) return false;
  if (i < s.size() && s[i] == '/') {
    ++i;
    const std::size_t den_start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == den_start) return false;
  }
  return i == s.size();
}

}  // namespace

EigenvalueSpec EigenvalueSpec::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw syntax(text, "empty");

  if (is_rational_literal(s)) {
    std::string lit = s[0] == '+' ? s.substr(1) : s;
    mpq_class q(lit);
    if (q.get_den() == 0) throw syntax(text, "zero denominator");
    return rational(q);
  }

  // Sum of terms [+|-][digits][*]x[^digits] or [+|-]digits.
  std::vector<mpz_class> coeffs;
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw syntax(text, "expected '+' or '-' between terms");
    }
    first = false;
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits.push_back(s[i++]);
    mpz_class c = digits.empty() ? mpz_class(1) : mpz_class(digits);
    std::size_t power = 0;
    bool has_x = false;
    if (i < s.size() && s[i] == '*') {
      if (digits.empty()) throw syntax(text, "dangling '*'");
      ++i;
      if (i >= s.size() || s[i] != 'x') throw syntax(text, "expected x after '*'");
    }
    if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
      has_x = true;
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string p;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) p.push_back(s[i++]);
        if (p.empty() || p.size() > 4) throw syntax(text, "bad exponent");
        power = std::stoul(p);
      }
    }
    if (!has_x && digits.empty()) throw syntax(text, "empty term");
    if (i < s.size() && s[i] != '+' && s[i] != '-') {
      throw syntax(text, std::string("unexpected character '") + s[i] + "'");
    }
    if (coeffs.size() <= power) coeffs.resize(power + 1, mpz_class(0));
    coeffs[power] += sign * c;
  }
  IntPolynomial m(std::move(coeffs));
  if (m.degree() < 1) throw syntax(text, "polynomial must involve x");
  if (!m.is_monic()) throw SpecError("minimal polynomial must be monic (leading coefficient 1): " + std::string(text));
  return from_minpoly(std::move(m));
}

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpq_class& x) { return x == 0; });
}

NumberField::NumberField(const EigenvalueSpec& spec) : spec_(&spec), d_(spec.degree()) {}

FieldElement NumberField::zero() const { return FieldElement(std::vector<mpq_class>(d_, mpq_class(0))); }

FieldElement NumberField::from_rational(const mpq_class& q) const {
  auto e = zero();
  e.coords()[0] = q;
  return e;
}

FieldElement NumberField::alpha() const {
  if (d_ == 1) return from_rational(spec_->rational_value());
  auto e = zero();
  e.coords()[1] = 1;
  return e;
}

FieldElement NumberField::from_polynomial(const RatPolynomial& p) const {
  auto r = p.divmod(spec_->minpoly()).second;
  auto e = zero();
  for (std::size_t i = 0; i < r.coeffs().size(); ++i) e.coords()[i] = r.coeffs()[i];
  return e;
}

FieldElement NumberField::add(const FieldElement& a, const FieldElement& b) const {
  auto r = a;
  for (std::size_t i = 0; i < d_; ++i) r.coords()[i] += b.coords()[i];
  return r;
}

FieldElement NumberField::sub(const FieldElement& a, const FieldElement& b) const {
  auto r = a;
  for (std::size_t i = 0; i < d_; ++i) r.coords()[i] -= b.coords()[i];
  return r;
}

FieldElement NumberField::mul(const FieldElement& a, const FieldElement& b) const {
  const auto& m = spec_->minpoly().coeffs();
  std::vector<mpq_class> prod(2 * d_ - 1, mpq_class(0));
  for (std::size_t i = 0; i < d_; ++i) {
    if (a.coords()[i] == 0) continue;
    for (std::size_t j = 0; j < d_; ++j) prod[i + j] += a.coords()[i] * b.coords()[j];
  }
  // x^k = x^(k-d) * (x^d - m(x)) reduction, top-down; m is monic.
  for (std::size_t k = prod.size(); k-- > d_;) {
    if (prod[k] == 0) continue;
    const mpq_class c = prod[k];
    for (std::size_t i = 0; i < d_; ++i) prod[k - d_ + i] -= c * m[i];
    prod[k] = 0;
  }
  prod.resize(d_);
  return FieldElement(std::move(prod));
}

FieldElement NumberField::inverse(const FieldElement& e) const {
  if (e.is_zero()) throw std::domain_error("division by zero in number field");
  if (d_ == 1) return from_rational(mpq_class(1) / e.coords()[0]);
  RatPolynomial r0 = spec_->minpoly();
  RatPolynomial r1 = e.as_polynomial();
  RatPolynomial s0;
  RatPolynomial s1 = RatPolynomial::constant(mpq_class(1));
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    RatPolynomial s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // s0 * e == r0 (mod m).
  if (r0.degree() >= 1) {
    r0 *= mpq_class(1) / r0.lead();
    throw ReducibleMinimalPolynomial(std::move(r0));
  }
  s0 *= mpq_class(1) / r0.coeff(0);
  return from_polynomial(s0);
}

FieldElement nf_inverse(const FieldElement& e, const EigenvalueSpec& spec) {
  return NumberField(spec).inverse(e);
}

}  // namespace inctree
