#include "inctree/polynomial.hpp"

#include <stdexcept>

namespace inctree {

RatPolynomial to_rational(const IntPolynomial& p) {
  std::vector<mpq_class> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.emplace_back(x);
  return RatPolynomial(std::move(c));
}

IntPolynomial primitive_part(const RatPolynomial& p) {
  if (p.is_zero()) return {};
  mpz_class den = 1;
  for (const auto& x : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> c;
  mpz_class content = 0;
  for (const auto& x : p.coeffs()) {
    mpz_class v = x.get_num() * (den / x.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    c.push_back(std::move(v));
  }
  if (p.lead() < 0) content = -content;
  for (auto& v : c) v /= content;
  return IntPolynomial(std::move(c));
}

RatPolynomial gcd(RatPolynomial a, RatPolynomial b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) a *= mpq_class(1) / a.lead();
  return a;
}

namespace {

template <class T>
std::string render(const Polynomial<T>& p, const char* var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    T c = p.coeff(static_cast<std::size_t>(k));
    if (c == 0) continue;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const bool unit = c == 1;
    if (k == 0 || !unit) {
      out += c.get_str();
      if (k > 0) out += "*";
    }
    if (k > 0) {
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace

std::string to_string(const IntPolynomial& p, const char* var) { return render(p, var); }
std::string to_string(const RatPolynomial& p, const char* var) { return render(p, var); }

std::size_t multiplicity_of_factor(IntPolynomial p, const IntPolynomial& m) {
  if (!m.is_monic() || m.degree() < 1) throw std::invalid_argument("factor must be monic of degree >= 1");
  if (p.is_zero()) throw std::invalid_argument("zero polynomial has unbounded multiplicity");
  std::size_t k = 0;
  for (;;) {
    auto [q, r] = p.divmod(m);
    if (!r.is_zero()) return k;
    p = std::move(q);
    ++k;
  }
}

}  // namespace inctree
