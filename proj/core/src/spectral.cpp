#include "inctree/spectral.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace inctree {

std::string_view to_string(MatrixKind k) {
  switch (k) {
    case MatrixKind::Adjacency: return "adj";
    case MatrixKind::Laplacian: return "lap";
    case MatrixKind::ModifiedLaplacian: return "modlap";
  }
  return "adj";
}

MatrixKind parse_matrix_kind(std::string_view s) {
  if (s == "adj" || s == "adjacency") return MatrixKind::Adjacency;
  if (s == "lap" || s == "laplacian") return MatrixKind::Laplacian;
  if (s == "modlap" || s == "modified-laplacian") return MatrixKind::ModifiedLaplacian;
  throw std::invalid_argument("unknown matrix kind '" + std::string(s) + "' (expected adj|lap|modlap)");
}

long diagonal_entry(const RootedTree& t, Vertex v, MatrixKind k) {
  switch (k) {
    case MatrixKind::Adjacency: return 0;
    case MatrixKind::Laplacian: return static_cast<long>(t.degree(v));
    case MatrixKind::ModifiedLaplacian:
      return static_cast<long>(t.degree(v)) + (v == t.root() ? 1 : 0);
  }
  return 0;
}

IntPolynomial char_poly(const RootedTree& t, MatrixKind k) {
  const std::size_t n = t.size();
  std::vector<IntPolynomial> full(n), cut(n);
  const IntPolynomial one = IntPolynomial::constant(1);
  for (Vertex v : t.post_order()) {
    auto ch = t.children(v);
    const std::size_t m = ch.size();
    // prefix[i] = prod_{j<i} full[ch[j]], suffix[i] = prod_{j>=i}.
    std::vector<IntPolynomial> prefix(m + 1, one), suffix(m + 1, one);
    for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] * full[ch[i]];
    for (std::size_t i = m; i-- > 0;) suffix[i] = suffix[i + 1] * full[ch[i]];
    IntPolynomial p = IntPolynomial{mpz_class(-diagonal_entry(t, v, k)), mpz_class(1)} * prefix[m];
    for (std::size_t i = 0; i < m; ++i) p -= cut[ch[i]] * prefix[i] * suffix[i + 1];
    cut[v] = std::move(prefix[m]);
    full[v] = std::move(p);
  }
  return full[t.root()];
}

namespace {

__extension__ using i128 = __int128;

struct Overflow {};

// Rational with 64-bit parts; operations throw Overflow instead of wrapping.
struct SmallRat {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

constexpr i128 kMax = INT64_MAX;

SmallRat make_small(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num, b = den;
  while (b != 0) {
    i128 r = a % b;
    a = b;
    b = r;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  if (num > kMax || num < -kMax || den > kMax) throw Overflow{};
  return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

struct SmallField {
  using T = SmallRat;
  SmallRat alpha;
  T base(long k) const {
    return make_small(static_cast<i128>(k) * alpha.den - alpha.num, alpha.den);
  }
  // acc -= 1/x
  void sub_inv(T& acc, const T& x) const {
    // acc.num/acc.den - x.den/x.num
    acc = make_small(static_cast<i128>(acc.num) * x.num - static_cast<i128>(x.den) * acc.den,
                     static_cast<i128>(acc.den) * x.num);
  }
  static bool is_zero(const T& x) { return x.num == 0; }
  static T pos() { return {2, 1}; }
  static T neg() { return {-1, 2}; }
};

struct RationalField {
  using T = mpq_class;
  mpq_class alpha;
  T base(long k) const { return mpq_class(k) - alpha; }
  void sub_inv(T& acc, const T& x) const { acc -= 1 / x; }
  static bool is_zero(const T& x) { return sgn(x) == 0; }
  static T pos() { return mpq_class(2); }
  static T neg() { return mpq_class(-1, 2); }
};

struct AlgebraicField {
  using T = FieldElement;
  NumberField f;
  FieldElement a;
  explicit AlgebraicField(const EigenvalueSpec& s) : f(s), a(f.alpha()) {}
  T base(long k) const { return f.sub(f.from_rational(mpq_class(k)), a); }
  void sub_inv(T& acc, const T& x) const { acc = f.sub(acc, f.inverse(x)); }
  static bool is_zero(const T& x) { return x.is_zero(); }
  T pos() const { return f.from_rational(mpq_class(2)); }
  T neg() const { return f.from_rational(mpq_class(-1, 2)); }
};

template <class Field>
SpectralCounts run(const RootedTree& t, MatrixKind k, const Field& field) {
  using T = typename Field::T;
  const std::size_t n = t.size();
  std::vector<T> d(n);
  std::vector<char> zero(n, 0), severed(n, 0);
  std::size_t zeros = 0, before_root = 0;
  for (Vertex v : t.post_order()) {
    if (v == t.root()) before_root = zeros;
    auto ch = t.children(v);
    Vertex zc = kNoParent;
    for (Vertex c : ch) {
      if (!severed[c] && zero[c]) {
        zc = c;
        break;
      }
    }
    if (zc != kNoParent) {
      d[zc] = field.pos();
      zero[zc] = 0;
      --zeros;
      d[v] = field.neg();
      severed[v] = 1;
      continue;
    }
    T acc = field.base(diagonal_entry(t, v, k));
    for (Vertex c : ch) {
      if (!severed[c]) field.sub_inv(acc, d[c]);
    }
    zero[v] = Field::is_zero(acc) ? 1 : 0;
    zeros += zero[v];
    d[v] = std::move(acc);
  }
  return {zeros, static_cast<int>(zeros) - static_cast<int>(before_root)};
}

std::optional<SmallRat> small_alpha(const mpq_class& a) {
  if (!a.get_num().fits_slong_p() || !a.get_den().fits_slong_p()) return std::nullopt;
  const long num = a.get_num().get_si(), den = a.get_den().get_si();
  if (num < -(1L << 40) || num > (1L << 40) || den > (1L << 40)) return std::nullopt;
  return SmallRat{num, den};
}

}  // namespace

SpectralCounts diagonalize(const RootedTree& t, MatrixKind k, const EigenvalueSpec& spec) {
  if (spec.is_rational()) {
    const mpq_class a = spec.rational_value();
    if (auto s = small_alpha(a)) {
      try {
        return run(t, k, SmallField{*s});
      } catch (const Overflow&) {
      }
    }
    return run(t, k, RationalField{a});
  }
  return run(t, k, AlgebraicField(spec));
}

std::size_t multiplicity(const RootedTree& t, MatrixKind k, const EigenvalueSpec& spec) {
  return diagonalize(t, k, spec).multiplicity;
}

int toll(const RootedTree& t, MatrixKind k, const EigenvalueSpec& spec) {
  return diagonalize(t, k, spec).toll;
}

std::size_t multiplicity_zero_fast(const RootedTree& t) {
  return t.size() - 2 * matching_number(t);
}

int sign_type_zero(const RootedTree& t) {
  std::vector<int> s(t.size(), 1);
  for (Vertex v : t.post_order()) {
    for (Vertex c : t.children(v)) {
      if (s[c] == 1) {
        s[v] = -1;
        break;
      }
    }
  }
  return s[t.root()];
}

}  // namespace inctree
