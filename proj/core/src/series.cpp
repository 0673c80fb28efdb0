#include "inctree/series.hpp"

#include <string>

namespace inctree {

namespace {

using Coeffs = std::vector<mpq_class>;

// [x^k] a*b
mpq_class conv(const Coeffs& a, const Coeffs& b, std::size_t k) {
  mpq_class acc = 0;
  for (std::size_t i = 0; i <= k; ++i) {
    if (sgn(a[i]) != 0 && sgn(b[k - i]) != 0) acc += a[i] * b[k - i];
  }
  return acc;
}

// Appends [x^k] exp(s) given the first k coefficients of exp(s) in e.
void exp_step(const Coeffs& s, Coeffs& e, std::size_t k) {
  mpq_class acc = 0;
  for (std::size_t j = 1; j <= k; ++j) acc += j * s[j] * e[k - j];
  e[k] = acc / k;
}

struct State {
  explicit State(std::size_t n)
      : F(n + 1), Fp(n + 1), Fm(n + 1), G(n + 1), Gp(n + 1), Gm(n + 1), H(n + 1), Hp(n + 1), Hm(n + 1) {}
  Coeffs F, Fp, Fm, G, Gp, Gm, H, Hp, Hm;

  void set(std::size_t n, const mpq_class& fp, const mpq_class& fm, const mpq_class& gp,
           const mpq_class& gm, const mpq_class& hp, const mpq_class& hm) {
    Fp[n] = fp / n;
    Fm[n] = fm / n;
    Gp[n] = gp / n;
    Gm[n] = gm / n;
    Hp[n] = hp / n;
    Hm[n] = hm / n;
    F[n] = Fp[n] + Fm[n];
    G[n] = Gp[n] + Gm[n];
    H[n] = Hp[n] + Hm[n];
  }
};

// Y_+' = e^t exp(Y_-),  Y_-' = e^{-t} (exp(Y) - exp(Y_-)).
void solve_recursive(State& s, std::size_t order) {
  const std::size_t len = order + 1;
  Coeffs eF(len), eFm(len);
  // 1 + G_-, G_- - 1, G - 1 and their squares, grown alongside.
  Coeffs gp1(len), gm1(len), g1(len), sq_gp1(len), sq_gm1(len), sq_g1(len);
  eF[0] = eFm[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) {
    const std::size_t k = n - 1;
    if (k > 0) {
      exp_step(s.F, eF, k);
      exp_step(s.Fm, eFm, k);
    }
    gp1[k] = s.Gm[k] + (k == 0 ? 1 : 0);
    gm1[k] = s.Gm[k] - (k == 0 ? 1 : 0);
    g1[k] = s.G[k] - (k == 0 ? 1 : 0);
    sq_gp1[k] = conv(gp1, gp1, k);
    sq_gm1[k] = conv(gm1, gm1, k);
    sq_g1[k] = conv(g1, g1, k);

    const mpq_class fp = eFm[k];
    const mpq_class fm = eF[k] - eFm[k];
    const mpq_class gp = conv(eFm, gp1, k);
    const mpq_class gm = conv(eF, g1, k) - conv(eFm, gm1, k);
    const mpq_class hp = conv(eFm, s.Hm, k) + conv(eFm, sq_gp1, k);
    const mpq_class hm = conv(eF, s.H, k) + conv(eF, sq_g1, k) - conv(eFm, s.Hm, k) - conv(eFm, sq_gm1, k);
    s.set(n, fp, fm, gp, gm, hp, hm);
  }
}

// Y_+' = e^t (1 + Y_-)^2,  Y_-' = e^{-t} ((1 + Y)^2 - (1 + Y_-)^2).
void solve_binary(State& s, std::size_t order) {
  const std::size_t len = order + 1;
  Coeffs a(len), am(len);  // 1 + F, 1 + F_-
  for (std::size_t n = 1; n <= order; ++n) {
    const std::size_t k = n - 1;
    a[k] = s.F[k] + (k == 0 ? 1 : 0);
    am[k] = s.Fm[k] + (k == 0 ? 1 : 0);

    const mpq_class q = conv(am, am, k);
    const mpq_class am_gm = conv(am, s.Gm, k);
    const mpq_class gm_gm = conv(s.Gm, s.Gm, k);
    const mpq_class am_hm = conv(am, s.Hm, k);
    const mpq_class d0 = conv(a, a, k) - q;
    const mpq_class d1 = 2 * conv(a, s.G, k) - 2 * am_gm;
    const mpq_class d2 = conv(a, s.H, k) + conv(s.G, s.G, k) - am_hm - gm_gm;

    const mpq_class fp = q;
    const mpq_class gp = q + 2 * am_gm;
    const mpq_class hp = 2 * am_hm + 2 * gm_gm + 4 * am_gm + q;
    const mpq_class fm = d0;
    const mpq_class gm = d1 - d0;
    const mpq_class hm = 2 * d2 - 2 * d1 + d0;
    s.set(n, fp, fm, gp, gm, hp, hm);
  }
}

}  // namespace

SeriesTable series_solve(FamilyId f, std::size_t order, std::size_t max_order) {
  if (order == 0) throw std::invalid_argument("series order must be at least 1");
  if (order > max_order) {
    throw ResourceGuardError("series order " + std::to_string(order) + " exceeds the limit " +
                             std::to_string(max_order));
  }
  State s(order);
  if (f == FamilyId::Recursive) {
    solve_recursive(s, order);
  } else {
    solve_binary(s, order);
  }

  SeriesTable t;
  t.family = f;
  t.order = order;
  t.mean.assign(order + 1, mpq_class(0));
  t.variance.assign(order + 1, mpq_class(0));
  for (std::size_t n = 1; n <= order; ++n) {
    t.mean[n] = s.G[n] / s.F[n];
    t.variance[n] = s.H[n] / s.F[n] - t.mean[n] * t.mean[n];
  }
  t.F = std::move(s.F);
  t.F_plus = std::move(s.Fp);
  t.F_minus = std::move(s.Fm);
  t.G = std::move(s.G);
  t.G_plus = std::move(s.Gp);
  t.G_minus = std::move(s.Gm);
  t.H = std::move(s.H);
  t.H_plus = std::move(s.Hp);
  t.H_minus = std::move(s.Hm);
  return t;
}

}  // namespace inctree
