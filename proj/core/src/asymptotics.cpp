#include "inctree/asymptotics.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "inctree/power_series.hpp"
#include "inctree/series.hpp"

namespace inctree {

namespace {

const Real kSqrt5 = std::sqrt(Real(5));
const Real kC = 7 + 3 * kSqrt5;  // 7 + 3 sqrt5

Real gompertz_integrand(Real s) { return std::exp(-s) / (1 + s); }

void require_converged(const QuadratureResult& r, const char* what) {
  if (r.converged) return;
  std::ostringstream os;
  os << "quadrature for " << what << " did not converge: value " << static_cast<double>(r.value)
     << ", error estimate " << static_cast<double>(r.abs_error_estimate) << " after " << r.evaluations
     << " evaluations";
  throw QuadratureError(os.str());
}

QuadratureResult combine(Real value, Real error, std::initializer_list<const QuadratureResult*> parts) {
  QuadratureResult r;
  r.value = value;
  r.abs_error_estimate = error;
  for (auto* p : parts) {
    r.evaluations += p->evaluations;
    r.converged = r.converged && p->converged;
  }
  return r;
}

// w^sqrt5
Real wpow(Real w) { return w <= 0 ? Real(0) : std::pow(w, kSqrt5); }

// (1 - u)(1 + F_-(u)) as a function of w = 1 - u.
Real phi(Real w) {
  const Real p = wpow(w);
  return (kSqrt5 - 1) / 2 + 2 * kSqrt5 * p / (kC - 2 * p);
}

Real phi_w(Real w) {
  if (w <= 0) return 0;
  const Real p = wpow(w);
  const Real d = kC - 2 * p;
  return 2 * kSqrt5 * kSqrt5 * (p / w) * kC / (d * d);
}

// int_0^w of the C1 integrand.
Real bin_P(Real w) {
  if (w <= 0) return 0;
  return w * integrate_tanh_sinh([w](Real t) { return bin_C1_integrand(w * t); }, 0, 1, 1e-17L).value;
}

}  // namespace

QuadratureResult euler_gompertz(Real tol) {
  auto r = integrate(gompertz_integrand, 0, kInfinity, tol);
  require_converged(r, "Euler-Gompertz constant");
  return r;
}

QuadratureResult A_tail(Real x, Real tol) {
  if (!(x >= 0 && x <= 1)) throw std::domain_error("A(x) requires 0 <= x <= 1");
  if (x == 1) return {};
  if (x == 0) return euler_gompertz(tol);
  const Real S = -std::log1p(-x);
  auto r = integrate(gompertz_integrand, S, kInfinity, tol);
  require_converged(r, "A tail");
  return r;
}

QuadratureResult A_func(Real x, Real tol) {
  if (!(x >= 0 && x <= 1)) throw std::domain_error("A(x) requires 0 <= x <= 1");
  if (x == 0) return {};
  if (x == 1) return euler_gompertz(tol);
  const Real S = -std::log1p(-x);
  if (S <= 30) {
    auto r = integrate(gompertz_integrand, 0, S, tol);
    require_converged(r, "A(x)");
    return r;
  }
  auto g = euler_gompertz(tol);
  auto t = A_tail(x, tol);
  return combine(g.value - t.value, g.abs_error_estimate + t.abs_error_estimate, {&g, &t});
}

Real rec_G_minus(Real x) {
  if (!(x >= 0 && x < 1)) throw std::domain_error("G_-(x) requires 0 <= x < 1");
  const Real s = -std::log1p(-x);
  const Real a = A_func(x).value;
  const Real L = -s;
  return -(2 * a - 1) * L / ((1 - x) * (1 - L)) + (L + 2 * std::log(1 - L)) / (1 - L);
}

RecConstants constants_rec(Real tol) {
  RecConstants r;
  r.G = euler_gompertz(tol);
  const Real G = r.G.value;
  r.mean = r.G;
  r.mean.value = 2 * G - 1;
  r.mean.abs_error_estimate = 2 * r.G.abs_error_estimate;

  // (i) in s = -log(1-u): du = e^-s ds, and with T = G - A = e^-s R(s),
  //   ((2A-1)^2 - (2G-1)^2) e^s = -2 R (2A + 2G - 2),
  //   4 G_-(u) e^-s / (1+s)    = 4/(1+s) [ (2A-1) s/(1+s) + (2 log(1+s) - s) e^-s/(1+s) ].
  std::size_t inner_evals = 0;
  auto integrand = [&](Real s) {
    auto inner = integrate([s](Real q) { return std::exp(-q) / (1 + s + q); }, 0, kInfinity, tol);
    inner_evals += inner.evaluations;
    const Real R = inner.value;
    const Real A = G - std::exp(-s) * R;
    const Real squares = -2 * R * (2 * A + 2 * G - 2);
    const Real gm_scaled = (2 * A - 1) * s / (1 + s) + (2 * std::log1p(s) - s) * std::exp(-s) / (1 + s);
    return squares + 4 * gm_scaled / (1 + s);
  };
  r.K1_direct = integrate(integrand, 0, kInfinity, tol);
  r.K1_direct.evaluations += inner_evals;
  r.K1_direct.abs_error_estimate += 8 * r.G.abs_error_estimate;
  require_converged(r.K1_direct, "K1 (defining integral)");

  auto j2 = integrate([](Real s) { return std::exp(-s) * std::log1p(s) / ((1 + s) * (1 + s)); }, 0,
                      kInfinity, tol);
  require_converged(j2, "K1 (log form)");
  r.K1_log_form = combine(4 * G * (G - 1) + 8 * j2.value,
                          8 * j2.abs_error_estimate + std::abs(8 * G - 4) * r.G.abs_error_estimate,
                          {&j2, &r.G});

  auto j3 = integrate([](Real u) {
    const Real l = std::log1p(u);
    return l * l * std::exp(-u);
  }, 0, kInfinity, tol);
  require_converged(j3, "K1 (Laguerre form)");
  r.K1_laguerre_form = combine(4 * (G - 1) * (G - 2) - 4 * j3.value,
                               4 * j3.abs_error_estimate + std::abs(8 * G - 12) * r.G.abs_error_estimate,
                               {&j3, &r.G});
  return r;
}

Real bin_C1_integrand(Real v) {
  const Real p = wpow(v);
  const Real d = kC - 2 * p;
  return ((8 + 4 * kSqrt5) * p * p + (84 + 36 * kSqrt5) * p - (22 + 10 * kSqrt5)) / (d * d);
}

Real bin_F_minus(Real u) {
  if (!(u >= 0 && u < 1)) throw std::domain_error("F_-(u) requires 0 <= u < 1");
  const Real w = 1 - u;
  return (kSqrt5 - 1) / (2 * w) - 2 * kSqrt5 / (w * (2 - kC * std::pow(w, -kSqrt5))) - 1;
}

struct BinaryGMinus::Impl {
  using State = std::array<Real, 1>;
  static constexpr Real kStep = 0.5L;

  Real C1;
  Real tol;
  mutable std::vector<Real> checkpoints{0};

  void rhs(const State& y, State& dy, Real s) const {
    const Real w = std::exp(-s);
    const Real f = phi(w);
    dy[0] = 2 * (C1 - bin_P(w)) - 2 * (f + 1) * y[0] + w * w * phi_w(w) - w * f;
  }

  Real advance(Real h0, Real s0, Real s1) const {
    namespace ode = boost::numeric::odeint;
    if (s1 <= s0) return h0;
    State y{h0};
    auto sys = [this](const State& y, State& dy, Real s) { rhs(y, dy, s); };
    ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<State, Real, State, Real>>(tol, tol),
                            sys, y, s0, s1, Real(0.01));
    return y[0];
  }

  Real h(Real s) const {
    if (s < 0) throw std::domain_error("h(s) requires s >= 0");
    const auto i = static_cast<std::size_t>(s / kStep);
    while (checkpoints.size() <= i) {
      const std::size_t j = checkpoints.size();
      checkpoints.push_back(advance(checkpoints.back(), (j - 1) * kStep, j * kStep));
    }
    return advance(checkpoints[i], i * kStep, s);
  }
};

BinaryGMinus::BinaryGMinus(Real C1, Real ode_tol) : impl_(new Impl{C1, ode_tol}) {}
BinaryGMinus::~BinaryGMinus() = default;
BinaryGMinus::BinaryGMinus(BinaryGMinus&&) noexcept = default;
BinaryGMinus& BinaryGMinus::operator=(BinaryGMinus&&) noexcept = default;

Real BinaryGMinus::h(Real s) const { return impl_->h(s); }

Real BinaryGMinus::G_minus(Real u) const {
  const Real w = 1 - u;
  return impl_->h(-std::log1p(-u)) / (w * w);
}

Real BinaryGMinus::G(Real u) const {
  const Real w = 1 - u;
  return (impl_->C1 - bin_P(w)) / (w * w);
}

QuadratureResult bin_G_minus_integral(Real x, Real C1, Real tol) {
  if (!(x >= 0 && x < 1)) throw std::domain_error("G_-(x) requires 0 <= x < 1");
  auto weight = [](Real w) {
    const Real d = kC - 2 * wpow(w);
    return d * d / std::pow(w, kSqrt5 - 1);
  };
  auto integrand = [&](Real u) {
    const Real w = 1 - u;
    const Real G = (C1 - bin_P(w)) / (w * w);
    const Real dFm = (phi(w) - w * phi_w(w)) / (w * w);
    return weight(w) * (2 * G / w - dFm);
  };
  QuadratureResult r;
  if (x > 0) r = integrate(integrand, 0, x, tol);
  const Real f = 1 / weight(1 - x);
  r.value *= f;
  r.abs_error_estimate *= f;
  return r;
}

BinConstants constants_bin(Real tol) {
  BinConstants b;
  b.C1 = integrate_tanh_sinh(bin_C1_integrand, 0, 1, tol);
  require_converged(b.C1, "C1");
  const Real C1 = b.C1.value;

  // In s = -log(1-u), w = e^-s, with P(w) = int_0^w of the C1 integrand and
  // h = w^2 G_-, the C2 integrand times du/ds is
  //   J(s) = w - 4(C1 - P) + 2P(P - 2C1)/w + 8 phi h,
  // which decays like w^(sqrt5 - 1). J is accumulated as a second component
  // of the h system, so one adaptive pass yields C2; the range is cut at
  // s = 48. Two stepper tolerances give the error estimate.
  auto c2_with = [&](Real ode_tol) {
    namespace ode = boost::numeric::odeint;
    using State = std::array<Real, 2>;
    std::size_t evals = 0;
    auto sys = [&](const State& y, State& dy, Real s) {
      ++evals;
      const Real w = std::exp(-s);
      const Real P = bin_P(w);
      const Real f = phi(w);
      dy[0] = 2 * (C1 - P) - 2 * (f + 1) * y[0] + w * w * phi_w(w) - w * f;
      dy[1] = w - 4 * (C1 - P) + 2 * P * (P - 2 * C1) / w + 8 * f * y[0];
    };
    State y{0, 0};
    ode::integrate_adaptive(
        ode::make_controlled<ode::runge_kutta_dopri5<State, Real, State, Real>>(ode_tol, ode_tol), sys, y,
        Real(0), Real(48), Real(0.01));
    QuadratureResult r;
    r.value = y[1];
    r.evaluations = evals;
    return r;
  };
  auto fine = c2_with(std::max(tol, Real(1e-15)));
  auto coarse = c2_with(std::max(tol, Real(1e-15)) * 1000);
  b.C2 = fine;
  b.C2.abs_error_estimate = std::abs(fine.value - coarse.value) + b.C1.abs_error_estimate;
  b.C2.evaluations += coarse.evaluations;
  b.C2.converged = std::isfinite(fine.value);
  require_converged(b.C2, "C2");

  b.K2 = combine(4 * C1 - 2 * kSqrt5 * C1 - C1 * C1 + b.C2.value,
                 std::abs(4 - 2 * kSqrt5 - 2 * C1) * b.C1.abs_error_estimate + b.C2.abs_error_estimate,
                 {&b.C1, &b.C2});

  b.F_minus_at_0 = bin_F_minus(0);
  b.G_minus_at_0 = bin_G_minus_integral(0, C1).value;
  return b;
}

namespace {

using LSeries = PowerSeries<Real>;

std::vector<Real> to_reals(const std::vector<mpq_class>& c, std::size_t order) {
  std::vector<Real> r(order + 1);
  for (std::size_t i = 0; i <= order; ++i) r[i] = static_cast<Real>(c[i].get_d());
  return r;
}

}  // namespace

ClosedFormCheck closed_form_check(FamilyId f, std::size_t order, Real tol) {
  const SeriesTable t = series_solve(f, order);
  const LSeries one = LSeries::constant(order, 1);
  const LSeries x = LSeries::x(order);
  const LSeries inv1mx = LSeries::one_minus_x_pow_neg(order, 1);

  LSeries Fp(order), Fm(order), G(order);
  if (f == FamilyId::Recursive) {
    const LSeries F = (one - x).log() * Real(-1);
    Fp = (one + F).log();
    Fm = F - Fp;
    const LSeries A = (one + F).inverse().integral();
    G = (A * Real(2) - x) * inv1mx;
  } else {
    const LSeries F = x * inv1mx;
    const LSeries denom = LSeries::constant(order, 2) - LSeries::one_minus_x_pow_neg(order, kSqrt5) * kC;
    Fp = inv1mx * ((3 - kSqrt5) / 2) + inv1mx * denom.inverse() * (2 * kSqrt5);
    Fm = F - Fp;
    const LSeries sq = (one - x) * (one - x);
    G = (sq * (Fp.derivative() - Fm.derivative())).integral() * inv1mx * inv1mx;
  }

  ClosedFormCheck report;
  report.family = f;
  report.order = order;
  report.tol = tol;
  report.passed = true;
  auto compare = [&](const char* name, const std::vector<mpq_class>& exact, const LSeries& closed) {
    const auto s = to_reals(exact, order);
    auto& rows = report.rows[name];
    for (std::size_t k = 0; k <= order; ++k) {
      rows.push_back({k, s[k], closed[k]});
      const Real diff = std::abs(s[k] - closed[k]) / std::max<Real>(1, std::abs(closed[k]));
      report.max_abs_diff = std::max(report.max_abs_diff, diff);
      if (!(diff <= tol)) report.passed = false;
    }
  };
  compare("F_plus", t.F_plus, Fp);
  compare("F_minus", t.F_minus, Fm);
  compare("G", t.G, G);
  return report;
}

}  // namespace inctree
