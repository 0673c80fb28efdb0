#include "inctree/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace inctree {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t end = std::min(count, (w + 1) * chunk);
        for (std::size_t i = w * chunk; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

mpq_class toll_weight(FamilyId f, std::size_t k) {
  const mpz_class K(static_cast<unsigned long>(k));
  mpq_class w = f == FamilyId::Recursive ? mpq_class(1, K * (K + 1)) : mpq_class(2, (K + 1) * (K + 2));
  w.canonicalize();
  return w;
}

mpq_class toll_tail(FamilyId f, std::size_t K) {
  const mpz_class k(static_cast<unsigned long>(K));
  mpq_class t = f == FamilyId::Recursive ? mpq_class(1, k + 1) : mpq_class(2, k + 2);
  t.canonicalize();
  return t;
}

TollSeriesReport toll_series(FamilyId f, const EigenvalueSpec& spec, std::size_t k_exact, std::size_t k_mc,
                             std::size_t samples, std::uint64_t seed, const RunOptions& opt, MatrixKind kind,
                             const EnumLimits& limits) {
  if (k_mc < k_exact) throw std::invalid_argument("k-mc must be at least k-exact");
  if (k_mc > k_exact && samples < 2) throw std::invalid_argument("Monte Carlo rows need at least two samples");
  const unsigned threads = resolve_threads(opt.threads);

  TollSeriesReport r;
  r.family = f;
  r.spec = spec.to_string();
  r.kind = kind;
  r.k_exact = k_exact;
  r.k_mc = k_mc;
  r.seed = seed;
  r.exact_partial_sum = 0;
  const EnumMode mode = f == FamilyId::Recursive ? EnumMode::Natural : EnumMode::UnorderedBinary;

  for (std::size_t k = 1; k <= k_exact; ++k) {
    const auto atoms = enum_shapes(f, k, mode, limits);
    std::vector<int> tolls(atoms.size());
    parallel_for(atoms.size(), threads, [&](std::size_t i) { tolls[i] = toll(atoms[i].representative, kind, spec); });
    mpq_class e = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (tolls[i] != 0) e += tolls[i] * atoms[i].prob;
    }
    TollRow row;
    row.k = k;
    row.exact = true;
    row.exact_value = e;
    row.value = static_cast<Real>(e.get_d());
    row.weight = toll_weight(f, k);
    r.exact_partial_sum += row.weight * e;
    r.rows.push_back(std::move(row));
  }

  Real mc_sum = 0, mc_var = 0;
  for (std::size_t k = k_exact + 1; k <= k_mc; ++k) {
    std::vector<Real> values(samples);
    const std::uint64_t row_seed = derive_seed(seed, k);
    parallel_for(samples, threads, [&](std::size_t i) {
      Engine rng(derive_seed(row_seed, i));
      values[i] = toll(generate(f, k, rng), kind, spec);
    });
    const Moments m = moments(values);
    TollRow row;
    row.k = k;
    row.value = m.mean;
    row.samples = samples;
    row.half_width = kHalfWidthZ * std::sqrt(m.variance / static_cast<Real>(samples));
    row.weight = toll_weight(f, k);
    const Real w = static_cast<Real>(row.weight.get_d());
    mc_sum += w * m.mean;
    mc_var += w * w * m.variance / static_cast<Real>(samples);
    r.rows.push_back(std::move(row));
  }
  r.partial_sum = static_cast<Real>(r.exact_partial_sum.get_d()) + mc_sum;
  r.half_width = kHalfWidthZ * std::sqrt(mc_var);
  r.tail_bound = toll_tail(f, k_mc);
  return r;
}

Extrapolation extrapolate_mu(const TollSeriesReport& report) {
  std::vector<const TollRow*> exact;
  for (const auto& row : report.rows) {
    if (row.exact) exact.push_back(&row);
  }
  if (exact.size() < 5) throw std::invalid_argument("extrapolation needs at least five exact rows");
  // The first sizes are dominated by small-tree effects.
  std::vector<const TollRow*> fit;
  for (auto* row : exact) {
    if (row->k >= 3) fit.push_back(row);
  }
  if (fit.size() < 5) fit = exact;

  Extrapolation e;
  const Real tail = static_cast<Real>(report.tail_bound.get_d());
  e.lower = report.partial_sum - tail;
  e.upper = report.partial_sum + tail;
  e.rows_fitted = fit.size();

  Real best = std::numeric_limits<Real>::infinity();
  for (int step = 1; step <= 800; ++step) {
    const Real c = step * 0.005L;
    Real s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (auto* row : fit) {
      const Real x = std::pow(static_cast<Real>(row->k), -c);
      s1 += 1;
      sx += x;
      sxx += x * x;
      sy += row->value;
      sxy += x * row->value;
    }
    const Real det = s1 * sxx - sx * sx;
    if (std::abs(det) < 1e-30L) continue;
    const Real b = (s1 * sxy - sx * sy) / det;
    const Real a = (sy - b * sx) / s1;
    Real sse = 0;
    for (auto* row : fit) {
      const Real d = a + b * std::pow(static_cast<Real>(row->k), -c) - row->value;
      sse += d * d;
    }
    if (sse < best) {
      best = sse;
      e.a = a;
      e.b = b;
      e.c = c;
    }
  }

  e.c_at_bound = e.c >= 4;

  // sum_{k > K} w_k (a + b k^-c); beyond K + 10^6 use w_k ~ scale / k^2.
  const std::size_t K = report.k_mc;
  const std::size_t cut = K + 1000000;
  Real power_tail = 0;
  for (std::size_t k = cut; k > K; --k) {
    const Real kk = static_cast<Real>(k);
    const Real w = report.family == FamilyId::Recursive ? 1 / (kk * (kk + 1)) : 2 / ((kk + 1) * (kk + 2));
    power_tail += w * std::pow(kk, -e.c);
  }
  const Real scale = report.family == FamilyId::Recursive ? 1 : 2;
  power_tail += scale * std::pow(static_cast<Real>(cut), -1 - e.c) / (1 + e.c);
  e.heuristic = report.partial_sum + e.a * tail + e.b * power_tail;
  return e;
}

MCReport mc_clt(FamilyId f, const std::vector<EigenvalueSpec>& specs, MatrixKind kind, std::size_t n,
                std::size_t samples, std::uint64_t seed, const RunOptions& opt, bool keep_values) {
  if (n == 0) throw std::invalid_argument("tree size must be at least 1");
  if (samples < 2) throw std::invalid_argument("at least two samples are required");
  if (specs.empty()) throw std::invalid_argument("at least one eigenvalue is required");
  MCReport r;
  r.family = f;
  r.n = n;
  r.samples = samples;
  r.seed = seed;
  r.kind = kind;
  for (const auto& s : specs) r.specs.push_back(s.to_string());

  std::vector<std::vector<Real>> values(specs.size(), std::vector<Real>(samples));
  parallel_for(samples, resolve_threads(opt.threads), [&](std::size_t i) {
    Engine rng(derive_seed(seed, i));
    const RootedTree t = generate(f, n, rng);
    for (std::size_t s = 0; s < specs.size(); ++s) values[s][i] = static_cast<Real>(multiplicity(t, kind, specs[s]));
  });
  for (const auto& v : values) {
    r.moments.push_back(moments(v));
    r.ks.push_back(ks_normal(v));
  }
  if (specs.size() > 1) r.covariance = covariance(values);
  if (keep_values) r.values = std::move(values);
  return r;
}

FringeMu fringe_mu(FamilyId f, const FringePattern& p) {
  FringeMu out;
  const mpz_class h(static_cast<unsigned long>(p.size()));
  if (f == FamilyId::Recursive) {
    out.beta = shape_probability(f, p.tree());
    out.mu = out.beta / (h * (h + 1));
  } else {
    const RootedTree t = p.tree().with_default_slots();
    out.beta = shape_probability(f, t);
    out.mu = 2 * out.beta / ((h + 1) * (h + 2));
  }
  out.mu.canonicalize();
  return out;
}

ForcingResult forcing_check(const RootedTree& base, const FringePattern& p,
                            const std::vector<Attachment>& assignments, const EigenvalueSpec& spec) {
  if (multiplicity(p.tree(), MatrixKind::Adjacency, spec) == 0) {
    throw NotAnEigenvalueError("alpha = " + spec.to_string() + " is not an eigenvalue of the pattern");
  }
  ForcingResult r;
  const RootedTree t = attach_copies(base, assignments, p);
  r.result_size = t.size();
  for (const auto& a : assignments) {
    if (a.count >= 1) r.bound += a.count - 1;
  }
  r.multiplicity = multiplicity(t, MatrixKind::Adjacency, spec);
  r.holds = r.multiplicity >= r.bound;
  return r;
}

IndependenceReport independence_report(FamilyId f, std::size_t n, std::size_t samples, std::uint64_t seed,
                                       const RunOptions& opt) {
  if (n == 0) throw std::invalid_argument("tree size must be at least 1");
  if (samples < 2) throw std::invalid_argument("at least two samples are required");
  IndependenceReport r;
  r.family = f;
  r.n = n;
  r.samples = samples;
  r.seed = seed;
  const EigenvalueSpec zero = EigenvalueSpec::rational(0);
  std::vector<Real> ind(samples), mat(samples), nul(samples);
  std::vector<char> identity_bad(samples, 0), koenig_bad(samples, 0);
  parallel_for(samples, resolve_threads(opt.threads), [&](std::size_t i) {
    Engine rng(derive_seed(seed, i));
    const RootedTree t = generate(f, n, rng);
    const std::size_t n0 = multiplicity(t, MatrixKind::Adjacency, zero);
    const std::size_t m = matching_number(t);
    const std::size_t in = independence_number(t);
    identity_bad[i] = 2 * in != n0 + n;
    koenig_bad[i] = in + m != n;
    ind[i] = static_cast<Real>(in);
    mat[i] = static_cast<Real>(m);
    nul[i] = static_cast<Real>(n0);
  });
  r.independence = moments(ind);
  r.matching = moments(mat);
  r.nullity = moments(nul);
  r.identity_failures = static_cast<std::size_t>(std::count(identity_bad.begin(), identity_bad.end(), 1));
  r.koenig_failures = static_cast<std::size_t>(std::count(koenig_bad.begin(), koenig_bad.end(), 1));
  return r;
}

}  // namespace inctree
