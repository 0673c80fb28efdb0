#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "inctree/generators.hpp"
#include "inctree/number_field.hpp"
#include "inctree/quadrature.hpp"
#include "inctree/rooted_tree.hpp"
#include "inctree/spectral.hpp"
#include "inctree/statistics.hpp"

namespace inctree {

// Monte Carlo half-widths are this many standard errors.
inline constexpr Real kHalfWidthZ = 3.29L;

struct RunOptions {
  unsigned threads = 0;  // 0: hardware concurrency
};

unsigned resolve_threads(unsigned requested);

// Runs body(i) for i in [0, count) on `threads` workers with static
// contiguous chunks. Callers write results by index, so output does not
// depend on the worker count.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

struct TollRow {
  std::size_t k = 0;
  bool exact = false;
  std::optional<mpq_class> exact_value;  // exact rows only
  Real value = 0;                        // E(toll at size k), exact or estimated
  Real half_width = 0;                   // 0 for exact rows
  std::size_t samples = 0;               // Monte Carlo rows only
  mpq_class weight;                      // 1/(k(k+1)) or 2/((k+1)(k+2))
};

struct TollSeriesReport {
  FamilyId family = FamilyId::Recursive;
  std::string spec;
  MatrixKind kind = MatrixKind::Adjacency;
  std::size_t k_exact = 0;
  std::size_t k_mc = 0;
  std::uint64_t seed = 0;
  std::vector<TollRow> rows;
  mpq_class exact_partial_sum;  // over rows 1..k_exact
  Real partial_sum = 0;         // over rows 1..k_mc, Monte Carlo rows included
  Real half_width = 0;          // of partial_sum
  mpq_class tail_bound;         // sum of weights beyond k_mc
};

// Series weight of size k for the family.
mpq_class toll_weight(FamilyId f, std::size_t k);
// sum_{k > K} toll_weight(f, k): 1/(K+1) for rec, 2/(K+2) for bin.
mpq_class toll_tail(FamilyId f, std::size_t K);

// Rows 1..k_exact from enum_shapes (binary shapes are merged over plane
// embeddings, which do not change any multiplicity); rows k_exact+1..k_mc
// from `samples` generated trees each.
TollSeriesReport toll_series(FamilyId f, const EigenvalueSpec& spec, std::size_t k_exact, std::size_t k_mc,
                             std::size_t samples, std::uint64_t seed, const RunOptions& opt = {},
                             MatrixKind kind = MatrixKind::Adjacency, const EnumLimits& limits = {});

struct Extrapolation {
  Real lower = 0;  // partial_sum - tail
  Real upper = 0;  // partial_sum + tail
  // Heuristic: E(toll at k) ~ a + b k^-c fitted to the exact rows, summed
  // over the tail.
  Real heuristic = 0;
  Real a = 0, b = 0, c = 0;
  std::size_t rows_fitted = 0;
  // c is searched on (0, 4]; true when the best fit sits on the upper edge.
  bool c_at_bound = false;
};

// Requires at least five exact rows.
Extrapolation extrapolate_mu(const TollSeriesReport& report);

enum class Statistic { Multiplicity, Independence, Matching };

struct MCReport {
  FamilyId family = FamilyId::Recursive;
  std::size_t n = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  Statistic statistic = Statistic::Multiplicity;
  MatrixKind kind = MatrixKind::Adjacency;
  std::vector<std::string> specs;
  std::vector<Moments> moments;  // one per spec
  std::vector<KSResult> ks;      // one per spec
  std::vector<std::vector<Real>> covariance;  // across specs when more than one
  std::vector<std::vector<Real>> values;      // values[spec][sample], if kept
};

// M trees of size n, each with its own derived seed (stream = sample index);
// the multiplicity of every spec is evaluated on every tree.
MCReport mc_clt(FamilyId f, const std::vector<EigenvalueSpec>& specs, MatrixKind kind, std::size_t n,
                std::size_t samples, std::uint64_t seed, const RunOptions& opt = {}, bool keep_values = false);

struct FringeMu {
  mpq_class beta;
  mpq_class mu;
};

// beta = P(random tree of size |H| is H); mu = beta/(|H|(|H|+1)) for rec,
// 2 beta/((|H|+1)(|H|+2)) for bin. Binary patterns without slots get the
// default (first child left) embedding. Throws TreeError for patterns that
// cannot occur in the family.
FringeMu fringe_mu(FamilyId f, const FringePattern& p);

class NotAnEigenvalueError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct ForcingResult {
  bool holds = false;
  std::size_t multiplicity = 0;
  std::size_t bound = 0;  // sum over listed vertices of (k_i - 1), k_i >= 1
  std::size_t result_size = 0;
};

// Throws NotAnEigenvalueError if alpha is not an adjacency eigenvalue of the
// pattern.
ForcingResult forcing_check(const RootedTree& base, const FringePattern& p,
                            const std::vector<Attachment>& assignments, const EigenvalueSpec& spec);

struct IndependenceReport {
  FamilyId family = FamilyId::Recursive;
  std::size_t n = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  Moments independence;
  Moments matching;
  Moments nullity;  // N_0
  // Samples where i != (N_0 + n)/2 or i + m != n.
  std::size_t identity_failures = 0;
  std::size_t koenig_failures = 0;
};

// i from the include/exclude DP, m from the greedy matching and N_0 from the
// diagonalization, on each of M generated trees.
IndependenceReport independence_report(FamilyId f, std::size_t n, std::size_t samples, std::uint64_t seed,
                                       const RunOptions& opt = {});

}  // namespace inctree
