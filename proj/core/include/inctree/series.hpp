#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "inctree/generators.hpp"

namespace inctree {

// Exact Taylor coefficients (index 0..order) of the t-derivatives at t = 0 of
// the sign-split generating functions Y_+(x,t), Y_-(x,t) for eigenvalue 0:
// F = Y(x,0), G = d/dt Y, H = d^2/dt^2 Y, each with its +/- parts.
struct SeriesTable {
  FamilyId family = FamilyId::Recursive;
  std::size_t order = 0;
  std::vector<mpq_class> F, F_plus, F_minus;
  std::vector<mpq_class> G, G_plus, G_minus;
  std::vector<mpq_class> H, H_plus, H_minus;
  // Index n in 1..order: E(N_0) = [x^n]G / [x^n]F and
  // Var(N_0) = [x^n]H / [x^n]F - E(N_0)^2. Index 0 is unused.
  std::vector<mpq_class> mean;
  std::vector<mpq_class> variance;
};

inline constexpr std::size_t kDefaultMaxSeriesOrder = 200;

// Solves the t = 0 systems coefficient by coefficient. Throws
// std::invalid_argument for order 0 and ResourceGuardError above max_order.
SeriesTable series_solve(FamilyId f, std::size_t order, std::size_t max_order = kDefaultMaxSeriesOrder);

}  // namespace inctree
