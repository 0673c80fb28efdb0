#include <doctest.h>

#include <cmath>

#include "inctree/asymptotics.hpp"
#include "inctree/power_series.hpp"
#include "inctree/series.hpp"
#include "oracles.hpp"

using namespace inctree;

namespace {

struct ExactMoments {
  mpq_class mean, variance;
};

ExactMoments brute_n0(FamilyId f, std::size_t n) {
  mpq_class s1 = 0, s2 = 0;
  long total = 0;
  auto visit = [&](const RootedTree& t) {
    long k = static_cast<long>(oracle::nullity_shifted(oracle::matrix_of(t, MatrixKind::Adjacency), 0));
    s1 += k;
    s2 += k * k;
    ++total;
  };
  if (f == FamilyId::Recursive) {
    oracle::for_each_recursive(n, visit);
  } else {
    oracle::for_each_binary(n, visit);
  }
  mpq_class mean = s1 / total;
  return {mean, s2 / total - mean * mean};
}

}  // namespace

TEST_CASE("power series basics") {
  using PS = PowerSeries<mpq_class>;
  auto x = PS::x(8);
  auto e = x.exp();
  CHECK(e[3] == mpq_class(1, 6));
  auto l = (PS::constant(8, 1) - x).log();
  CHECK(l[4] == mpq_class(-1, 4));
  auto inv = (PS::constant(8, 1) - x).inverse();
  for (std::size_t k = 0; k <= 8; ++k) CHECK(inv[k] == 1);
}

TEST_CASE("series_solve F coefficients") {
  auto rec = series_solve(FamilyId::Recursive, 20);
  auto bin = series_solve(FamilyId::BinaryIncreasing, 20);
  for (std::size_t n = 1; n <= 20; ++n) {
    CHECK(rec.F[n] == mpq_class(1, n));
    CHECK(bin.F[n] == 1);
    CHECK(rec.F[n] == rec.F_plus[n] + rec.F_minus[n]);
    CHECK(bin.G[n] == bin.G_plus[n] + bin.G_minus[n]);
  }
  CHECK(rec.F_plus[1] == 1);
  CHECK(rec.F_minus[1] == 0);
}

TEST_CASE("series moments for small n") {
  auto rec = series_solve(FamilyId::Recursive, 5);
  CHECK(rec.mean[4] == mpq_class(2, 3));
  CHECK(rec.mean[1] == 1);
  CHECK(rec.mean[2] == 0);
  auto bin = series_solve(FamilyId::BinaryIncreasing, 5);
  CHECK(bin.mean[5] == 1);
  CHECK(bin.variance[5] == 0);
}

TEST_CASE("series moments equal labelled-tree averages") {
  for (auto f : {FamilyId::Recursive, FamilyId::BinaryIncreasing}) {
    auto tab = series_solve(f, 7);
    for (std::size_t n = 1; n <= 7; ++n) {
      auto b = brute_n0(f, n);
      CHECK(tab.mean[n] == b.mean);
      CHECK(tab.variance[n] == b.variance);
    }
  }
}

TEST_CASE("series guards") {
  CHECK_THROWS_AS(series_solve(FamilyId::Recursive, 0), std::invalid_argument);
  CHECK_THROWS_AS(series_solve(FamilyId::Recursive, 201), ResourceGuardError);
  CHECK_NOTHROW(series_solve(FamilyId::Recursive, 12, 12));
}

TEST_CASE("variance per vertex approaches its limit") {
  const Real K1 = constants_rec().K1_direct.value;
  const Real K2 = constants_bin().K2.value;
  auto rec = series_solve(FamilyId::Recursive, 200);
  auto bin = series_solve(FamilyId::BinaryIncreasing, 200);
  Real last_rec = 1, last_bin = 1;
  for (std::size_t n : {50, 100, 200}) {
    Real dr = std::abs(rec.variance[n].get_d() / n - K1);
    Real db = std::abs(bin.variance[n].get_d() / n - K2);
    CHECK(dr < last_rec);
    CHECK(db < last_bin);
    last_rec = dr;
    last_bin = db;
  }
  CHECK(last_rec < 0.05L);
  CHECK(last_bin < 0.005L);
  // The recursive sequence rises toward K1.
  CHECK(rec.variance[50].get_d() / 50 < rec.variance[100].get_d() / 100);
  CHECK(rec.variance[100].get_d() / 100 < rec.variance[200].get_d() / 200);
}
