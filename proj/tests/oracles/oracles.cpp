#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace oracle {

using inctree::kNoParent;
using inctree::Slot;
using inctree::Vertex;

void for_each_recursive(std::size_t n, const std::function<void(const RootedTree&)>& visit) {
  std::vector<Vertex> p(n, kNoParent);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      visit(RootedTree::from_parents(p));
      return;
    }
    for (Vertex j = 0; j < i; ++j) {
      p[i] = j;
      rec(i + 1);
    }
  };
  rec(1);
}

void for_each_binary(std::size_t n, const std::function<void(const RootedTree&)>& visit) {
  std::vector<Vertex> p(n, kNoParent);
  std::vector<Slot> s(n, Slot::Left);
  std::vector<std::pair<Vertex, Slot>> free{{0, Slot::Left}, {0, Slot::Right}};
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      visit(RootedTree::from_parents(p, s));
      return;
    }
    for (std::size_t f = 0; f < free.size(); ++f) {
      auto taken = free[f];
      p[i] = taken.first;
      s[i] = taken.second;
      free.erase(free.begin() + static_cast<long>(f));
      free.push_back({static_cast<Vertex>(i), Slot::Left});
      free.push_back({static_cast<Vertex>(i), Slot::Right});
      rec(i + 1);
      free.pop_back();
      free.pop_back();
      free.insert(free.begin() + static_cast<long>(f), taken);
    }
  };
  if (n == 1) {
    visit(RootedTree::from_parents(p, s));
    return;
  }
  rec(1);
}

std::size_t matching_exhaustive(const RootedTree& t) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (v != t.root()) edges.push_back({v, t.parent(v)});
  }
  if (edges.size() > 20) throw std::invalid_argument("too many edges for exhaustive matching");
  std::size_t best = 0;
  for (unsigned long mask = 0; mask < (1ul << edges.size()); ++mask) {
    std::vector<char> used(t.size(), 0);
    std::size_t size = 0;
    bool ok = true;
    for (std::size_t e = 0; e < edges.size() && ok; ++e) {
      if (!(mask >> e & 1)) continue;
      auto [a, b] = edges[e];
      if (used[a] || used[b]) ok = false;
      used[a] = used[b] = 1;
      ++size;
    }
    if (ok) best = std::max(best, size);
  }
  return best;
}

std::size_t independence_exhaustive(const RootedTree& t) {
  const std::size_t n = t.size();
  if (n > 22) throw std::invalid_argument("too many vertices for exhaustive independence");
  std::size_t best = 0;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    bool ok = true;
    for (Vertex v = 0; v < n && ok; ++v) {
      if (v != t.root() && (mask >> v & 1) && (mask >> t.parent(v) & 1)) ok = false;
    }
    if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcountl(mask)));
  }
  return best;
}

Matrix matrix_of(const RootedTree& t, inctree::MatrixKind k) {
  const std::size_t n = t.size();
  Matrix m(n, std::vector<long>(n, 0));
  const long off = k == inctree::MatrixKind::Adjacency ? 1 : -1;
  for (Vertex v = 0; v < n; ++v) {
    if (v == t.root()) continue;
    Vertex p = t.parent(v);
    m[v][p] = m[p][v] = off;
    if (k != inctree::MatrixKind::Adjacency) {
      ++m[v][v];
      ++m[p][p];
    }
  }
  if (k == inctree::MatrixKind::ModifiedLaplacian) ++m[t.root()][t.root()];
  return m;
}

Matrix without_root(const Matrix& m, Vertex root) {
  Matrix out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == root) continue;
    std::vector<long> row;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j != root) row.push_back(m[i][j]);
    }
    out.push_back(std::move(row));
  }
  return out;
}

inctree::IntPolynomial charpoly(const Matrix& a) {
  const std::size_t n = a.size();
  using Z = mpz_class;
  std::vector<std::vector<Z>> A(n, std::vector<Z>(n)), M(n, std::vector<Z>(n, 0)), AM(n, std::vector<Z>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) A[i][j] = a[i][j];
  }
  // c[n-k] coefficients; M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
  std::vector<Z> c(n + 1, 0);
  c[n] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) M[i][i] += c[n - k + 1];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Z s = 0;
        for (std::size_t l = 0; l < n; ++l) s += A[i][l] * M[l][j];
        AM[i][j] = s;
      }
    }
    Z tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += AM[i][i];
    c[n - k] = -tr / static_cast<long>(k);
    M = AM;
  }
  return inctree::IntPolynomial(std::move(c));
}

std::size_t exponent_of(const inctree::IntPolynomial& p, const inctree::IntPolynomial& m) {
  inctree::RatPolynomial q = inctree::to_rational(p);
  const inctree::RatPolynomial d = inctree::to_rational(m);
  std::size_t e = 0;
  for (;;) {
    auto [quot, rem] = q.divmod(d);
    if (!rem.is_zero()) return e;
    q = std::move(quot);
    ++e;
  }
}

std::size_t nullity_shifted(const Matrix& m, long a) {
  const std::size_t n = m.size();
  std::vector<std::vector<mpq_class>> b(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) b[i][j] = m[i][j] - (i == j ? a : 0);
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t piv = rank;
    while (piv < n && b[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(b[piv], b[rank]);
    for (std::size_t i = rank + 1; i < n; ++i) {
      if (b[i][col] == 0) continue;
      mpq_class f = b[i][col] / b[rank][col];
      for (std::size_t j = col; j < n; ++j) b[i][j] -= f * b[rank][j];
    }
    ++rank;
  }
  return n - rank;
}

std::string ahu(const RootedTree& t, bool ordered) {
  std::function<std::string(Vertex)> key = [&](Vertex v) {
    std::vector<std::string> parts;
    if (ordered && t.has_slots()) {
      std::string l = ".", r = ".";
      for (Vertex c : t.children(v)) (t.slot(c) == Slot::Left ? l : r) = key(c);
      return "(" + l + r + ")";
    }
    for (Vertex c : t.children(v)) parts.push_back(key(c));
    if (!ordered) std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (auto& p : parts) s += p;
    return s + ")";
  };
  return key(t.root());
}

inctree::IntPolynomial poly(std::initializer_list<long> c) {
  std::vector<mpz_class> v;
  for (long x : c) v.emplace_back(x);
  return inctree::IntPolynomial(std::move(v));
}

}  // namespace oracle
