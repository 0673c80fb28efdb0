#include "inctree/generators.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace inctree {

std::string_view to_string(FamilyId f) {
  return f == FamilyId::Recursive ? "rec" : "bin";
}

FamilyId parse_family(std::string_view s) {
  if (s == "rec" || s == "recursive") return FamilyId::Recursive;
  if (s == "bin" || s == "binary") return FamilyId::BinaryIncreasing;
  throw std::invalid_argument("unknown family '" + std::string(s) + "' (expected rec or bin)");
}

ShapeMode natural_mode(FamilyId f) {
  return f == FamilyId::Recursive ? ShapeMode::Unordered : ShapeMode::Ordered;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 finaliser applied twice so that neighbouring streams decorrelate.
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(master) ^ (stream * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

Engine make_engine(RngSeed seed) { return Engine(derive_seed(seed.master, seed.stream)); }

RootedTree gen_recursive(std::size_t n, Engine& rng) {
  if (n == 0) throw std::invalid_argument("tree size must be at least 1");
  std::vector<Vertex> parents(n, kNoParent);
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    parents[i] = static_cast<Vertex>(pick(rng));
  }
  return RootedTree::from_parents(std::move(parents));
}

RootedTree gen_recursive(std::size_t n, RngSeed seed) {
  auto rng = make_engine(seed);
  return gen_recursive(n, rng);
}

RootedTree gen_binary(std::size_t n, Engine& rng) {
  if (n == 0) throw std::invalid_argument("tree size must be at least 1");
  std::vector<Vertex> parents(n, kNoParent);
  std::vector<Slot> slots(n, Slot::Left);
  // A tree with k vertices has k + 1 free slots.
  std::vector<std::pair<Vertex, Slot>> free_slots{{0, Slot::Left}, {0, Slot::Right}};
  free_slots.reserve(n + 1);
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, free_slots.size() - 1);
    const std::size_t k = pick(rng);
    auto [v, side] = free_slots[k];
    free_slots[k] = free_slots.back();
    free_slots.pop_back();
    parents[i] = v;
    slots[i] = side;
    free_slots.emplace_back(static_cast<Vertex>(i), Slot::Left);
    free_slots.emplace_back(static_cast<Vertex>(i), Slot::Right);
  }
  return RootedTree::from_parents(std::move(parents), std::move(slots));
}

RootedTree gen_binary(std::size_t n, RngSeed seed) {
  auto rng = make_engine(seed);
  return gen_binary(n, rng);
}

RootedTree generate(FamilyId f, std::size_t n, Engine& rng) {
  return f == FamilyId::Recursive ? gen_recursive(n, rng) : gen_binary(n, rng);
}

mpz_class hook_product(const RootedTree& t) {
  mpz_class h = 1;
  for (auto s : t.subtree_sizes()) h *= static_cast<unsigned long>(s);
  return h;
}

mpq_class shape_probability(FamilyId f, const RootedTree& t, EnumMode mode) {
  const mpz_class hook = hook_product(t);
  if (f == FamilyId::Recursive) {
    mpq_class p(mpz_class(static_cast<unsigned long>(t.size())), hook * automorphism_count(t));
    p.canonicalize();
    return p;
  }
  if (mode == EnumMode::Natural) {
    mpq_class p(mpz_class(1), hook);
    p.canonicalize();
    return p;
  }
  std::size_t internal = 0;
  for (Vertex v = 0; v < t.size(); ++v) internal += t.child_count(v) > 0 ? 1 : 0;
  mpz_class num;
  mpz_ui_pow_ui(num.get_mpz_t(), 2, internal);
  mpq_class p(num, hook * automorphism_count(t));
  p.canonicalize();
  return p;
}

namespace {

struct ShapeRef {
  std::uint32_t size;
  std::uint32_t index;
  friend bool operator==(const ShapeRef&, const ShapeRef&) = default;
};

// Unordered shapes: children as a non-increasing sequence under (size, index).
// Plane binary shapes: exactly two entries, left then right, size 0 = empty.
struct ShapeNode {
  std::vector<ShapeRef> kids;
};

class Catalog {
public:
  Catalog(bool plane, std::size_t max_children) : plane_(plane), max_children_(max_children) {
    levels_.resize(2);
    levels_[1].push_back(ShapeNode{plane_ ? std::vector<ShapeRef>{{0, 0}, {0, 0}}
                                          : std::vector<ShapeRef>{}});
  }

  const std::vector<ShapeNode>& level(std::size_t n) {
    while (levels_.size() <= n) grow();
    return levels_[n];
  }

  RootedTree build(std::size_t n, std::size_t index) const {
    std::vector<Vertex> parents;
    std::vector<Slot> slots;
    parents.reserve(n);
    append(ShapeRef{static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(index)}, kNoParent,
           Slot::Left, parents, slots);
    if (!plane_) slots.clear();
    return RootedTree::from_parents(std::move(parents), std::move(slots));
  }

private:
  void grow() {
    const std::size_t n = levels_.size();
    levels_.emplace_back();
    auto& out = levels_.back();
    if (plane_) {
      for (std::size_t l = 0; l <= n - 1; ++l) {
        const std::size_t r = n - 1 - l;
        const std::size_t lc = l == 0 ? 1 : levels_[l].size();
        const std::size_t rc = r == 0 ? 1 : levels_[r].size();
        for (std::size_t i = 0; i < lc; ++i) {
          for (std::size_t j = 0; j < rc; ++j) {
            out.push_back(ShapeNode{{{static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(i)},
                                     {static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(j)}}});
          }
        }
      }
      return;
    }
    std::vector<ShapeRef> current;
    extend(n - 1, n - 1, std::numeric_limits<std::uint32_t>::max(), current, out);
  }

  void extend(std::size_t remaining, std::size_t max_size, std::uint32_t max_index,
              std::vector<ShapeRef>& current, std::vector<ShapeNode>& out) {
    if (remaining == 0) {
      out.push_back(ShapeNode{current});
      return;
    }
    if (current.size() == max_children_) return;
    for (std::size_t s = std::min(remaining, max_size); s >= 1; --s) {
      const auto& lvl = levels_[s];
      std::size_t top = lvl.size();
      if (s == max_size && max_index != std::numeric_limits<std::uint32_t>::max()) {
        top = static_cast<std::size_t>(max_index) + 1;
      }
      for (std::size_t i = top; i-- > 0;) {
        current.push_back(ShapeRef{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(i)});
        extend(remaining - s, s, static_cast<std::uint32_t>(i), current, out);
        current.pop_back();
      }
    }
  }

  void append(ShapeRef ref, Vertex parent, Slot side, std::vector<Vertex>& parents,
              std::vector<Slot>& slots) const {
    const auto self = static_cast<Vertex>(parents.size());
    parents.push_back(parent);
    slots.push_back(side);
    const auto& node = levels_[ref.size][ref.index];
    if (plane_) {
      if (node.kids[0].size > 0) append(node.kids[0], self, Slot::Left, parents, slots);
      if (node.kids[1].size > 0) append(node.kids[1], self, Slot::Right, parents, slots);
      return;
    }
    for (const auto& k : node.kids) append(k, self, Slot::Left, parents, slots);
  }

  bool plane_;
  std::size_t max_children_;
  std::vector<std::vector<ShapeNode>> levels_;
};

}  // namespace

std::vector<ShapeAtom> enum_shapes(FamilyId f, std::size_t n, EnumMode mode,
                                   const EnumLimits& limits) {
  if (n == 0) throw std::invalid_argument("tree size must be at least 1");
  const bool plane = f == FamilyId::BinaryIncreasing && mode == EnumMode::Natural;
  std::size_t limit = limits.max_recursive;
  if (f == FamilyId::BinaryIncreasing) {
    limit = plane ? limits.max_binary_plane : limits.max_binary_unordered;
  }
  if (n > limit) {
    throw ResourceGuardError("enumeration of size " + std::to_string(n) + " exceeds the limit " +
                             std::to_string(limit) + " for this family");
  }
  Catalog cat(plane, f == FamilyId::Recursive ? std::numeric_limits<std::size_t>::max() : 2);
  const auto& lvl = cat.level(n);
  const ShapeMode key_mode = plane ? ShapeMode::Ordered : ShapeMode::Unordered;
  std::vector<ShapeAtom> atoms;
  atoms.reserve(lvl.size());
  for (std::size_t i = 0; i < lvl.size(); ++i) {
    RootedTree rep = cat.build(n, i);
    ShapeKey key = canonical_key(rep, key_mode);
    mpq_class p = shape_probability(f, rep, mode);
    atoms.push_back(ShapeAtom{std::move(key), std::move(rep), std::move(p)});
  }
  return atoms;
}

}  // namespace inctree
