#include "inctree/rooted_tree.hpp"

#include <algorithm>
#include <map>
#include <string_view>

namespace inctree {

RootedTree::RootedTree() : parent_{kNoParent} { index(); }

RootedTree RootedTree::from_parents(std::vector<Vertex> parents) {
  return from_parents(std::move(parents), {});
}

RootedTree RootedTree::from_parents(std::vector<Vertex> parents, std::vector<Slot> slots) {
  const std::size_t n = parents.size();
  if (n == 0) throw TreeError(TreeError::Code::Empty, "tree must have at least one vertex");
  if (n >= kNoParent) throw TreeError(TreeError::Code::OutOfRange, "tree too large");

  std::size_t roots = 0;
  Vertex root = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (parents[i] == kNoParent) {
      ++roots;
      root = static_cast<Vertex>(i);
    } else if (parents[i] >= n) {
      throw TreeError(TreeError::Code::OutOfRange,
                      "parent of vertex " + std::to_string(i) + " is out of range");
    }
  }
  if (roots > 1) throw TreeError(TreeError::Code::MultipleRoots, "more than one root");
  if (roots == 0) throw TreeError(TreeError::Code::Cycle, "no root: parent links form a cycle");

  RootedTree t;
  t.parent_ = std::move(parents);
  t.root_ = root;
  t.index();
  if (t.post_order_.size() != n) {
    throw TreeError(TreeError::Code::Cycle, "parent links contain a cycle");
  }

  if (!slots.empty()) {
    if (slots.size() != n) throw TreeError(TreeError::Code::BadSlots, "slot array length mismatch");
    slots[root] = Slot::Left;
    for (Vertex v = 0; v < n; ++v) {
      auto ch = t.children(v);
      if (ch.size() > 2) {
        throw TreeError(TreeError::Code::BadSlots, "binary tree vertex with more than two children");
      }
      if (ch.size() == 2 && slots[ch[0]] == slots[ch[1]]) {
        throw TreeError(TreeError::Code::BadSlots, "two children share a slot");
      }
    }
    t.slot_ = std::move(slots);
  }
  return t;
}

void RootedTree::index() {
  const std::size_t n = parent_.size();
  child_begin_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (parent_[v] != kNoParent) ++child_begin_[parent_[v] + 1];
  }
  for (std::size_t v = 0; v < n; ++v) child_begin_[v + 1] += child_begin_[v];
  child_list_.assign(child_begin_[n], 0);
  std::vector<std::size_t> fill(child_begin_.begin(), child_begin_.end() - 1);
  for (std::size_t v = 0; v < n; ++v) {
    if (parent_[v] != kNoParent) child_list_[fill[parent_[v]]++] = static_cast<Vertex>(v);
  }

  // BFS from the root; reversed BFS order puts children before parents.
  // A cycle leaves some vertices unreached.
  post_order_.clear();
  post_order_.reserve(n);
  post_order_.push_back(root_);
  for (std::size_t head = 0; head < post_order_.size(); ++head) {
    for (Vertex c : children(post_order_[head])) post_order_.push_back(c);
  }
  std::reverse(post_order_.begin(), post_order_.end());
}

std::vector<std::size_t> RootedTree::subtree_sizes() const {
  std::vector<std::size_t> s(size(), 1);
  for (Vertex v : post_order_) {
    if (v != root_) s[parent_[v]] += s[v];
  }
  return s;
}

std::vector<std::size_t> RootedTree::depths() const {
  std::vector<std::size_t> d(size(), 0);
  for (auto it = post_order_.rbegin(); it != post_order_.rend(); ++it) {
    if (*it != root_) d[*it] = d[parent_[*it]] + 1;
  }
  return d;
}

RootedTree RootedTree::fringe_subtree(Vertex v) const {
  if (v >= size()) throw TreeError(TreeError::Code::BadVertex, "vertex out of range");
  std::vector<Vertex> order{v};
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (Vertex c : children(order[head])) order.push_back(c);
  }
  std::vector<Vertex> relabel(size(), kNoParent);
  for (std::size_t i = 0; i < order.size(); ++i) relabel[order[i]] = static_cast<Vertex>(i);
  std::vector<Vertex> parents(order.size(), kNoParent);
  std::vector<Slot> slots;
  if (has_slots()) slots.assign(order.size(), Slot::Left);
  for (std::size_t i = 1; i < order.size(); ++i) {
    parents[i] = relabel[parent_[order[i]]];
    if (has_slots()) slots[i] = slot_[order[i]];
  }
  return from_parents(std::move(parents), std::move(slots));
}

RootedTree RootedTree::with_default_slots() const {
  if (has_slots()) return *this;
  std::vector<Slot> slots(size(), Slot::Left);
  for (Vertex v = 0; v < size(); ++v) {
    auto ch = children(v);
    if (ch.size() > 2) {
      throw TreeError(TreeError::Code::BadSlots, "vertex with more than two children is not binary");
    }
    if (ch.size() == 2) slots[ch[1]] = Slot::Right;
  }
  return from_parents(parent_, std::move(slots));
}

RootedTree RootedTree::without_slots() const { return from_parents(parent_); }

RootedTree build_tree(std::vector<Vertex> parents) {
  return RootedTree::from_parents(std::move(parents));
}

RootedTree make_path(std::size_t n) {
  std::vector<Vertex> p(n, kNoParent);
  for (std::size_t i = 1; i < n; ++i) p[i] = static_cast<Vertex>(i - 1);
  return RootedTree::from_parents(std::move(p));
}

RootedTree make_star(std::size_t leaves) {
  std::vector<Vertex> p(leaves + 1, 0);
  p[0] = kNoParent;
  return RootedTree::from_parents(std::move(p));
}

namespace {

std::string compose_key(const RootedTree& t, Vertex v, std::vector<std::string>& keys,
                        ShapeMode mode) {
  auto ch = t.children(v);
  std::string out = "(";
  if (mode == ShapeMode::Unordered) {
    std::vector<std::string*> parts;
    parts.reserve(ch.size());
    for (Vertex c : ch) parts.push_back(&keys[c]);
    std::sort(parts.begin(), parts.end(),
              [](const std::string* a, const std::string* b) { return *a < *b; });
    for (auto* s : parts) out += *s;
  } else if (t.has_slots()) {
    const std::string* left = nullptr;
    const std::string* right = nullptr;
    for (Vertex c : ch) (t.slot(c) == Slot::Left ? left : right) = &keys[c];
    out += left ? *left : ".";
    out += right ? *right : ".";
  } else {
    for (Vertex c : ch) out += keys[c];
  }
  out += ')';
  return out;
}

}  // namespace

std::vector<std::string> fringe_keys(const RootedTree& t, ShapeMode mode) {
  std::vector<std::string> keys(t.size());
  for (Vertex v : t.post_order()) {
    keys[v] = compose_key(t, v, keys, mode);
  }
  return keys;
}

ShapeKey canonical_key(const RootedTree& t, ShapeMode mode) {
  auto keys = fringe_keys(t, mode);
  return ShapeKey{std::move(keys[t.root()]), mode};
}

mpz_class automorphism_count(const RootedTree& t) {
  auto keys = fringe_keys(t, ShapeMode::Unordered);
  mpz_class aut = 1;
  for (Vertex v = 0; v < t.size(); ++v) {
    std::map<std::string_view, unsigned long> groups;
    for (Vertex c : t.children(v)) ++groups[keys[c]];
    for (const auto& [k, m] : groups) {
      if (m > 1) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), m);
        aut *= f;
      }
    }
  }
  return aut;
}

std::size_t matching_number(const RootedTree& t) {
  std::vector<char> matched(t.size(), 0);
  std::size_t m = 0;
  for (Vertex v : t.post_order()) {
    if (v == t.root()) continue;
    Vertex p = t.parent(v);
    if (!matched[v] && !matched[p]) {
      matched[v] = matched[p] = 1;
      ++m;
    }
  }
  return m;
}

std::size_t independence_number(const RootedTree& t) {
  std::vector<std::size_t> in(t.size(), 1), out(t.size(), 0);
  for (Vertex v : t.post_order()) {
    for (Vertex c : t.children(v)) {
      in[v] += out[c];
      out[v] += std::max(in[c], out[c]);
    }
  }
  return std::max(in[t.root()], out[t.root()]);
}

LeafCounts leaves_quasipendants(const RootedTree& t) {
  if (t.size() == 1) return {1, 0};
  std::vector<char> quasi(t.size(), 0);
  LeafCounts r;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (t.degree(v) != 1) continue;
    ++r.leaves;
    Vertex nb = v == t.root() ? t.children(v)[0] : t.parent(v);
    quasi[nb] = 1;
  }
  r.quasipendants = static_cast<std::size_t>(std::count(quasi.begin(), quasi.end(), 1));
  return r;
}

FringePattern::FringePattern(RootedTree pattern)
    : tree_(std::move(pattern)),
      unordered_(canonical_key(tree_, ShapeMode::Unordered)),
      ordered_(canonical_key(tree_, ShapeMode::Ordered)) {}

std::size_t count_fringe(const RootedTree& t, const FringePattern& p, ShapeMode mode) {
  const auto sizes = t.subtree_sizes();
  const ShapeKey& target = p.key(mode);
  std::size_t count = 0;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (sizes[v] != p.size()) continue;
    if (canonical_key(t.fringe_subtree(v), mode) == target) ++count;
  }
  return count;
}

RootedTree attach_copies(const RootedTree& base, std::span<const Attachment> assignments,
                         const FringePattern& p) {
  std::vector<Vertex> parents(base.parents().begin(), base.parents().end());
  std::vector<char> seen(base.size(), 0);
  const auto& pat = p.tree();
  for (const auto& a : assignments) {
    if (a.vertex >= base.size()) {
      throw TreeError(TreeError::Code::BadVertex,
                      "attachment vertex " + std::to_string(a.vertex) + " is out of range");
    }
    if (seen[a.vertex]) {
      throw TreeError(TreeError::Code::BadVertex,
                      "attachment vertex " + std::to_string(a.vertex) + " listed twice");
    }
    seen[a.vertex] = 1;
    for (std::size_t k = 0; k < a.count; ++k) {
      const auto offset = static_cast<Vertex>(parents.size());
      for (Vertex u = 0; u < pat.size(); ++u) {
        parents.push_back(u == pat.root() ? a.vertex : pat.parent(u) + offset);
      }
    }
  }
  return RootedTree::from_parents(std::move(parents));
}

}  // namespace inctree
