#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace inctree {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoParent = std::numeric_limits<Vertex>::max();

// Side of a child slot in a plane binary tree.
enum class Slot : std::uint8_t { Left = 0, Right = 1 };

class TreeError : public std::invalid_argument {
public:
  enum class Code { Empty, OutOfRange, MultipleRoots, Cycle, BadSlots, BadVertex, Syntax };

  TreeError(Code code, const std::string& what)
      : std::invalid_argument(what), code_(code) {}

  Code code() const noexcept { return code_; }

private:
  Code code_;
};

// Rooted tree stored as a parent array. Children lists are derived and kept
// in increasing vertex order. Binary increasing trees additionally carry a
// left/right slot per non-root vertex.
class RootedTree {
public:
  // Single vertex.
  RootedTree();

  // Validates `parents` (exactly one kNoParent entry, indices in range,
  // acyclic). Throws TreeError.
  static RootedTree from_parents(std::vector<Vertex> parents);
  static RootedTree from_parents(std::vector<Vertex> parents, std::vector<Slot> slots);

  std::size_t size() const noexcept { return parent_.size(); }
  Vertex root() const noexcept { return root_; }
  Vertex parent(Vertex v) const { return parent_[v]; }
  std::span<const Vertex> parents() const noexcept { return parent_; }
  std::span<const Vertex> children(Vertex v) const {
    return {child_list_.data() + child_begin_[v], child_list_.data() + child_begin_[v + 1]};
  }
  std::size_t child_count(Vertex v) const { return child_begin_[v + 1] - child_begin_[v]; }
  // Degree in the underlying unrooted tree.
  std::size_t degree(Vertex v) const { return child_count(v) + (v == root_ ? 0 : 1); }

  bool has_slots() const noexcept { return !slot_.empty(); }
  Slot slot(Vertex v) const { return slot_[v]; }
  std::span<const Slot> slots() const noexcept { return slot_; }

  // Vertices ordered so that every vertex precedes its parent.
  std::span<const Vertex> post_order() const noexcept { return post_order_; }

  // Number of vertices in the fringe subtree rooted at each vertex.
  std::vector<std::size_t> subtree_sizes() const;
  std::vector<std::size_t> depths() const;

  // Copy with the fringe subtree at v relabelled so that v is vertex 0.
  RootedTree fringe_subtree(Vertex v) const;

  // Same tree with slots assigned in child order (first child Left, second
  // Right). Throws if a vertex has more than two children.
  RootedTree with_default_slots() const;
  RootedTree without_slots() const;

  friend bool operator==(const RootedTree& a, const RootedTree& b) {
    return a.parent_ == b.parent_ && a.slot_ == b.slot_;
  }

private:
  void index();

  std::vector<Vertex> parent_;
  std::vector<Slot> slot_;
  Vertex root_ = 0;
  std::vector<std::size_t> child_begin_;
  std::vector<Vertex> child_list_;
  std::vector<Vertex> post_order_;
};

RootedTree build_tree(std::vector<Vertex> parents);

// Path on n vertices rooted at an end; vertex i is the child of i-1.
RootedTree make_path(std::size_t n);
// Root with `leaves` leaf children.
RootedTree make_star(std::size_t leaves);

enum class ShapeMode : std::uint8_t { Unordered, Ordered };

// Canonical encoding of a rooted shape. Keys are equal iff the trees are
// isomorphic as rooted trees under the given mode.
struct ShapeKey {
  std::string key;
  ShapeMode mode = ShapeMode::Unordered;

  friend bool operator==(const ShapeKey&, const ShapeKey&) = default;
  friend auto operator<=>(const ShapeKey&, const ShapeKey&) = default;
};

// AHU encoding. Unordered: '(' + sorted child keys + ')'. Ordered: children
// in stored order, or for slotted trees '(' + left|'.' + right|'.' + ')'.
ShapeKey canonical_key(const RootedTree& t, ShapeMode mode);

// Canonical keys of every fringe subtree, indexed by vertex.
std::vector<std::string> fringe_keys(const RootedTree& t, ShapeMode mode);

// |Aut(t)| of the unordered rooted tree.
mpz_class automorphism_count(const RootedTree& t);

std::size_t matching_number(const RootedTree& t);
// Maximum independent set size, by the include/exclude tree DP.
std::size_t independence_number(const RootedTree& t);

struct LeafCounts {
  std::size_t leaves = 0;
  std::size_t quasipendants = 0;
};
// Leaves are degree-one vertices of the unrooted tree. A single vertex counts
// as one leaf with no quasipendant.
LeafCounts leaves_quasipendants(const RootedTree& t);

struct FringePattern {
  explicit FringePattern(RootedTree pattern);

  const RootedTree& tree() const noexcept { return tree_; }
  const ShapeKey& key(ShapeMode mode) const {
    return mode == ShapeMode::Unordered ? unordered_ : ordered_;
  }
  std::size_t size() const noexcept { return tree_.size(); }

private:
  RootedTree tree_;
  ShapeKey unordered_;
  ShapeKey ordered_;
};

// Number of vertices whose fringe subtree is isomorphic to the pattern.
std::size_t count_fringe(const RootedTree& t, const FringePattern& p, ShapeMode mode);

struct Attachment {
  Vertex vertex;
  std::size_t count;
};

// Joins `count` fresh copies of the pattern to each listed vertex by an edge
// from the vertex to the copy's root. New vertices are appended in order.
RootedTree attach_copies(const RootedTree& base, std::span<const Attachment> assignments,
                         const FringePattern& p);

}  // namespace inctree
