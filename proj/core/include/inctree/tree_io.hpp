#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "inctree/rooted_tree.hpp"

namespace inctree {

// Line format: "n p2 p3 ... pn" with 1-based parents; vertex 1 is the root.
RootedTree parse_tree_line(std::string_view line);
std::string format_tree_line(const RootedTree& t);

// JSON format: {"n": N, "parents": [null, 0, ...]} with 0-based parents.
// An optional "slots" array of "L"/"R" (null at the root) marks a plane
// binary tree.
RootedTree parse_tree_json(std::string_view text);
std::string format_tree_json(const RootedTree& t);

// Accepts either format; a line whose first non-blank character is '{' is
// read as JSON.
RootedTree parse_tree(std::string_view text);

// The line format needs the root at vertex 0 and parent[i] < i; this
// relabels any tree into breadth-first order, which satisfies both.
RootedTree relabel_bfs(const RootedTree& t);

}  // namespace inctree
