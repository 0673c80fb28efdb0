#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "inctree/number_field.hpp"
#include "inctree/polynomial.hpp"
#include "inctree/rooted_tree.hpp"

namespace inctree {

enum class MatrixKind { Adjacency, Laplacian, ModifiedLaplacian };

// "adj", "lap", "modlap".
std::string_view to_string(MatrixKind k);
MatrixKind parse_matrix_kind(std::string_view s);

// Diagonal entry of the matrix at v (the off-diagonal entries are +-1 on
// edges and enter only squared).
long diagonal_entry(const RootedTree& t, Vertex v, MatrixKind k);

// det(zI - M) via the branch recursion
//   Psi(T) = (z - a_r) prod Psi(T_j) - sum_j Psi(T_j - v_j) prod_{i != j} Psi(T_i).
IntPolynomial char_poly(const RootedTree& t, MatrixKind k);

struct SpectralCounts {
  std::size_t multiplicity = 0;
  // Multiplicity in T minus the zeros already present before the root is
  // processed. For Adjacency and ModifiedLaplacian the latter is the sum over
  // branches of the same kind; for Laplacian the branches are counted with
  // the modified Laplacian, since deleting the root leaves exactly those blocks.
  int toll = 0;
};

// Bottom-up congruence diagonalization of M - alpha I over Q or Q(alpha).
SpectralCounts diagonalize(const RootedTree& t, MatrixKind k, const EigenvalueSpec& spec);

std::size_t multiplicity(const RootedTree& t, MatrixKind k, const EigenvalueSpec& spec);
int toll(const RootedTree& t, MatrixKind k, const EigenvalueSpec& spec);

// n - 2 * matching number.
std::size_t multiplicity_zero_fast(const RootedTree& t);

// +1 if every root branch has sign -1 (so +1 for a single vertex), else -1.
int sign_type_zero(const RootedTree& t);

}  // namespace inctree
