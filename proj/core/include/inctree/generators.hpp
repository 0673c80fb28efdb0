#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "inctree/rooted_tree.hpp"

namespace inctree {

enum class FamilyId : std::uint8_t { Recursive, BinaryIncreasing };

std::string_view to_string(FamilyId f);
// Accepts "rec"/"recursive" and "bin"/"binary".
FamilyId parse_family(std::string_view s);

// Isomorphism mode natural to a family: recursive trees are unordered,
// binary increasing trees are plane.
ShapeMode natural_mode(FamilyId f);

// Raised when a request would exceed a configured size limit.
class ResourceGuardError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RngSeed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;
};

// Stable 64-bit mix of (master, stream); per-sample engines are seeded from
// it so results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

using Engine = std::mt19937_64;
Engine make_engine(RngSeed seed);

// parent[i] uniform on {0..i-1}.
RootedTree gen_recursive(std::size_t n, RngSeed seed);
RootedTree gen_recursive(std::size_t n, Engine& rng);

// Uniform choice among the free left/right slots; the result carries slots.
RootedTree gen_binary(std::size_t n, RngSeed seed);
RootedTree gen_binary(std::size_t n, Engine& rng);

RootedTree generate(FamilyId f, std::size_t n, Engine& rng);

struct ShapeAtom {
  ShapeKey shape;
  RootedTree representative;
  mpq_class prob;
};

// Which isomorphism classes to enumerate. Natural picks the family's own
// mode; UnorderedBinary merges the plane embeddings of each binary shape.
enum class EnumMode : std::uint8_t { Natural, UnorderedBinary };

struct EnumLimits {
  std::size_t max_recursive = 18;
  std::size_t max_binary_plane = 14;
  std::size_t max_binary_unordered = 22;
};

// Every shape of size n with positive probability, each exactly once, with
// exact probabilities:
//   recursive (unordered)       n / (prod_v s_v * |Aut|)
//   binary (plane)              1 / prod_v s_v
//   binary (unordered, merged)  2^(#internal) / (prod_v s_v * |Aut|)
// where s_v are fringe-subtree sizes. Throws ResourceGuardError past the
// configured limit.
std::vector<ShapeAtom> enum_shapes(FamilyId f, std::size_t n, EnumMode mode = EnumMode::Natural,
                                   const EnumLimits& limits = {});

// Probability formulas above, evaluated on a single tree.
mpq_class shape_probability(FamilyId f, const RootedTree& t, EnumMode mode = EnumMode::Natural);

// prod_v s_v.
mpz_class hook_product(const RootedTree& t);

}  // namespace inctree
