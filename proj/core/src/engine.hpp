#pragma once

// Partition-refinement kernel shared by the isomorphism, automorphism and
// canonical-form searches. Internal to the core library.

#include <cstdint>
#include <span>
#include <vector>

#include "homlab/graph.hpp"
#include "homlab/structure.hpp"

namespace homlab::detail {

/// A structure rewritten into bitmask rows for fast refinement.
struct Compiled {
  struct High {
    std::size_t relation = 0;
    int arity = 0;
    std::vector<int> flat;  // tuples back to back
  };

  const RelationalStructure* source = nullptr;  // null when compiled from a graph
  const Signature* signature = nullptr;
  int n = 0;
  int binary_count = 0;
  std::vector<std::size_t> binary_relations;
  std::vector<std::uint64_t> out;    // [b * n + v]
  std::vector<std::uint64_t> in;     // [b * n + v]
  std::vector<std::uint64_t> loops;  // [b]
  std::vector<std::size_t> unary_relations;
  std::vector<std::uint64_t> unary;  // [u]
  std::vector<High> high;
  std::vector<std::uint64_t> vertex_key;  // iso-invariant per-vertex start value
};

/// Throws SizeLimit above kEngineLimit points.
Compiled compile(const RelationalStructure& s);
Compiled compile(const FiniteGraph& g);

using Colouring = std::vector<int>;

/// Ordered-partition refinement. Colours are contiguous ranks 0..cells-1 and
/// every rank is a function of iso-invariant data only, so two structures
/// refined jointly receive comparable colours.
class Refiner {
 public:
  /// Initial colouring from unary relations, loops and tuple self-patterns.
  Colouring initial(const Compiled& c, int& cells);
  /// Joint initial colouring for two structures; false when cell sizes differ.
  bool initial_joint(const Compiled& a, Colouring& ca, const Compiled& b, Colouring& cb, int& cells);

  /// Refines to the coarsest equitable partition reachable by counting
  /// neighbours per cell. With `b` non-null both are refined jointly and the
  /// result is false as soon as their cell sizes disagree.
  bool refine(const Compiled& a, Colouring& ca, const Compiled* b, Colouring* cb, int& cells);

 private:
  void signatures(const Compiled& c, const Colouring& col, int cells, std::vector<std::uint64_t>& sig, int width);
  bool rank(int n_a, int n_b, int width, Colouring& ca, Colouring* cb, int& cells);

  std::vector<std::uint64_t> masks_;
  std::vector<std::uint64_t> sig_;
  std::vector<std::uint64_t> high_hash_;
  std::vector<int> order_;
};

/// Splits v's cell into {v} and the rest; later cells shift up by one.
Colouring individualize(const Colouring& col, int v, int& cells);

/// First colour whose cell has more than one vertex, or -1 when discrete.
int first_nonsingleton(const Colouring& col, int cells);

/// Exact check that `perm` maps a onto b.
bool verify_isomorphism(const Compiled& a, const Compiled& b, std::span<const int> perm);

}  // namespace homlab::detail
