#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "homlab/structure.hpp"

namespace homlab {

/// Undirected loopless graph on 0..order()-1 with bit-packed adjacency rows.
class FiniteGraph {
 public:
  FiniteGraph() = default;
  explicit FiniteGraph(int n);

  int order() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool adjacent(int u, int v) const;
  /// Adds or removes the edge {u, v}. Throws SelfLoop when u == v.
  void set_edge(int u, int v, bool present = true);
  void add_edge(int u, int v) { set_edge(u, v, true); }

  std::span<const std::uint64_t> row(int v) const;
  int degree(int v) const;
  std::size_t edge_count() const;
  /// Edges as (u, v) with u < v, lexicographic.
  std::vector<std::pair<int, int>> edges() const;

  friend bool operator==(const FiniteGraph&, const FiniteGraph&) = default;

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

FiniteGraph complement(const FiniteGraph& g);
FiniteGraph induced_subgraph(const FiniteGraph& g, std::span<const int> verts);
/// Image of g under the vertex permutation (edge {u,v} becomes {perm[u], perm[v]}).
FiniteGraph relabel(const FiniteGraph& g, std::span<const int> perm);

/// The graph as a structure over graph_signature() (symmetric `E`).
RelationalStructure to_structure(const FiniteGraph& g);
/// Inverse of to_structure; throws SignatureMismatch unless the structure has
/// a single binary relation that is symmetric and irreflexive.
FiniteGraph graph_from_structure(const RelationalStructure& s);

/// Standard families used across the library and its tests.
namespace graphs {

FiniteGraph empty(int n);
FiniteGraph complete(int n);
FiniteGraph path(int n);
FiniteGraph cycle(int n);
FiniteGraph complete_bipartite(int m, int n);
FiniteGraph complete_multipartite(std::span<const int> part_sizes);
/// Parts of equal size: `parts` parts of `size` vertices each.
FiniteGraph complete_multipartite(int parts, int size);
FiniteGraph disjoint_union(const FiniteGraph& a, const FiniteGraph& b);
/// m disjoint copies of g.
FiniteGraph copies(int m, const FiniteGraph& g);
/// Vertices are the edges of g in lexicographic order; adjacent iff they share an end.
FiniteGraph line_graph(const FiniteGraph& g);
FiniteGraph petersen();

}  // namespace graphs

}  // namespace homlab
