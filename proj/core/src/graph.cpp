#include "homlab/graph.hpp"

#include <bit>
#include <string>

#include "homlab/errors.hpp"

namespace homlab {

FiniteGraph::FiniteGraph(int n) : n_(n) {
  if (n < 0) throw InvalidVertex("negative vertex count");
  words_ = (static_cast<std::size_t>(n) + 63) / 64;
  bits_.assign(words_ * static_cast<std::size_t>(n), 0);
}

void FiniteGraph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw InvalidVertex("vertex " + std::to_string(v) + " outside 0.." + std::to_string(n_ - 1));
}

bool FiniteGraph::adjacent(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  const auto row_start = static_cast<std::size_t>(u) * words_;
  return (bits_[row_start + static_cast<std::size_t>(v) / 64] >> (v % 64)) & 1U;
}

void FiniteGraph::set_edge(int u, int v, bool present) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw SelfLoop("loop at vertex " + std::to_string(u));
  auto flip = [&](int a, int b) {
    auto& w = bits_[static_cast<std::size_t>(a) * words_ + static_cast<std::size_t>(b) / 64];
    const std::uint64_t bit = std::uint64_t{1} << (b % 64);
    w = present ? (w | bit) : (w & ~bit);
  };
  flip(u, v);
  flip(v, u);
}

std::span<const std::uint64_t> FiniteGraph::row(int v) const {
  check_vertex(v);
  return {bits_.data() + static_cast<std::size_t>(v) * words_, words_};
}

int FiniteGraph::degree(int v) const {
  int d = 0;
  for (auto w : row(v)) d += std::popcount(w);
  return d;
}

std::size_t FiniteGraph::edge_count() const {
  std::size_t total = 0;
  for (auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total / 2;
}

std::vector<std::pair<int, int>> FiniteGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (adjacent(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

FiniteGraph complement(const FiniteGraph& g) {
  FiniteGraph h(g.order());
  for (int u = 0; u < g.order(); ++u) {
    for (int v = u + 1; v < g.order(); ++v) {
      if (!g.adjacent(u, v)) h.add_edge(u, v);
    }
  }
  return h;
}

FiniteGraph induced_subgraph(const FiniteGraph& g, std::span<const int> verts) {
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  for (int v : verts) {
    if (v < 0 || v >= g.order()) throw InvalidVertex("vertex " + std::to_string(v) + " outside graph");
    if (seen[static_cast<std::size_t>(v)]) throw InvalidVertex("vertex " + std::to_string(v) + " repeated");
    seen[static_cast<std::size_t>(v)] = 1;
  }
  const int k = static_cast<int>(verts.size());
  FiniteGraph h(k);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (g.adjacent(verts[static_cast<std::size_t>(i)], verts[static_cast<std::size_t>(j)])) h.add_edge(i, j);
    }
  }
  return h;
}

FiniteGraph relabel(const FiniteGraph& g, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != g.order()) throw InvalidVertex("permutation length differs from order");
  FiniteGraph h(g.order());
  for (auto [u, v] : g.edges()) h.add_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  return h;
}

RelationalStructure to_structure(const FiniteGraph& g) {
  RelationalStructure s(graph_signature(), g.order());
  for (auto [u, v] : g.edges()) {
    s.set(0, {u, v});
    s.set(0, {v, u});
  }
  return s;
}

FiniteGraph graph_from_structure(const RelationalStructure& s) {
  if (s.signature().size() != 1 || s.signature()[0].arity != 2) {
    throw SignatureMismatch("a graph needs exactly one binary relation");
  }
  FiniteGraph g(s.size());
  for (const auto& t : s.tuples(0)) {
    if (t[0] == t[1]) throw SignatureMismatch("relation is not irreflexive");
    if (!s.holds(0, {t[1], t[0]})) throw SignatureMismatch("relation is not symmetric");
    g.add_edge(t[0], t[1]);
  }
  return g;
}

namespace graphs {

FiniteGraph empty(int n) { return FiniteGraph(n); }

FiniteGraph complete(int n) {
  FiniteGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

FiniteGraph path(int n) {
  FiniteGraph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

FiniteGraph cycle(int n) {
  FiniteGraph g = path(n);
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}

FiniteGraph complete_bipartite(int m, int n) {
  const int sizes[] = {m, n};
  return complete_multipartite(sizes);
}

FiniteGraph complete_multipartite(std::span<const int> part_sizes) {
  std::vector<int> part;
  for (std::size_t p = 0; p < part_sizes.size(); ++p) {
    for (int i = 0; i < part_sizes[p]; ++i) part.push_back(static_cast<int>(p));
  }
  const int n = static_cast<int>(part.size());
  FiniteGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (part[static_cast<std::size_t>(u)] != part[static_cast<std::size_t>(v)]) g.add_edge(u, v);
    }
  }
  return g;
}

FiniteGraph complete_multipartite(int parts, int size) {
  std::vector<int> sizes(static_cast<std::size_t>(parts), size);
  return complete_multipartite(sizes);
}

FiniteGraph disjoint_union(const FiniteGraph& a, const FiniteGraph& b) {
  FiniteGraph g(a.order() + b.order());
  for (auto [u, v] : a.edges()) g.add_edge(u, v);
  for (auto [u, v] : b.edges()) g.add_edge(a.order() + u, a.order() + v);
  return g;
}

FiniteGraph copies(int m, const FiniteGraph& g) {
  FiniteGraph out(0);
  for (int i = 0; i < m; ++i) out = disjoint_union(out, g);
  return out;
}

FiniteGraph line_graph(const FiniteGraph& g) {
  const auto e = g.edges();
  const int n = static_cast<int>(e.size());
  FiniteGraph h(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto [a, b] = e[static_cast<std::size_t>(i)];
      const auto [c, d] = e[static_cast<std::size_t>(j)];
      if (a == c || a == d || b == c || b == d) h.add_edge(i, j);
    }
  }
  return h;
}

FiniteGraph petersen() {
  FiniteGraph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

}  // namespace graphs

}  // namespace homlab
