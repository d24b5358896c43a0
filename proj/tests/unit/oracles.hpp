#pragma once

// Brute-force reference implementations. They share no code with the
// library beyond the basic containers, so agreement is meaningful.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "homlab/graph.hpp"
#include "homlab/structure.hpp"

namespace oracle {

using homlab::FiniteGraph;
using homlab::RelationalStructure;

inline std::vector<std::vector<bool>> matrix(const FiniteGraph& g) {
  const int n = g.order();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (const auto& [u, v] : g.edges()) m[u][v] = m[v][u] = true;
  return m;
}

inline FiniteGraph graph_from_mask(int n, std::uint64_t mask) {
  FiniteGraph g(n);
  int bit = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++bit) {
      if ((mask >> bit) & 1U) g.add_edge(u, v);
    }
  }
  return g;
}

inline FiniteGraph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  FiniteGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

/// Number of permutations preserving adjacency, by trying all n! of them.
inline std::uint64_t automorphism_count(const FiniteGraph& g) {
  const auto m = matrix(g);
  const int n = g.order();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u) {
      for (int v = u + 1; v < n && ok; ++v) ok = m[u][v] == m[p[u]][p[v]];
    }
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

/// Same for any relational structure, using holds() on every tuple.
inline std::uint64_t automorphism_count(const RelationalStructure& s) {
  const int n = s.size();
  std::vector<std::vector<homlab::Tuple>> tuples;
  for (std::size_t r = 0; r < s.signature().size(); ++r) tuples.push_back(s.tuples(r));
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (std::size_t r = 0; r < tuples.size() && ok; ++r) {
      for (const auto& t : tuples[r]) {
        homlab::Tuple image(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) image[i] = p[t[i]];
        if (!s.holds(r, image)) {
          ok = false;
          break;
        }
      }
    }
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

/// Smallest upper-triangle mask over all relabellings: an isomorphism
/// invariant that separates classes.
inline std::uint64_t brute_canonical(const FiniteGraph& g) {
  const auto m = matrix(g);
  const int n = g.order();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t mask = 0;
    int bit = 0;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v, ++bit) {
        if (m[p[u]][p[v]]) mask |= std::uint64_t{1} << bit;
      }
    }
    best = std::min(best, mask);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

/// Isomorphism classes of graphs on n vertices satisfying `keep`.
template <class Pred>
std::size_t class_count(int n, Pred keep) {
  std::set<std::uint64_t> seen;
  const int pairs = n * (n - 1) / 2;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
    const FiniteGraph g = graph_from_mask(n, mask);
    if (keep(g)) seen.insert(brute_canonical(g));
  }
  return seen.size();
}

inline int common_neighbours(const FiniteGraph& g, const std::vector<int>& tuple) {
  int count = 0;
  for (int z = 0; z < g.order(); ++z) {
    bool all = true;
    for (int x : tuple) all = all && x != z && g.adjacent(x, z);
    count += all;
  }
  return count;
}

/// t-tuple regularity straight from the definition, over all t-tuples
/// (repeats allowed), comparing tuples whose coordinate map is an
/// isomorphism of induced subgraphs.
inline bool tuple_regular(const FiniteGraph& g, int t) {
  const int n = g.order();
  std::vector<std::vector<int>> tuples;
  std::vector<int> cur(t, 0);
  std::uint64_t total = 1;
  for (int i = 0; i < t; ++i) total *= static_cast<std::uint64_t>(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = 0; i < t; ++i) {
      cur[i] = static_cast<int>(c % n);
      c /= n;
    }
    tuples.push_back(cur);
  }
  auto same_type = [&](const std::vector<int>& x, const std::vector<int>& y) {
    for (int i = 0; i < t; ++i) {
      for (int j = 0; j < t; ++j) {
        if ((x[i] == x[j]) != (y[i] == y[j])) return false;
        if (x[i] != x[j] && g.adjacent(x[i], x[j]) != g.adjacent(y[i], y[j])) return false;
      }
    }
    return true;
  };
  for (std::size_t a = 0; a < tuples.size(); ++a) {
    for (std::size_t b = a + 1; b < tuples.size(); ++b) {
      if (same_type(tuples[a], tuples[b]) && common_neighbours(g, tuples[a]) != common_neighbours(g, tuples[b])) {
        return false;
      }
    }
  }
  return true;
}

/// Homogeneity from the definition: every isomorphism between induced
/// subgraphs extends to one of the automorphisms found by trying all
/// permutations. Small n only.
inline bool homogeneous(const FiniteGraph& g) {
  const auto m = matrix(g);
  const int n = g.order();
  std::vector<std::vector<int>> autos;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u) {
      for (int v = u + 1; v < n && ok; ++v) ok = m[u][v] == m[p[u]][p[v]];
    }
    if (ok) autos.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  // Partial maps as injective sequences x -> y of equal length.
  for (int k = 1; k <= n; ++k) {
    // All injective k-sequences.
    std::vector<std::vector<int>> seqs;
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::set<std::vector<int>> unique;
    do {
      unique.insert(std::vector<int>(idx.begin(), idx.begin() + k));
    } while (std::next_permutation(idx.begin(), idx.end()));
    seqs.assign(unique.begin(), unique.end());
    for (const auto& a : seqs) {
      if (!std::is_sorted(a.begin(), a.end())) continue;  // domain listed in increasing order
      for (const auto& b : seqs) {
        bool iso = true;
        for (int i = 0; i < k && iso; ++i) {
          for (int j = i + 1; j < k && iso; ++j) iso = m[a[i]][a[j]] == m[b[i]][b[j]];
        }
        if (!iso) continue;
        const bool extends = std::any_of(autos.begin(), autos.end(), [&](const std::vector<int>& q) {
          for (int i = 0; i < k; ++i) {
            if (q[a[i]] != b[i]) return false;
          }
          return true;
        });
        if (!extends) return false;
      }
    }
  }
  return true;
}

/// Number of sum-free subsets of {1..n}, by testing all 2^n subsets.
inline std::uint64_t sum_free_subsets(int n) {
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (int x = 1; x <= n && ok; ++x) {
      if (!((mask >> (x - 1)) & 1U)) continue;
      for (int y = x; x + y <= n && ok; ++y) {
        if (((mask >> (y - 1)) & 1U) && ((mask >> (x + y - 1)) & 1U)) ok = false;
      }
    }
    count += ok;
  }
  return count;
}

}  // namespace oracle
