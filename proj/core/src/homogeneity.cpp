#include "homlab/homogeneity.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "homlab/enumerate.hpp"
#include "homlab/errors.hpp"

namespace homlab::homog {

namespace {

constexpr int kMaxRegularityT = 5;
constexpr int kMaxHomogeneityT = 4;

std::uint64_t row_bits(const FiniteGraph& g, int v) {
  const auto r = g.row(v);
  return r.empty() ? 0 : r[0];
}

// Calls f(tuple) for every injective t-tuple over 0..n-1 in lexicographic
// order; stops early when f returns false.
template <typename F>
void for_each_injective(int n, int t, F&& f) {
  if (t > n) return;
  std::vector<int> tuple(static_cast<std::size_t>(t), 0);
  std::uint64_t used = 0;
  int pos = 0;
  tuple[0] = -1;
  while (pos >= 0) {
    auto& slot = tuple[static_cast<std::size_t>(pos)];
    if (slot >= 0) used &= ~(std::uint64_t{1} << slot);
    ++slot;
    while (slot < n && ((used >> slot) & 1U)) ++slot;
    if (slot >= n) {
      --pos;
      continue;
    }
    used |= std::uint64_t{1} << slot;
    if (pos + 1 == t) {
      if (!f(std::span<const int>(tuple))) return;
    } else {
      ++pos;
      tuple[static_cast<std::size_t>(pos)] = -1;
    }
  }
}

// Calls f(subset) for every t-subset in lexicographic order.
template <typename F>
void for_each_subset(int n, int t, F&& f) {
  if (t > n) return;
  std::vector<int> s(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) s[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (!f(std::span<const int>(s))) return;
    int i = t - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - t + i) --i;
    if (i < 0) return;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < t; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j) - 1] + 1;
  }
}

// Isomorphism class id of every labelled graph on t vertices: the least
// labelled pattern in its class.
const std::vector<unsigned>& unlabelled_class_table(int t) {
  static const auto tables = [] {
    std::array<std::vector<unsigned>, kMaxRegularityT + 1> out;
    for (int size = 0; size <= kMaxRegularityT; ++size) {
      const int pairs = size * (size - 1) / 2;
      std::vector<std::pair<int, int>> pair_list;
      for (int i = 0; i < size; ++i) {
        for (int j = i + 1; j < size; ++j) pair_list.emplace_back(i, j);
      }
      auto pair_index = [&](int i, int j) {
        if (i > j) std::swap(i, j);
        return static_cast<int>(std::find(pair_list.begin(), pair_list.end(), std::make_pair(i, j)) - pair_list.begin());
      };
      std::vector<int> perm(static_cast<std::size_t>(size));
      for (int i = 0; i < size; ++i) perm[static_cast<std::size_t>(i)] = i;
      std::vector<std::vector<int>> pair_maps;
      do {
        std::vector<int> m;
        for (auto [i, j] : pair_list) m.push_back(pair_index(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]));
        pair_maps.push_back(std::move(m));
      } while (std::next_permutation(perm.begin(), perm.end()));
      auto& table = out[static_cast<std::size_t>(size)];
      table.assign(std::size_t{1} << pairs, 0);
      for (unsigned pattern = 0; pattern < table.size(); ++pattern) {
        unsigned best = pattern;
        for (const auto& m : pair_maps) {
          unsigned image = 0;
          for (int p = 0; p < pairs; ++p) {
            if ((pattern >> p) & 1U) image |= 1U << m[static_cast<std::size_t>(p)];
          }
          best = std::min(best, image);
        }
        table[pattern] = best;
      }
    }
    return out;
  }();
  return tables[static_cast<std::size_t>(t)];
}

PartialIsomorphism make_partial(std::span<const int> x, std::span<const int> y) {
  PartialIsomorphism p;
  for (std::size_t i = 0; i < x.size(); ++i) p.pairs.emplace_back(x[i], y[i]);
  return p;
}

}  // namespace

unsigned labelled_type(const FiniteGraph& g, std::span<const int> tuple) {
  unsigned bits = 0;
  int p = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    for (std::size_t j = i + 1; j < tuple.size(); ++j, ++p) {
      if (g.adjacent(tuple[i], tuple[j])) bits |= 1U << p;
    }
  }
  return bits;
}

namespace {

// Regularity on injective t-tuples only; fills in holds and witness.
void injective_regularity(const FiniteGraph& g, int t, RegularityReport& report) {
  const int n = g.order();
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) rows[static_cast<std::size_t>(v)] = row_bits(g, v);
  auto common = [&](std::span<const int> tuple) {
    std::uint64_t m = ~std::uint64_t{0};
    for (int v : tuple) m &= rows[static_cast<std::size_t>(v)];
    return std::popcount(m);
  };

  // The count is symmetric in the tuple, so it is enough to compare subsets
  // whose induced graphs are isomorphic.
  const auto& classes = unlabelled_class_table(t);
  std::map<unsigned, int> count_of_class;
  bool regular = true;
  for_each_subset(n, t, [&](std::span<const int> s) {
    const unsigned cls = classes[labelled_type(g, s)];
    const int c = common(s);
    auto [it, inserted] = count_of_class.emplace(cls, c);
    if (!inserted && it->second != c) regular = false;
    return regular;
  });
  if (regular) return;

  // Least violating pair over ordered tuples.
  report.holds = false;
  std::vector<std::uint64_t> counts_seen(std::size_t{1} << (t * (t - 1) / 2), 0);
  for_each_injective(n, t, [&](std::span<const int> x) {
    counts_seen[labelled_type(g, x)] |= std::uint64_t{1} << common(x);
    return true;
  });
  Tuple first;
  unsigned first_type = 0;
  int first_count = 0;
  for_each_injective(n, t, [&](std::span<const int> x) {
    const unsigned type = labelled_type(g, x);
    if (std::popcount(counts_seen[type]) > 1) {
      first.assign(x.begin(), x.end());
      first_type = type;
      first_count = common(x);
      return false;
    }
    return true;
  });
  for_each_injective(n, t, [&](std::span<const int> y) {
    if (labelled_type(g, y) == first_type && common(y) != first_count) {
      report.witness.emplace(first, Tuple(y.begin(), y.end()));
      report.counts = {first_count, common(y)};
      return false;
    }
    return true;
  });
}

}  // namespace

RegularityReport is_t_tuple_regular(const FiniteGraph& g, int t) {
  if (t < 1 || t > kMaxRegularityT) throw SizeLimit("tuple regularity level t", kMaxRegularityT);
  if (g.order() > kGroupLimit) throw SizeLimit("tuple regularity", kGroupLimit);
  RegularityReport report;
  report.t = t;
  // A t-tuple with repeated entries behaves like a shorter injective tuple,
  // so every length up to t is checked.
  for (int s = 1; s <= t && report.holds; ++s) injective_regularity(g, s, report);
  return report;
}

HomogeneityReport is_t_homogeneous(const FiniteGraph& g, int t) {
  if (t < 1 || t > kMaxHomogeneityT) throw SizeLimit("homogeneity level t", kMaxHomogeneityT);
  if (g.order() > kGroupLimit) throw SizeLimit("t-homogeneity", kGroupLimit);
  HomogeneityReport report;
  const int n = g.order();
  const PermGroupDescription group = automorphisms(g);
  for (int k = 1; k <= std::min(t, n); ++k) {
    const TupleOrbits orbits = orbits_on_ktuples(group, k);
    // Tuples of one labelled type must form a single orbit.
    std::vector<int> orbit_of_type(std::size_t{1} << (k * (k - 1) / 2), -1);
    std::vector<char> split(orbit_of_type.size(), 0);
    for_each_injective(n, k, [&](std::span<const int> x) {
      const unsigned type = labelled_type(g, x);
      const int o = orbits.orbit_of(x);
      if (orbit_of_type[type] < 0) {
        orbit_of_type[type] = o;
      } else if (orbit_of_type[type] != o) {
        split[type] = 1;
      }
      return true;
    });
    if (std::find(split.begin(), split.end(), 1) == split.end()) continue;

    report.holds = false;
    report.failing_size = k;
    Tuple first;
    unsigned first_type = 0;
    int first_orbit = 0;
    for_each_injective(n, k, [&](std::span<const int> x) {
      const unsigned type = labelled_type(g, x);
      if (!split[type]) return true;
      first.assign(x.begin(), x.end());
      first_type = type;
      first_orbit = orbits.orbit_of(x);
      return false;
    });
    for_each_injective(n, k, [&](std::span<const int> y) {
      if (labelled_type(g, y) == first_type && orbits.orbit_of(y) != first_orbit) {
        report.witness = make_partial(first, y);
        return false;
      }
      return true;
    });
    return report;
  }
  return report;
}

HomogeneityReport is_homogeneous(const FiniteGraph& g) {
  if (g.order() > kGroupLimit) throw SizeLimit("homogeneity", kGroupLimit);
  const int n = g.order();
  HomogeneityReport report;

  // G is homogeneous iff for every finite set X, two vertices outside X with
  // the same neighbours in X lie in one orbit of the pointwise stabiliser of
  // X. Sets are explored breadth-first up to the action of Aut(G): a child of
  // X adds the least member of one stabiliser orbit. Once the stabiliser is
  // trivial and the condition holds, it holds for every superset as well.
  std::deque<Tuple> queue{Tuple{}};
  std::unordered_set<std::uint64_t> visited{0};
  while (!queue.empty()) {
    const Tuple x = std::move(queue.front());
    queue.pop_front();
    std::uint64_t in_x = 0;
    for (int v : x) in_x |= std::uint64_t{1} << v;
    const std::vector<int> orbit = stabiliser_orbits(g, x);

    std::optional<std::pair<int, int>> failure;
    for (int v = 0; v < n && !failure; ++v) {
      if ((in_x >> v) & 1U) continue;
      const std::uint64_t key = row_bits(g, v) & in_x;
      for (int w = v + 1; w < n; ++w) {
        if ((in_x >> w) & 1U) continue;
        if ((row_bits(g, w) & in_x) == key && orbit[static_cast<std::size_t>(v)] != orbit[static_cast<std::size_t>(w)]) {
          failure.emplace(v, w);
          break;
        }
      }
    }
    if (failure) {
      report.holds = false;
      report.failing_size = static_cast<int>(x.size()) + 1;
      if (report.failing_size <= kMaxHomogeneityT) {
        report.witness = is_t_homogeneous(g, report.failing_size).witness;
      } else {
        Tuple from = x;
        Tuple to = x;
        from.push_back(failure->first);
        to.push_back(failure->second);
        report.witness = make_partial(from, to);
      }
      return report;
    }

    std::vector<int> reps;
    std::vector<char> seen_orbit(static_cast<std::size_t>(n), 0);
    bool all_singleton = true;
    std::vector<int> orbit_size(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
      if (!((in_x >> v) & 1U)) ++orbit_size[static_cast<std::size_t>(orbit[static_cast<std::size_t>(v)])];
    }
    for (int v = 0; v < n; ++v) {
      if ((in_x >> v) & 1U) continue;
      const auto o = static_cast<std::size_t>(orbit[static_cast<std::size_t>(v)]);
      if (orbit_size[o] > 1) all_singleton = false;
      if (!seen_orbit[o]) {
        seen_orbit[o] = 1;
        reps.push_back(v);
      }
    }
    if (all_singleton) continue;
    for (int r : reps) {
      const std::uint64_t child = in_x | (std::uint64_t{1} << r);
      if (!visited.insert(child).second) continue;
      Tuple next = x;
      next.push_back(r);
      queue.push_back(std::move(next));
    }
  }
  return report;
}

std::string to_string(GardinerFamily f) {
  switch (f) {
    case GardinerFamily::DisjointCliques:
      return "disjoint-cliques";
    case GardinerFamily::CompleteMultipartite:
      return "complete-multipartite";
    case GardinerFamily::FiveCycle:
      return "five-cycle";
    case GardinerFamily::LineGraphK33:
      return "line-graph-k33";
    case GardinerFamily::NotHomogeneous:
      return "not-homogeneous";
  }
  return "unknown";
}

namespace {

// If g is m copies of K_k, returns (m, k).
std::optional<std::pair<int, int>> as_disjoint_cliques(const FiniteGraph& g) {
  const int n = g.order();
  if (n == 0) return std::make_pair(0, 0);
  std::vector<int> component(static_cast<std::size_t>(n), -1);
  int size = -1;
  int count = 0;
  for (int v = 0; v < n; ++v) {
    if (component[static_cast<std::size_t>(v)] >= 0) continue;
    // In a union of cliques the component of v is v plus its neighbours.
    std::vector<int> members{v};
    for (int u = 0; u < n; ++u) {
      if (g.adjacent(v, u)) members.push_back(u);
    }
    for (int a : members) {
      if (component[static_cast<std::size_t>(a)] >= 0) return std::nullopt;
      component[static_cast<std::size_t>(a)] = count;
      if (g.degree(a) != static_cast<int>(members.size()) - 1) return std::nullopt;
      for (int b : members) {
        if (a != b && !g.adjacent(a, b)) return std::nullopt;
      }
    }
    if (size >= 0 && size != static_cast<int>(members.size())) return std::nullopt;
    size = static_cast<int>(members.size());
    ++count;
  }
  return std::make_pair(count, size);
}

}  // namespace

GardinerResult gardiner_classify(const FiniteGraph& g) {
  constexpr int kLimit = 27;
  if (g.order() > kLimit) throw SizeLimit("Gardiner classification", kLimit);
  GardinerResult result;
  if (auto mk = as_disjoint_cliques(g)) {
    result.family = GardinerFamily::DisjointCliques;
    std::tie(result.m, result.k) = *mk;
    return result;
  }
  if (auto mk = as_disjoint_cliques(complement(g))) {
    result.family = GardinerFamily::CompleteMultipartite;
    std::tie(result.m, result.k) = *mk;
    return result;
  }
  if (g.order() == 5 && are_isomorphic(g, graphs::cycle(5))) {
    result.family = GardinerFamily::FiveCycle;
    return result;
  }
  if (g.order() == 9 && are_isomorphic(g, graphs::line_graph(graphs::complete_bipartite(3, 3)))) {
    result.family = GardinerFamily::LineGraphK33;
    return result;
  }
  const HomogeneityReport h = is_homogeneous(g);
  if (h.holds) throw std::logic_error("homogeneous graph outside the four families");
  result.witness = h.witness;
  return result;
}

FourVertexCensus four_vertex_census(const FiniteGraph& g) {
  if (g.order() > kGroupLimit) throw SizeLimit("four-vertex census", kGroupLimit);
  std::array<char, 64> present{};
  for_each_injective(g.order(), 4, [&](std::span<const int> x) {
    present[labelled_type(g, x)] = 1;
    return true;
  });
  FourVertexCensus census;
  for (int p = 0; p < 64; ++p) (present[static_cast<std::size_t>(p)] ? census.realized : census.missing).push_back(p);
  return census;
}

CospectralReport cospectral_regularity(int max_n) {
  if (max_n > 8) throw SizeLimit("cospectral census", 8);
  CospectralReport report;
  report.max_n = max_n;
  for (int n = 1; n <= max_n; ++n) {
    std::map<SpectralSignature, CospectralGroup> by_signature;
    for (const FiniteGraph& g : graphs_up_to_isomorphism(n)) {
      ++report.graphs;
      SpectralSignature sig = spectral_signature(g);
      CospectralGroup& group = by_signature[sig];
      group.signature = std::move(sig);
      group.graphs.push_back(g);
      group.regular1.push_back(is_t_tuple_regular(g, 1).holds);
      group.regular2.push_back(n >= 2 ? is_t_tuple_regular(g, 2).holds : true);
    }
    report.groups += by_signature.size();
    for (auto& [sig, group] : by_signature) {
      if (group.graphs.size() < 2) continue;
      for (std::size_t i = 1; i < group.graphs.size(); ++i) {
        if (group.regular1[i] != group.regular1[0] || group.regular2[i] != group.regular2[0]) group.consistent = false;
      }
      if (!group.consistent) ++report.violations;
      report.shared.push_back(std::move(group));
    }
  }
  return report;
}

RegularityCensus regularity_census(int max_n) {
  if (max_n > 9) throw SizeLimit("regularity census", 9);
  RegularityCensus census;
  for (int n = 1; n <= max_n; ++n) {
    RegularityCensusRow row;
    row.n = n;
    for (const FiniteGraph& g : graphs_up_to_isomorphism(n)) {
      ++row.graphs;
      bool regular = true;
      for (int t = 1; t <= 5 && regular; ++t) regular = is_t_tuple_regular(g, t).holds;
      const bool homogeneous = is_homogeneous(g).holds;
      row.five_regular += regular;
      row.homogeneous += homogeneous;
      if (regular != homogeneous) {
        ++row.mismatches;
        if (census.mismatches.size() < 20) census.mismatches.push_back(g);
      }
    }
    census.rows.push_back(row);
  }
  return census;
}

}  // namespace homlab::homog
