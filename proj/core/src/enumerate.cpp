#include "homlab/enumerate.hpp"

#include <algorithm>
#include <map>

#include "homlab/errors.hpp"
#include "homlab/isomorphism.hpp"

namespace homlab {

Signature tournament_signature() { return Signature{{"T", 2}}; }

// Both enumerations extend every class representative on n-1 points by one
// new point in all possible ways and keep the first structure seen for each
// canonical code. Every class on n points arises this way because deleting
// the last point of any member leaves a member on n-1 points.

std::vector<FiniteGraph> graphs_up_to_isomorphism(int n) {
  if (n < 0) throw SizeLimit("negative vertex count", 0);
  if (n > kCanonicalLimit) throw SizeLimit("graph enumeration", kCanonicalLimit);
  std::vector<FiniteGraph> level{FiniteGraph(0)};
  for (int m = 1; m <= n; ++m) {
    std::map<std::vector<std::uint8_t>, FiniteGraph> seen;
    for (const auto& g : level) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (m - 1)); ++mask) {
        FiniteGraph h(m);
        for (const auto& [u, v] : g.edges()) h.add_edge(u, v);
        for (int u = 0; u < m - 1; ++u) {
          if ((mask >> u) & 1U) h.add_edge(u, m - 1);
        }
        auto code = canonical_code(h);
        seen.try_emplace(std::move(code), std::move(h));
      }
    }
    level.clear();
    level.reserve(seen.size());
    for (auto& [code, g] : seen) level.push_back(std::move(g));
  }
  return level;
}

std::vector<RelationalStructure> tournaments_up_to_isomorphism(int n) {
  if (n < 0) throw SizeLimit("negative vertex count", 0);
  if (n > kCanonicalLimit) throw SizeLimit("tournament enumeration", kCanonicalLimit);
  const Signature sig = tournament_signature();
  std::vector<RelationalStructure> level{RelationalStructure(sig, 0)};
  for (int m = 1; m <= n; ++m) {
    std::map<std::vector<std::uint8_t>, RelationalStructure> seen;
    for (const auto& t : level) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (m - 1)); ++mask) {
        RelationalStructure u(sig, m);
        for (const auto& arc : t.tuples(0)) u.set(0, arc);
        // Bit u set: arc from the new point to u; clear: arc from u.
        for (int v = 0; v < m - 1; ++v) {
          if ((mask >> v) & 1U) {
            u.set(0, {m - 1, v});
          } else {
            u.set(0, {v, m - 1});
          }
        }
        auto code = canonical_code(u);
        seen.try_emplace(std::move(code), std::move(u));
      }
    }
    level.clear();
    level.reserve(seen.size());
    for (auto& [code, t] : seen) level.push_back(std::move(t));
  }
  return level;
}

}  // namespace homlab
