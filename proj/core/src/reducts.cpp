#include "homlab/reducts.hpp"

#include <algorithm>

#include "homlab/errors.hpp"

namespace homlab::reducts {

FiniteGraph switch_graph(const FiniteGraph& g, std::span<const int> y) {
  const int n = g.order();
  std::vector<bool> in(static_cast<std::size_t>(n), false);
  for (int v : y) {
    if (v < 0 || v >= n) throw InvalidVertex("switching set vertex " + std::to_string(v) + " out of range");
    in[static_cast<std::size_t>(v)] = true;
  }
  FiniteGraph out = g;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (in[static_cast<std::size_t>(u)] != in[static_cast<std::size_t>(v)]) out.set_edge(u, v, !g.adjacent(u, v));
    }
  }
  return out;
}

std::optional<std::vector<int>> switching_witness(const FiniteGraph& g, const FiniteGraph& h) {
  if (g.order() != h.order()) throw DomainMismatch("switching needs graphs of equal order");
  const int n = g.order();
  // With 0 outside Y, v is in Y exactly when the edge {0, v} changed.
  std::vector<int> y;
  for (int v = 1; v < n; ++v) {
    if (g.adjacent(0, v) != h.adjacent(0, v)) y.push_back(v);
  }
  if (switch_graph(g, y) != h) return std::nullopt;
  return y;
}

std::optional<std::vector<int>> switching_automorphism_witness(const FiniteGraph& g, std::span<const int> perm) {
  if (g.order() > 20) throw SizeLimit("switching automorphism search", 20);
  if (perm.size() != static_cast<std::size_t>(g.order())) throw DomainMismatch("permutation length differs from order");
  return switching_witness(g, relabel(g, perm));
}

std::string to_string(ReductKind k) {
  switch (k) {
    case ReductKind::Order:
      return "order";
    case ReductKind::Betweenness:
      return "betweenness";
    case ReductKind::Circular:
      return "circular";
    case ReductKind::Separation:
      return "separation";
    case ReductKind::PureSet:
      return "pure-set";
  }
  return "?";
}

ReductKind parse_reduct(std::string_view name) {
  for (ReductKind k : kAllReducts) {
    if (to_string(k) == name) return k;
  }
  throw ParseError("unknown reduct '" + std::string(name) + "'", 1, 1);
}

int arity(ReductKind k) {
  switch (k) {
    case ReductKind::Order:
      return 2;
    case ReductKind::Betweenness:
    case ReductKind::Circular:
      return 3;
    case ReductKind::Separation:
      return 4;
    case ReductKind::PureSet:
      return 0;
  }
  return 0;
}

namespace {

bool circular(int x, int y, int z) { return (x < y && y < z) || (y < z && z < x) || (z < x && x < y); }

}  // namespace

RelationalStructure reduct_relation(int n, ReductKind kind) {
  if (n < arity(kind)) throw SizeLimit("reduct domain must reach the arity", static_cast<std::size_t>(arity(kind)));
  if (kind == ReductKind::PureSet) return RelationalStructure(Signature{}, n);
  const std::string name = kind == ReductKind::Order         ? "<"
                           : kind == ReductKind::Betweenness ? "B"
                           : kind == ReductKind::Circular    ? "C"
                                                             : "S";
  RelationalStructure s(Signature{{name, arity(kind)}}, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (kind == ReductKind::Order) {
        if (x < y) s.set(0, {x, y});
        continue;
      }
      for (int z = 0; z < n; ++z) {
        if (kind == ReductKind::Betweenness) {
          if ((x < y && y < z) || (z < y && y < x)) s.set(0, {x, y, z});
        } else if (kind == ReductKind::Circular) {
          if (circular(x, y, z)) s.set(0, {x, y, z});
        } else {
          for (int w = 0; w < n; ++w) {
            if (x == y || x == z || x == w || y == z || y == w || z == w) continue;
            // Going round from x, one of y, w comes before z and the other after.
            if (circular(x, y, z) != circular(x, w, z)) s.set(0, {x, y, z, w});
          }
        }
      }
    }
  }
  return s;
}

BigInt reduct_group_order(int n, ReductKind kind) { return automorphisms(reduct_relation(n, kind)).order; }

ReductLatticeReport reduct_lattice(int n) {
  ReductLatticeReport r;
  r.n = n;
  std::array<RelationalStructure, 5> rel;
  std::array<PermGroupDescription, 5> groups;
  for (std::size_t i = 0; i < 5; ++i) {
    rel[i] = reduct_relation(n, kAllReducts[i]);
    groups[i] = automorphisms(rel[i]);
    r.orders[i] = groups[i].order;
  }
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      r.contains[i][j] = std::all_of(groups[i].generators.begin(), groups[i].generators.end(),
                                     [&](const Permutation& p) { return is_automorphism(rel[j], p); });
    }
  }
  for (std::size_t i = 0; i + 1 < 5; ++i) r.chain = r.chain && r.contains[i][i + 1];
  return r;
}

}  // namespace homlab::reducts
