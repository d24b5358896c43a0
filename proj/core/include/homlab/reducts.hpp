#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homlab/graph.hpp"
#include "homlab/isomorphism.hpp"

namespace homlab::reducts {

/// Flips adjacency on every pair with exactly one end in `y`. Duplicates in
/// `y` are ignored; out-of-range vertices throw InvalidVertex.
FiniteGraph switch_graph(const FiniteGraph& g, std::span<const int> y);

/// The set Y (sorted, without vertex 0) with h = switch_graph(g, Y), if g and
/// h are switching-equivalent. Y is determined up to complement by the
/// neighbourhood differences at vertex 0.
std::optional<std::vector<int>> switching_witness(const FiniteGraph& g, const FiniteGraph& h);

/// Y with relabel(g, perm) = switch_graph(g, Y), if any; of Y and its
/// complement the one without vertex 0 is returned, which is also the one
/// with the smaller binary encoding. n <= 20.
std::optional<std::vector<int>> switching_automorphism_witness(const FiniteGraph& g, std::span<const int> perm);

enum class ReductKind { Order, Betweenness, Circular, Separation, PureSet };

inline constexpr std::array<ReductKind, 5> kAllReducts{ReductKind::Order, ReductKind::Betweenness, ReductKind::Circular,
                                                       ReductKind::Separation, ReductKind::PureSet};

std::string to_string(ReductKind k);
/// order, betweenness, circular, separation, pure-set. Throws ParseError.
ReductKind parse_reduct(std::string_view name);
/// 2, 3, 3, 4 and 0.
int arity(ReductKind k);

/// The relation on 0..n-1 defined from the natural order:
///   order        x < y
///   betweenness  x < y < z or z < y < x
///   circular     x < y < z or y < z < x or z < x < y
///   separation   x, y, z, w distinct, and y and w lie on different arcs
///                of the circle between x and z
///   pure-set     no relation
/// Requires n >= arity(kind).
RelationalStructure reduct_relation(int n, ReductKind kind);

/// |Aut| of reduct_relation(n, kind). n <= kGroupLimit.
BigInt reduct_group_order(int n, ReductKind kind);

struct ReductLatticeReport {
  int n = 0;
  std::array<BigInt, 5> orders{};
  /// contains[i][j]: Aut of reduct i is a subgroup of Aut of reduct j
  /// (every generator of the first preserves the relation of the second).
  std::array<std::array<bool, 5>, 5> contains{};
  /// contains[i][i+1] for i = 0..3, in the order of kAllReducts.
  bool chain = true;
};

ReductLatticeReport reduct_lattice(int n);

}  // namespace homlab::reducts
