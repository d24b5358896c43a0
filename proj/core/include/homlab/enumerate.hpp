#pragma once

#include <vector>

#include "homlab/graph.hpp"
#include "homlab/structure.hpp"

namespace homlab {

/// Signature of tournaments: one binary relation `T`.
Signature tournament_signature();

/// One representative of every isomorphism class of graphs on n vertices,
/// sorted by canonical code. Requires n <= kCanonicalLimit.
std::vector<FiniteGraph> graphs_up_to_isomorphism(int n);

/// One representative of every isomorphism class of tournaments on n
/// vertices, sorted by canonical code. Requires n <= kCanonicalLimit.
std::vector<RelationalStructure> tournaments_up_to_isomorphism(int n);

}  // namespace homlab
