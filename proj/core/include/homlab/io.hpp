#pragma once

#include <string>
#include <string_view>

#include "homlab/graph.hpp"
#include "homlab/structure.hpp"

namespace homlab::io {

/// graph6 (as produced by nauty's geng/showg). An optional ">>graph6<<"
/// header is accepted. Errors carry the 1-based column of the bad byte.
FiniteGraph parse_graph6(std::string_view text);
std::string to_graph6(const FiniteGraph& g);

/// Edge list: a header line "n m" followed by m lines "u v". Blank lines and
/// lines starting with '#' are ignored.
FiniteGraph parse_edge_list(std::string_view text);
std::string to_edge_list(const FiniteGraph& g);

/// Detects graph6 versus edge list from the first significant line.
FiniteGraph parse_graph(std::string_view text);
FiniteGraph read_graph_file(const std::string& path);

/// Structure document:
///   {"signature":[{"name":"E","arity":2}], "n":3, "tables":{"E":[[0,1],[1,0]]}}
RelationalStructure parse_structure_json(std::string_view text);
/// Compact JSON with tuples in lexicographic order.
std::string to_structure_json(const RelationalStructure& s);
RelationalStructure read_structure_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace homlab::io
