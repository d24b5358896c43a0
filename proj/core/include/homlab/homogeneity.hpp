#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homlab/graph.hpp"
#include "homlab/isomorphism.hpp"

namespace homlab::homog {

/// Outcome of a t-tuple regularity test.
struct RegularityReport {
  int t = 0;
  bool holds = true;
  /// Lexicographically least violating pair: two injective tuples inducing
  /// the same labelled subgraph whose common-neighbour counts differ.
  std::optional<std::pair<Tuple, Tuple>> witness;
  /// Common-neighbour counts of the witness tuples.
  std::pair<int, int> counts{0, 0};
};

/// Tests whether t-tuples inducing the same labelled graph always have the
/// same number of common neighbours. Entries may repeat, so this is the
/// injective condition for every length 1..t and the witness comes from the
/// shortest failing length. 1 <= t <= 5, n <= 30.
RegularityReport is_t_tuple_regular(const FiniteGraph& g, int t);

/// Outcome of a homogeneity test.
struct HomogeneityReport {
  bool holds = true;
  /// Size of the smallest non-extendable partial isomorphism (0 if none).
  int failing_size = 0;
  /// A partial isomorphism between induced subgraphs that no automorphism
  /// extends.
  std::optional<PartialIsomorphism> witness;
};

/// True iff every isomorphism between induced subgraphs on at most t vertices
/// extends to an automorphism. The witness is the lexicographically least
/// pair of same-type tuples in different orbits, at the smallest failing
/// size. 1 <= t <= 4, n <= 30.
HomogeneityReport is_t_homogeneous(const FiniteGraph& g, int t);

/// True iff every isomorphism between finite induced subgraphs extends.
/// Exact for n <= 30. The witness has the smallest possible size; when that
/// size is at most 4 it is also lexicographically least.
HomogeneityReport is_homogeneous(const FiniteGraph& g);

enum class GardinerFamily { DisjointCliques, CompleteMultipartite, FiveCycle, LineGraphK33, NotHomogeneous };

std::string to_string(GardinerFamily f);

struct GardinerResult {
  GardinerFamily family = GardinerFamily::NotHomogeneous;
  /// DisjointCliques: m copies of K_k. CompleteMultipartite: m parts of size k.
  int m = 0;
  int k = 0;
  std::optional<PartialIsomorphism> witness;
};

/// Matches g against the four families of finite homogeneous graphs, in the
/// order listed in GardinerFamily; otherwise returns a non-extendable partial
/// isomorphism. The null graph counts as 0 copies of K_0. n <= 27.
GardinerResult gardiner_classify(const FiniteGraph& g);

/// Characteristic polynomial det(xI - A): coefficients[i] multiplies x^(n-i).
struct SpectralSignature {
  std::vector<BigInt> coefficients;

  friend bool operator==(const SpectralSignature&, const SpectralSignature&) = default;
  friend auto operator<=>(const SpectralSignature& a, const SpectralSignature& b) {
    return a.coefficients <=> b.coefficients;
  }
};

/// Exact characteristic polynomial by Berkowitz's division-free algorithm.
/// n <= 30.
SpectralSignature spectral_signature(const FiniteGraph& g);

/// Polynomial in the usual notation, e.g. "x^3 - 3x - 2".
std::string to_string(const SpectralSignature& s);

/// The graph of the 27 lines on a cubic surface, two lines adjacent iff they
/// meet. Vertices 0-5 are a1..a6, 6-11 are b1..b6 and 12-26 are c_ij (i<j) in
/// lexicographic order. It is strongly regular with parameters (27,10,1,5).
FiniteGraph schlafli_graph();

/// "a3", "b1", "c25", ... for a vertex of schlafli_graph().
std::string schlafli_label(int v);

/// Labelled graphs on 4 vertices (as 6-bit edge masks, pairs ordered
/// 01,02,03,12,13,23) split into those occurring as induced subgraphs on
/// injective 4-tuples and those that do not.
struct FourVertexCensus {
  std::vector<int> realized;
  std::vector<int> missing;
};

FourVertexCensus four_vertex_census(const FiniteGraph& g);

/// Bit pattern of the labelled subgraph induced on an injective tuple: bit
/// number p is set when the p-th pair (i<j, lexicographic) is an edge.
unsigned labelled_type(const FiniteGraph& g, std::span<const int> tuple);

/// Graphs with the same characteristic polynomial, with their 1- and
/// 2-tuple regularity.
struct CospectralGroup {
  SpectralSignature signature;
  std::vector<FiniteGraph> graphs;
  std::vector<bool> regular1;
  std::vector<bool> regular2;
  /// Regularity is the same for every member.
  bool consistent = true;
};

struct CospectralReport {
  int max_n = 0;
  std::size_t graphs = 0;
  std::size_t groups = 0;
  /// Groups with at least two members, by order then signature.
  std::vector<CospectralGroup> shared;
  std::size_t violations = 0;
};

/// Groups all graphs on at most max_n vertices (up to isomorphism) by
/// characteristic polynomial. max_n <= 8.
CospectralReport cospectral_regularity(int max_n);

struct RegularityCensusRow {
  int n = 0;
  std::size_t graphs = 0;
  std::size_t five_regular = 0;  // t-tuple regular for t = 1..5
  std::size_t homogeneous = 0;
  std::size_t mismatches = 0;
};

struct RegularityCensus {
  std::vector<RegularityCensusRow> rows;  // n = 1..max_n
  /// Graphs on which the two tests disagree (at most 20 kept).
  std::vector<FiniteGraph> mismatches;
};

/// Compares 5-tuple regularity with homogeneity over all graphs on 1..max_n
/// vertices. max_n <= 9.
RegularityCensus regularity_census(int max_n);

}  // namespace homlab::homog
