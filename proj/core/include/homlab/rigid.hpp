#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homlab/isomorphism.hpp"
#include "homlab/structure.hpp"

namespace homlab::rigid {

/// Rooted binary tree whose leaves carry the labels 0..leaf_count()-1.
/// Every internal node has exactly two children.
class RootedBinaryTree {
 public:
  struct Node {
    int left = -1;
    int right = -1;
    int parent = -1;
    int label = -1;  // leaves only
  };

  /// The one-leaf tree with label 0.
  RootedBinaryTree();

  /// Parses nested parentheses such as "((0,1),2)". Labels must be exactly
  /// 0..l-1. Throws ParseError.
  static RootedBinaryTree parse(std::string_view text);

  /// Builds a tree from explicit nodes; validates shape and leaf labels.
  static RootedBinaryTree from_nodes(std::vector<Node> nodes, int root);

  int leaf_count() const noexcept { return leaves_; }
  int node_count() const noexcept { return static_cast<int>(nodes_.size()); }
  int root() const noexcept { return root_; }
  const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  bool is_leaf(int i) const { return nodes_[static_cast<std::size_t>(i)].left < 0; }
  int leaf_node(int label) const;
  int depth(int node) const;
  /// Deepest common ancestor of two nodes.
  int meet(int a, int b) const;

  /// The tree with a new leaf (label leaf_count()) attached on the edge above
  /// `node`; above the root this creates a new root.
  RootedBinaryTree with_leaf_above(int node) const;

  /// Parenthesised form with children in input order.
  std::string to_string() const;
  /// Parenthesised form with each pair of children ordered by least leaf, so
  /// two trees have the same canonical string iff they are isomorphic by an
  /// isomorphism fixing every leaf label.
  std::string canonical_string() const;

 private:
  std::string render(int node, bool canonical) const;
  int min_leaf(int node) const;

  std::vector<Node> nodes_;
  int root_ = 0;
  int leaves_ = 1;
};

/// Builds a tree from two subtrees; labels of `right` are shifted past `left`.
RootedBinaryTree join(const RootedBinaryTree& left, const RootedBinaryTree& right);

/// All leaf-labelled rooted binary trees with `leaves` leaves, (2l-3)!! of
/// them, in a fixed order. leaves <= 9.
std::vector<RootedBinaryTree> all_trees(int leaves);

/// Leaves 0..l-1 where leaf i splits off at depth i+1 ("caterpillar"); the
/// two deepest leaves are l-2 and l-1.
RootedBinaryTree caterpillar(int leaves);
/// Complete binary tree on 2^levels leaves labelled left to right.
RootedBinaryTree balanced_tree(int levels);

/// Signature {"C", 3}; tuple (x, y, z) means gamma(x, y; z).
Signature c_relation_signature();

/// gamma(x,y;z) iff x, y, z are distinct and meet(x,y) lies strictly below
/// meet(x,z) = meet(y,z).
RelationalStructure c_relation_of_tree(const RootedBinaryTree& t);

/// Reconstructs the tree: the root block containing the least leaf a is a
/// together with every b for which some gamma(a,b;c) holds; the rest is the
/// other block. Throws NotACRelation when the relation is not the C-relation
/// of any binary tree.
RootedBinaryTree tree_of_c_relation(const RelationalStructure& gamma);

/// True iff `gamma` is the C-relation of some binary tree on its domain.
bool is_c_relation(const RelationalStructure& gamma);

/// True iff the single binary relation is a tournament.
bool is_tournament(const RelationalStructure& t);

/// Reads a tournament from a 0/1 orientation matrix (n rows of n digits,
/// row u column v set for an arc u -> v) or an arc list (the vertex count,
/// then one "u v" pair per arc). Blank lines and '#' comments are skipped.
/// Throws ParseError, also when the arcs do not form a tournament.
RelationalStructure parse_tournament(std::string_view text);

/// Exact automorphism group orders (n <= 10).
BigInt tournament_aut_order(const RelationalStructure& t);
BigInt c_aut_order(const RelationalStructure& gamma);

/// Tournament on the given primes (each 3 mod 4) with an arc p -> q iff q is
/// a quadratic residue mod p.
RelationalStructure quadratic_residue_tournament(std::span<const std::uint64_t> primes);

/// Signature {"T", 2}, {"C", 3}.
Signature superposition_signature();

/// Overlays a tournament (relation T) and a C-relation (relation C) on one
/// domain. Throws DomainMismatch when sizes differ.
RelationalStructure superpose(const RelationalStructure& tournament, const RelationalStructure& gamma);

struct ColouredArc {
  int from = 0;
  int to = 0;
  bool red = false;  // the order agrees with the arc
};

struct CyclicTriple {
  std::vector<int> points;  // increasing
  int red = 0;
  int blue = 0;
};

struct RamseyFailureReport {
  std::vector<ColouredArc> colouring;
  std::vector<CyclicTriple> cyclic_triples;
  /// True iff every cyclic triple carries both colours.
  bool certified = true;
};

/// Colours every arc (embedding of the 2-point structure) red when the total
/// order agrees with it, and checks every 3-subset whose tournament is a
/// 3-cycle. `order` lists the domain from least to greatest.
RamseyFailureReport ramsey_failure_colouring(const RelationalStructure& superposition, std::span<const int> order);

struct PatternMatch {
  bool found = false;
  std::vector<int> positions;  // 0-based indices into q
};

/// Permutations are written in one-line notation with values 1..n. Finds the
/// lexicographically least set of positions of q order-isomorphic to p.
/// |p| <= |q| <= 12.
PatternMatch pattern_contains(std::span<const int> p, std::span<const int> q);

/// Signature {"<1", 2}, ..., {"<m", 2}.
Signature multiorder_signature(int m);

/// The 2-order of a permutation: <1 is the order of positions and <2 orders
/// positions by their values.
RelationalStructure two_order_of_permutation(std::span<const int> perm);

/// Inverse of two_order_of_permutation.
std::vector<int> permutation_of_two_order(const RelationalStructure& s);

/// A real number a + b*sqrt(d) with d >= 2 squarefree, or b = 0.
struct Surd {
  long long a = 0;
  long long b = 0;
  long long d = 0;
};

/// Parses "3", "sqrt2", "1+2sqrt3", "-sqrt5", "2-sqrt7". Throws ParseError.
Surd parse_surd(std::string_view text);

struct MultiOrder {
  int dimension = 0;
  std::vector<std::vector<int>> points;  // window points, lexicographic
  /// ranks[i][p] is the position of point p in order i.
  std::vector<std::vector<int>> ranks;

  /// The m-order as a structure on the window points.
  RelationalStructure to_structure() const;
};

/// Orders the integer points of [-R, R]^n by their dot product with each
/// direction. Requires m < n, R <= 20, and each direction's coordinates
/// linearly independent over the rationals. Throws DegenerateDirection on a
/// rational dependency or on a comparison that cannot be separated.
MultiOrder kronecker_multiorder(const std::vector<std::vector<Surd>>& directions, int radius);

/// Exact check that the coordinates of one direction are linearly
/// independent over the rationals.
bool rationally_independent(std::span<const Surd> direction);

}  // namespace homlab::rigid
