#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homlab/isomorphism.hpp"
#include "homlab/structure.hpp"

namespace homlab::fraisse {

enum class ClassKind {
  AllGraphs,
  KkFreeGraphs,
  Tournaments,
  BipartiteGraphs,
  Matchings,
  LinearOrders,
  MOrders,
  CRelations,
  Superposition,
  EvenEdgeGraphs,  // not hereditary; used to exercise the hereditary check
};

/// A class of finite structures given by a membership predicate, together
/// with an ambient family used to grow candidates one point at a time.
/// Cheap to copy; immutable.
class ClassSpec {
 public:
  static ClassSpec all_graphs();
  static ClassSpec k_free_graphs(int k);
  static ClassSpec tournaments();
  static ClassSpec bipartite_graphs();
  static ClassSpec matchings();
  static ClassSpec linear_orders();
  static ClassSpec m_orders(int m);
  static ClassSpec c_relations();
  /// Independent overlay; relation names of `second` that clash with names of
  /// `first` get a "'" suffix.
  static ClassSpec superposition(const ClassSpec& first, const ClassSpec& second);
  static ClassSpec even_edge_graphs();

  /// Keywords: graphs, k<K>free (e.g. k3free), tournaments, bipartite,
  /// matchings, orders, <m>orders (e.g. 2orders), crel, even-edges, and
  /// A*B for a superposition. Throws ParseError.
  static ClassSpec parse(std::string_view keyword);

  ClassKind kind() const;
  int parameter() const;
  const Signature& signature() const;
  std::string name() const;
  /// False only for kinds whose membership is not closed under substructures.
  bool hereditary() const;

  /// Membership; false when the signature differs.
  bool contains(const RelationalStructure& s) const;

  /// Every structure on s.size()+1 points of the ambient family (all graphs,
  /// all tournaments, all orders, ...) whose restriction to 0..s.size()-1 is
  /// s, in a fixed order. The first graph extension adds no edges. Members
  /// and non-members alike are returned.
  std::vector<RelationalStructure> one_point_extensions(const RelationalStructure& s) const;

  /// Members on exactly `size` points, one per isomorphism class, sorted by
  /// canonical code. size <= 7.
  std::vector<RelationalStructure> members(int size) const;

  struct Impl;
  struct Access;

 private:
  explicit ClassSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Maximal member sizes accepted by the checkers.
inline constexpr int kHereditaryLimit = 6;
inline constexpr int kAmalgamationLimit = 5;

struct HereditaryReport {
  bool holds = true;
  /// A member and a one-point deletion of it that is not a member.
  std::optional<RelationalStructure> member;
  std::optional<RelationalStructure> substructure;
  int deleted_point = -1;
};

/// Checks that every one-point deletion of every member on at most n points
/// is a member, which implies closure under all induced substructures up to
/// that size. n <= 6.
HereditaryReport check_hereditary(const ClassSpec& c, int n);

/// A over B1 and B2 by the embeddings f1: A -> B1 and f2: A -> B2.
struct AmalgamationInstance {
  RelationalStructure a;
  RelationalStructure b1;
  RelationalStructure b2;
  std::vector<int> f1;
  std::vector<int> f2;
};

/// A solution: host and embeddings with g1 f1 = g2 f2.
struct Amalgam {
  RelationalStructure host;
  std::vector<int> g1;
  std::vector<int> g2;
};

enum class Verdict { Holds, Fails, Inconclusive };

std::string to_string(Verdict v);

struct AmalgamationReport {
  Verdict verdict = Verdict::Holds;
  bool strong = false;
  int n = 0;
  std::size_t instances = 0;
  /// The first instance (in catalog order) without a solution.
  std::optional<AmalgamationInstance> witness;
  /// Largest host size searched for the witness.
  int host_bound = 0;
};

/// Searches a host in the class for one instance. Hosts are the image of
/// B1 and B2 (strong: meeting exactly in the image of A) plus up to
/// `extra_points` further points. Identification patterns are tried by
/// number of identified pairs, then lexicographically; hosts with no extra
/// relations are tried first.
std::optional<Amalgam> find_amalgam(const ClassSpec& c, const AmalgamationInstance& instance, bool strong,
                                    int extra_points = 0);

/// Checks amalgamation over all instances with |A| >= 1 and |B1|, |B2| <= n.
/// For hereditary classes a failed search within |B1|+|B2|-|A| points is a
/// proof of failure (points outside the images can be deleted); otherwise
/// hosts with up to |A| extra points are also tried and a failure is
/// reported as Inconclusive. n <= 5.
AmalgamationReport check_ap(const ClassSpec& c, int n, bool strong);

/// Joint embedding for all members on 1..n points, as amalgamation over the
/// empty structure. n <= 5.
AmalgamationReport check_jep(const ClassSpec& c, int n);

/// Free amalgam of two graph-signature structures over A: domain is B1
/// followed by the points of B2 outside f2(A); no relation is added between
/// B1 and the new points. Throws InvalidEmbedding when f1 or f2 is not an
/// embedding.
Amalgam free_amalgam(const AmalgamationInstance& instance);

struct AgeEntry {
  std::vector<std::uint8_t> code;
  RelationalStructure representative;
  std::size_t count = 0;  // subsets inducing this class
};

/// Isomorphism classes of induced substructures on 1..k points, ordered by
/// size then canonical code. k <= 5 and C(n, k) <= 10^7.
std::vector<AgeEntry> age(const RelationalStructure& s, int k);

struct LimitApproximation {
  RelationalStructure structure;
  /// The structure realizes every one-point extension over every subset of
  /// at most guaranteed_level - 1 points, so its age contains every member
  /// on at most guaranteed_level points. Capped at 4.
  int guaranteed_level = 1;
  /// Window points whose demands are all met.
  int window = 0;
};

/// Builds a finite approximation of the Fraisse limit one point per stage.
/// A demand is a subset X of the first w points with |X| <= 4 together with a
/// one-point extension type over X; demands for a window are queued in a
/// seeded shuffle and the window grows when the queue is exhausted. Each
/// stage adds a point realizing the next unmet demand and sets its other
/// relations by seeded coin flips, skipping any choice that leaves the class.
/// The output for s stages is an induced substructure of the output for
/// s + 1 stages. Kinds: all graphs, K_k-free graphs, tournaments.
/// stages <= 200.
LimitApproximation limit_approximation(const ClassSpec& c, int stages, std::uint64_t seed);

/// Largest s <= 3 such that every one-point extension type (within the
/// class) over every subset of at most s points is realized. -1 if even the
/// empty set fails (the structure is empty).
int extension_closure_level(const ClassSpec& c, const RelationalStructure& s);

}  // namespace homlab::fraisse
