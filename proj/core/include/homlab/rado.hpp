#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "homlab/graph.hpp"

namespace homlab::rado {

using Vertex = std::uint64_t;

/// A countable (or finite) graph given by a decidable adjacency predicate
/// and an increasing enumeration of its vertex universe. Implementations
/// are immutable and safe to share between threads.
class GraphOracle {
 public:
  virtual ~GraphOracle() = default;

  virtual std::string tag() const = 0;
  virtual bool contains(Vertex v) const = 0;
  /// Precondition: both vertices in the universe and distinct.
  virtual bool adjacent(Vertex x, Vertex y) const = 0;
  /// Least vertex of the universe that is >= v, if any.
  virtual std::optional<Vertex> next_vertex(Vertex v) const = 0;
};

/// Vertices are all natural numbers; x < y are adjacent iff bit x of y is 1.
class BitOracle final : public GraphOracle {
 public:
  std::string tag() const override { return "bit"; }
  bool contains(Vertex) const override { return true; }
  bool adjacent(Vertex x, Vertex y) const override;
  std::optional<Vertex> next_vertex(Vertex v) const override { return v; }
};

/// Vertices are the primes congruent to 1 mod 4; p ~ q iff q is a
/// quadratic residue mod p. Primality below the sieve limit comes from a
/// sieve, above it from deterministic Miller-Rabin.
class PrimeOracle final : public GraphOracle {
 public:
  explicit PrimeOracle(Vertex sieve_limit = 10'000'000);

  std::string tag() const override { return "prime"; }
  bool contains(Vertex v) const override;
  bool adjacent(Vertex p, Vertex q) const override;
  std::optional<Vertex> next_vertex(Vertex v) const override;

 private:
  Vertex limit_;
  std::vector<bool> composite_;
};

/// A finite graph on 0..n-1 seen as an oracle; larger numbers are outside
/// the universe.
class FiniteGraphOracle final : public GraphOracle {
 public:
  explicit FiniteGraphOracle(FiniteGraph g, std::string tag = "finite");

  std::string tag() const override { return tag_; }
  bool contains(Vertex v) const override { return v < static_cast<Vertex>(g_.order()); }
  bool adjacent(Vertex x, Vertex y) const override;
  std::optional<Vertex> next_vertex(Vertex v) const override;

 private:
  FiniteGraph g_;
  std::string tag_;
};

/// Vertices are all natural numbers; x ~ y iff |x - y| lies in the given
/// set of positive differences.
class CirculantOracle final : public GraphOracle {
 public:
  explicit CirculantOracle(std::vector<Vertex> differences);

  std::string tag() const override { return "circulant"; }
  bool contains(Vertex) const override { return true; }
  bool adjacent(Vertex x, Vertex y) const override;
  std::optional<Vertex> next_vertex(Vertex v) const override { return v; }

 private:
  std::vector<Vertex> differences_;  // sorted
};

/// Bit-digit adjacency. Throws SelfLoop when x == y.
bool rado_adjacent(Vertex x, Vertex y);

/// Quadratic-residue adjacency on primes congruent to 1 mod 4. Throws
/// InvalidVertex for other inputs and SelfLoop when p == q.
bool prime_graph_adjacent(Vertex p, Vertex q);

/// Least z <= bound in the universe, outside U and V, adjacent to every
/// vertex of U and to none of V. Absence only means none within the bound.
/// Throws InvalidVertex when U and V intersect or leave the universe.
std::optional<Vertex> extension_witness(const GraphOracle& o, std::span<const Vertex> u, std::span<const Vertex> v,
                                        Vertex bound);

/// A finite partial map between two oracle graphs.
struct OracleMap {
  std::vector<std::pair<Vertex, Vertex>> pairs;  // in the order they were added

  /// Injective, and adjacency is preserved and reflected on the domain.
  bool is_valid(const GraphOracle& a, const GraphOracle& b) const;
};

struct BackAndForthResult {
  OracleMap map;
  int rounds_completed = 0;
  bool complete = false;  // all requested rounds succeeded
  /// On failure: the vertex that could not be matched and on which side.
  std::optional<Vertex> stuck_vertex;
  bool stuck_forward = true;
};

/// Round r (from 0) takes the least unmapped vertex of A when r is even and
/// of B when r is odd, and matches it with the least vertex <= bound on the
/// other side that extends the map. Never throws on a missing witness.
BackAndForthResult try_back_and_forth(const GraphOracle& a, const GraphOracle& b, int steps, Vertex bound);

/// As try_back_and_forth, but throws WitnessNotFound when a round fails.
OracleMap back_and_forth(const GraphOracle& a, const GraphOracle& b, int steps, Vertex bound);

struct CommonNeighbourEntry {
  std::vector<Vertex> set;
  std::optional<Vertex> witness;
};

struct CommonNeighbourReport {
  std::vector<CommonNeighbourEntry> entries;  // every subset, by size then lexicographically
  std::size_t found = 0;
  bool all_found = true;
};

/// For every subset of size 1..s of the first m universe vertices, the least
/// common neighbour <= bound. s <= 5, m <= 16.
CommonNeighbourReport common_neighbour_check(const GraphOracle& o, int s, int m, Vertex bound);

}  // namespace homlab::rado
