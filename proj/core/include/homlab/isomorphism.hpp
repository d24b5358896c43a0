#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "homlab/graph.hpp"
#include "homlab/structure.hpp"

namespace homlab {

using BigInt = boost::multiprecision::cpp_int;

/// A permutation of 0..n-1 in image form: p[i] is the image of i.
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
Permutation compose(const Permutation& outer, const Permutation& inner);  // outer after inner
Permutation inverse(const Permutation& p);
bool is_automorphism(const RelationalStructure& s, const Permutation& p);

/// Injective finite map between two structure domains.
struct PartialIsomorphism {
  std::vector<std::pair<int, int>> pairs;

  /// True iff the map is injective and preserves and reflects every relation
  /// on its domain.
  bool is_valid(const RelationalStructure& source, const RelationalStructure& target) const;
  friend bool operator==(const PartialIsomorphism&, const PartialIsomorphism&) = default;
};

struct PermGroupDescription {
  int degree = 0;
  std::vector<Permutation> generators;
  BigInt order = 1;
};

/// Structures handled by the search engine have at most this many points.
inline constexpr int kEngineLimit = 64;
/// Exact group computations are guaranteed on at most this many points.
inline constexpr int kGroupLimit = 30;
/// Canonical codes are computed on at most this many points.
inline constexpr int kCanonicalLimit = 12;

/// A relation-preserving bijection S -> T, or nothing. Deterministic.
/// Throws SignatureMismatch when the signatures differ.
std::optional<Permutation> are_isomorphic(const RelationalStructure& s, const RelationalStructure& t);
std::optional<Permutation> are_isomorphic(const FiniteGraph& g, const FiniteGraph& h);

/// Isomorphism S -> T mapping fixed_s[i] to fixed_t[i] for every i.
std::optional<Permutation> find_isomorphism(const RelationalStructure& s, const RelationalStructure& t,
                                            std::span<const int> fixed_s, std::span<const int> fixed_t);

/// Least (lexicographic in images) embedding of A into B as an induced
/// substructure, or nothing.
std::optional<std::vector<int>> find_embedding(const RelationalStructure& a, const RelationalStructure& b);

/// Generators and exact order of Aut(S), by an orbit-stabiliser chain along
/// the base 0,1,...,n-1. Requires size() <= kGroupLimit.
PermGroupDescription automorphisms(const RelationalStructure& s);
PermGroupDescription automorphisms(const FiniteGraph& g);

/// Orbit id of every point under the pointwise stabiliser of `fixed` in Aut(S)
/// (ids numbered by least member). Requires size() <= kGroupLimit.
std::vector<int> stabiliser_orbits(const RelationalStructure& s, std::span<const int> fixed);
std::vector<int> stabiliser_orbits(const FiniteGraph& g, std::span<const int> fixed);

/// Bytes that are equal for two structures iff they are isomorphic.
/// Requires size() <= kCanonicalLimit.
std::vector<std::uint8_t> canonical_code(const RelationalStructure& s);
/// Graph overload; agrees with canonical_code(to_structure(g)).
std::vector<std::uint8_t> canonical_code(const FiniteGraph& g);

/// Canonical code together with the relabelling that realises it:
/// relabel(s, labelling) has the canonical form.
std::pair<std::vector<std::uint8_t>, Permutation> canonical_form(const RelationalStructure& s);
std::pair<std::vector<std::uint8_t>, Permutation> canonical_form(const FiniteGraph& g);

/// Partition of the injective k-tuples into orbits of a permutation group.
class TupleOrbits {
 public:
  TupleOrbits(int n, int k);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  int count() const noexcept { return count_; }

  /// Tuples are indexed as base-n numerals; non-injective tuples have orbit -1.
  std::size_t index_of(std::span<const int> tuple) const;
  std::vector<int> tuple_at(std::size_t index) const;
  int orbit_of(std::span<const int> tuple) const { return label_[index_of(tuple)]; }
  int orbit_of_index(std::size_t index) const { return label_[index]; }
  std::size_t index_space() const noexcept { return label_.size(); }

  /// Lexicographically least tuple of each orbit, in orbit-id order.
  std::vector<std::vector<int>> representatives() const;

 private:
  friend TupleOrbits orbits_on_ktuples(const PermGroupDescription& group, int k);

  int n_;
  int k_;
  int count_ = 0;
  std::vector<int> label_;
};

/// Orbits of Aut(S) on injective k-tuples. Requires size() <= kGroupLimit, k <= 4.
TupleOrbits orbits_on_ktuples(const RelationalStructure& s, int k);
TupleOrbits orbits_on_ktuples(const FiniteGraph& g, int k);
TupleOrbits orbits_on_ktuples(const PermGroupDescription& group, int k);

}  // namespace homlab
