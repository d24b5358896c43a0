#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace homlab {

struct RelationSymbol {
  std::string name;
  int arity = 1;

  friend bool operator==(const RelationSymbol&, const RelationSymbol&) = default;
};

/// Finite relational signature. Arities are positive and names are unique.
class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<RelationSymbol> symbols);
  explicit Signature(std::vector<RelationSymbol> symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  const RelationSymbol& operator[](std::size_t i) const { return symbols_[i]; }
  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }

  std::optional<std::size_t> find(std::string_view name) const noexcept;
  /// Throws SignatureMismatch when the name is absent.
  std::size_t index_of(std::string_view name) const;

  int max_arity() const noexcept;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<RelationSymbol> symbols_;
};

/// The signature used for undirected graphs: one binary relation `E`.
Signature graph_signature();

using Tuple = std::vector<int>;

/// Finite structure over a relational signature on the domain 0..size()-1.
/// Each relation is stored as a dense bit table indexed by the tuple read as
/// a base-n numeral (first coordinate most significant), so tuple iteration is
/// lexicographic. No symmetry or irreflexivity is imposed.
class RelationalStructure {
 public:
  /// Dense tables are capped at this many cells per relation.
  static constexpr std::size_t kMaxCells = std::size_t{1} << 27;

  RelationalStructure() = default;
  RelationalStructure(Signature signature, int domain_size);

  const Signature& signature() const noexcept { return signature_; }
  int size() const noexcept { return n_; }

  bool holds(std::size_t relation, std::span<const int> tuple) const;
  bool holds(std::size_t relation, std::initializer_list<int> tuple) const {
    return holds(relation, std::span<const int>(tuple.begin(), tuple.size()));
  }
  void set(std::size_t relation, std::span<const int> tuple, bool value = true);
  void set(std::size_t relation, std::initializer_list<int> tuple, bool value = true) {
    set(relation, std::span<const int>(tuple.begin(), tuple.size()), value);
  }

  /// All tuples of one relation in lexicographic order.
  std::vector<Tuple> tuples(std::size_t relation) const;
  std::size_t tuple_count(std::size_t relation) const;

  /// Raw bit table of a relation (cell index = tuple as base-n numeral).
  std::span<const std::uint64_t> table(std::size_t relation) const { return tables_[relation]; }

  friend bool operator==(const RelationalStructure&, const RelationalStructure&) = default;

 private:
  std::size_t cell(std::size_t relation, std::span<const int> tuple) const;

  Signature signature_;
  int n_ = 0;
  std::vector<std::vector<std::uint64_t>> tables_;
};

/// Restriction to `verts`, re-indexed 0..|verts|-1 in the given order.
/// Throws InvalidVertex on out-of-range or repeated vertices.
RelationalStructure induced_substructure(const RelationalStructure& s, std::span<const int> verts);

/// Image of `s` under the permutation `perm` (tuple t becomes perm(t)).
RelationalStructure relabel(const RelationalStructure& s, std::span<const int> perm);

/// Keeps only the relations named in `sub`, in `sub`'s order.
RelationalStructure reduct(const RelationalStructure& s, const Signature& sub);

/// Copy of `s` carrying additional relations (initially empty).
RelationalStructure expand(const RelationalStructure& s, const Signature& extra);

/// True iff `map` (indexed by A's points) is an injective map into B that
/// preserves and reflects every relation. Signatures must match.
bool is_embedding(const RelationalStructure& a, const RelationalStructure& b, std::span<const int> map);

/// Throws SignatureMismatch unless both structures share a signature.
void require_same_signature(const RelationalStructure& s, const RelationalStructure& t);

}  // namespace homlab
