#include "homlab/structure.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "homlab/errors.hpp"

namespace homlab {

Signature::Signature(std::initializer_list<RelationSymbol> symbols)
    : Signature(std::vector<RelationSymbol>(symbols)) {}

Signature::Signature(std::vector<RelationSymbol> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string_view> seen;
  for (const auto& s : symbols_) {
    if (s.arity < 1) throw SignatureMismatch("relation '" + s.name + "' must have positive arity");
    if (!seen.insert(s.name).second) throw SignatureMismatch("duplicate relation name '" + s.name + "'");
  }
}

std::optional<std::size_t> Signature::find(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Signature::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw SignatureMismatch("no relation named '" + std::string(name) + "'");
}

int Signature::max_arity() const noexcept {
  int m = 0;
  for (const auto& s : symbols_) m = std::max(m, s.arity);
  return m;
}

Signature graph_signature() { return Signature{{"E", 2}}; }

namespace {

std::size_t cell_count(int n, int arity) {
  std::size_t cells = 1;
  for (int i = 0; i < arity; ++i) {
    if (n != 0 && cells > RelationalStructure::kMaxCells / static_cast<std::size_t>(n)) {
      throw SizeLimit("relation table too large", RelationalStructure::kMaxCells);
    }
    cells *= static_cast<std::size_t>(n);
  }
  return cells;
}

}  // namespace

RelationalStructure::RelationalStructure(Signature signature, int domain_size)
    : signature_(std::move(signature)), n_(domain_size) {
  if (domain_size < 0) throw InvalidVertex("negative domain size");
  tables_.reserve(signature_.size());
  for (const auto& sym : signature_) {
    const std::size_t cells = cell_count(n_, sym.arity);
    tables_.emplace_back((cells + 63) / 64, 0);
  }
}

std::size_t RelationalStructure::cell(std::size_t relation, std::span<const int> tuple) const {
  if (relation >= tables_.size()) throw SignatureMismatch("relation index out of range");
  if (static_cast<int>(tuple.size()) != signature_[relation].arity) {
    throw SignatureMismatch("tuple length does not match arity of '" + signature_[relation].name + "'");
  }
  std::size_t c = 0;
  for (int v : tuple) {
    if (v < 0 || v >= n_) throw InvalidVertex("vertex " + std::to_string(v) + " outside domain of size " + std::to_string(n_));
    c = c * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }
  return c;
}

bool RelationalStructure::holds(std::size_t relation, std::span<const int> tuple) const {
  const std::size_t c = cell(relation, tuple);
  return (tables_[relation][c >> 6] >> (c & 63)) & 1U;
}

void RelationalStructure::set(std::size_t relation, std::span<const int> tuple, bool value) {
  const std::size_t c = cell(relation, tuple);
  const std::uint64_t bit = std::uint64_t{1} << (c & 63);
  if (value) {
    tables_[relation][c >> 6] |= bit;
  } else {
    tables_[relation][c >> 6] &= ~bit;
  }
}

std::vector<Tuple> RelationalStructure::tuples(std::size_t relation) const {
  const int arity = signature_[relation].arity;
  std::vector<Tuple> out;
  const auto& words = tables_[relation];
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t bits = words[w];
    while (bits != 0) {
      const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      bits &= bits - 1;
      Tuple t(static_cast<std::size_t>(arity));
      std::size_t rest = c;
      for (int i = arity - 1; i >= 0; --i) {
        t[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(n_));
        rest /= static_cast<std::size_t>(n_);
      }
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::size_t RelationalStructure::tuple_count(std::size_t relation) const {
  std::size_t count = 0;
  for (auto w : tables_[relation]) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

RelationalStructure induced_substructure(const RelationalStructure& s, std::span<const int> verts) {
  std::vector<int> position(static_cast<std::size_t>(s.size()), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const int v = verts[i];
    if (v < 0 || v >= s.size()) throw InvalidVertex("vertex " + std::to_string(v) + " outside domain");
    if (position[static_cast<std::size_t>(v)] != -1) throw InvalidVertex("vertex " + std::to_string(v) + " repeated");
    position[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  RelationalStructure out(s.signature(), static_cast<int>(verts.size()));
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    for (auto t : s.tuples(r)) {
      bool inside = true;
      for (auto& x : t) {
        x = position[static_cast<std::size_t>(x)];
        if (x < 0) {
          inside = false;
          break;
        }
      }
      if (inside) out.set(r, t);
    }
  }
  return out;
}

RelationalStructure relabel(const RelationalStructure& s, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != s.size()) throw InvalidVertex("permutation length differs from domain size");
  std::vector<char> seen(perm.size(), 0);
  for (int v : perm) {
    if (v < 0 || v >= s.size() || seen[static_cast<std::size_t>(v)]) throw InvalidVertex("not a permutation");
    seen[static_cast<std::size_t>(v)] = 1;
  }
  RelationalStructure out(s.signature(), s.size());
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    for (auto t : s.tuples(r)) {
      for (auto& x : t) x = perm[static_cast<std::size_t>(x)];
      out.set(r, t);
    }
  }
  return out;
}

RelationalStructure reduct(const RelationalStructure& s, const Signature& sub) {
  RelationalStructure out(sub, s.size());
  for (std::size_t r = 0; r < sub.size(); ++r) {
    const std::size_t src = s.signature().index_of(sub[r].name);
    if (s.signature()[src].arity != sub[r].arity) throw SignatureMismatch("arity mismatch for '" + sub[r].name + "'");
    for (const auto& t : s.tuples(src)) out.set(r, t);
  }
  return out;
}

RelationalStructure expand(const RelationalStructure& s, const Signature& extra) {
  std::vector<RelationSymbol> all(s.signature().begin(), s.signature().end());
  all.insert(all.end(), extra.begin(), extra.end());
  RelationalStructure out(Signature(std::move(all)), s.size());
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    for (const auto& t : s.tuples(r)) out.set(r, t);
  }
  return out;
}

void require_same_signature(const RelationalStructure& s, const RelationalStructure& t) {
  if (s.signature() != t.signature()) throw SignatureMismatch("structures have different signatures");
}

bool is_embedding(const RelationalStructure& a, const RelationalStructure& b, std::span<const int> map) {
  require_same_signature(a, b);
  if (static_cast<int>(map.size()) != a.size()) return false;
  std::vector<char> used(static_cast<std::size_t>(b.size()), 0);
  for (int v : map) {
    if (v < 0 || v >= b.size() || used[static_cast<std::size_t>(v)]) return false;
    used[static_cast<std::size_t>(v)] = 1;
  }
  // Every tuple over A's points maps to a tuple over the image; compare the
  // induced image with A directly.
  std::vector<int> image(map.begin(), map.end());
  return induced_substructure(b, image) == a;
}

}  // namespace homlab
