#include "homlab/isomorphism.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "engine.hpp"
#include "homlab/errors.hpp"

namespace homlab {

using detail::Colouring;
using detail::Compiled;
using detail::Refiner;

Permutation identity_permutation(int n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation p(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) p[i] = outer[static_cast<std::size_t>(inner[i])];
  return p;
}

Permutation inverse(const Permutation& p) {
  Permutation q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return q;
}

bool is_automorphism(const RelationalStructure& s, const Permutation& p) {
  if (static_cast<int>(p.size()) != s.size()) return false;
  return relabel(s, p) == s;
}

bool PartialIsomorphism::is_valid(const RelationalStructure& source, const RelationalStructure& target) const {
  require_same_signature(source, target);
  std::vector<int> dom;
  std::vector<int> img;
  for (auto [x, y] : pairs) {
    if (x < 0 || x >= source.size() || y < 0 || y >= target.size()) return false;
    dom.push_back(x);
    img.push_back(y);
  }
  auto sorted_unique = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!sorted_unique(dom) || !sorted_unique(img)) return false;
  return induced_substructure(source, dom) == induced_substructure(target, img);
}

namespace {

class union_find {
 public:
  explicit union_find(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;  // least element stays the root
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Depth-first search for an isomorphism a -> b extending the given joint
// colouring. Target cells are split on their least source vertex and images
// are tried in increasing order, so the result is deterministic.
class IsoSearch {
 public:
  IsoSearch(const Compiled& a, const Compiled& b, Refiner& refiner) : a_(a), b_(b), refiner_(refiner) {}

  std::optional<Permutation> run(const Colouring& ca, const Colouring& cb, int cells) {
    return dfs(ca, cb, cells);
  }

 private:
  std::optional<Permutation> dfs(const Colouring& ca, const Colouring& cb, int cells) {
    const int target = detail::first_nonsingleton(ca, cells);
    if (target < 0) {
      std::vector<int> by_colour(static_cast<std::size_t>(a_.n));
      for (int w = 0; w < b_.n; ++w) by_colour[static_cast<std::size_t>(cb[static_cast<std::size_t>(w)])] = w;
      Permutation p(static_cast<std::size_t>(a_.n));
      for (int v = 0; v < a_.n; ++v) p[static_cast<std::size_t>(v)] = by_colour[static_cast<std::size_t>(ca[static_cast<std::size_t>(v)])];
      if (detail::verify_isomorphism(a_, b_, p)) return p;
      return std::nullopt;
    }
    int v = 0;
    while (ca[static_cast<std::size_t>(v)] != target) ++v;
    for (int w = 0; w < b_.n; ++w) {
      if (cb[static_cast<std::size_t>(w)] != target) continue;
      int cells_a = cells;
      int cells_b = cells;
      Colouring na = detail::individualize(ca, v, cells_a);
      Colouring nb = detail::individualize(cb, w, cells_b);
      int joint = cells_a;
      if (!refiner_.refine(a_, na, &b_, &nb, joint)) continue;
      if (auto p = dfs(na, nb, joint)) return p;
    }
    return std::nullopt;
  }

  const Compiled& a_;
  const Compiled& b_;
  Refiner& refiner_;
};

// Colouring of one structure after individualizing `fixed` in order.
Colouring fixed_colouring(const Compiled& c, Refiner& refiner, std::span<const int> fixed, int& cells) {
  Colouring col = refiner.initial(c, cells);
  refiner.refine(c, col, nullptr, nullptr, cells);
  for (int v : fixed) {
    col = detail::individualize(col, v, cells);
    refiner.refine(c, col, nullptr, nullptr, cells);
  }
  return col;
}

// Searches an automorphism that fixes the points behind `base` (an already
// refined colouring) and maps v to w.
std::optional<Permutation> automorphism_moving(const Compiled& c, Refiner& refiner, const Colouring& base, int cells,
                                               int v, int w) {
  if (base[static_cast<std::size_t>(v)] != base[static_cast<std::size_t>(w)]) return std::nullopt;
  int cells_a = cells;
  int cells_b = cells;
  Colouring ca = detail::individualize(base, v, cells_a);
  Colouring cb = detail::individualize(base, w, cells_b);
  int joint = cells_a;
  if (!refiner.refine(c, ca, &c, &cb, joint)) return std::nullopt;
  IsoSearch search(c, c, refiner);
  return search.run(ca, cb, joint);
}

void check_points(const RelationalStructure& s, std::span<const int> pts) {
  for (int v : pts) {
    if (v < 0 || v >= s.size()) throw InvalidVertex("vertex " + std::to_string(v) + " outside domain");
  }
}

}  // namespace

namespace {

std::optional<Permutation> find_iso(const Compiled& a, const Compiled& b, std::span<const int> fixed_s,
                                    std::span<const int> fixed_t) {
  if (a.n != b.n || fixed_s.size() != fixed_t.size()) return std::nullopt;
  Refiner refiner;
  Colouring ca;
  Colouring cb;
  int cells = 0;
  if (!refiner.initial_joint(a, ca, b, cb, cells)) return std::nullopt;
  if (!refiner.refine(a, ca, &b, &cb, cells)) return std::nullopt;
  for (std::size_t i = 0; i < fixed_s.size(); ++i) {
    const int v = fixed_s[i];
    const int w = fixed_t[i];
    if (ca[static_cast<std::size_t>(v)] != cb[static_cast<std::size_t>(w)]) return std::nullopt;
    int cells_a = cells;
    int cells_b = cells;
    ca = detail::individualize(ca, v, cells_a);
    cb = detail::individualize(cb, w, cells_b);
    cells = cells_a;
    if (!refiner.refine(a, ca, &b, &cb, cells)) return std::nullopt;
  }
  IsoSearch search(a, b, refiner);
  return search.run(ca, cb, cells);
}

}  // namespace

std::optional<Permutation> find_isomorphism(const RelationalStructure& s, const RelationalStructure& t,
                                            std::span<const int> fixed_s, std::span<const int> fixed_t) {
  require_same_signature(s, t);
  if (s.size() != t.size() || fixed_s.size() != fixed_t.size()) return std::nullopt;
  check_points(s, fixed_s);
  check_points(t, fixed_t);
  return find_iso(detail::compile(s), detail::compile(t), fixed_s, fixed_t);
}

std::optional<Permutation> are_isomorphic(const FiniteGraph& g, const FiniteGraph& h) {
  if (g.order() != h.order() || g.edge_count() != h.edge_count()) return std::nullopt;
  return find_iso(detail::compile(g), detail::compile(h), {}, {});
}

std::optional<Permutation> are_isomorphic(const RelationalStructure& s, const RelationalStructure& t) {
  return find_isomorphism(s, t, {}, {});
}

namespace {

class EmbeddingSearch {
 public:
  EmbeddingSearch(const RelationalStructure& a, const RelationalStructure& b) : a_(a), b_(b) {
    const auto& sig = a.signature();
    for (std::size_t r = 0; r < sig.size(); ++r) {
      Rel rel;
      rel.index = r;
      rel.arity = sig[r].arity;
      rel.by_max.resize(static_cast<std::size_t>(a.size()));
      for (auto& t : a.tuples(r)) {
        const int m = *std::max_element(t.begin(), t.end());
        rel.by_max[static_cast<std::size_t>(m)].push_back(std::move(t));
      }
      rel.through.resize(static_cast<std::size_t>(b.size()));
      for (const auto& t : b.tuples(r)) {
        for (std::size_t p = 0; p < t.size(); ++p) {
          // Record each tuple once per distinct member.
          if (std::find(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(p), t[p]) == t.begin() + static_cast<std::ptrdiff_t>(p)) {
            rel.through[static_cast<std::size_t>(t[p])].push_back(t);
          }
        }
      }
      rels_.push_back(std::move(rel));
    }
    map_.assign(static_cast<std::size_t>(a.size()), -1);
    used_.assign(static_cast<std::size_t>(b.size()), 0);
  }

  std::optional<std::vector<int>> run() {
    if (a_.size() > b_.size()) return std::nullopt;
    if (dfs(0)) return map_;
    return std::nullopt;
  }

 private:
  struct Rel {
    std::size_t index = 0;
    int arity = 0;
    std::vector<std::vector<Tuple>> by_max;   // A's tuples keyed by largest entry
    std::vector<std::vector<Tuple>> through;  // B's tuples keyed by each member
  };

  bool consistent(int k) {
    const int image = map_[static_cast<std::size_t>(k)];
    std::vector<int> mapped;
    for (const auto& rel : rels_) {
      const auto& own = rel.by_max[static_cast<std::size_t>(k)];
      for (const auto& t : own) {
        mapped.assign(t.size(), 0);
        for (std::size_t p = 0; p < t.size(); ++p) mapped[p] = map_[static_cast<std::size_t>(t[p])];
        if (!b_.holds(rel.index, mapped)) return false;
      }
      // Count B's tuples through the new image that live on the mapped set.
      std::size_t inside = 0;
      for (const auto& t : rel.through[static_cast<std::size_t>(image)]) {
        bool all = true;
        for (int x : t) {
          if (!used_[static_cast<std::size_t>(x)]) {
            all = false;
            break;
          }
        }
        if (all) ++inside;
      }
      if (inside != own.size()) return false;
    }
    return true;
  }

  bool dfs(int k) {
    if (k == a_.size()) return true;
    for (int w = 0; w < b_.size(); ++w) {
      if (used_[static_cast<std::size_t>(w)]) continue;
      map_[static_cast<std::size_t>(k)] = w;
      used_[static_cast<std::size_t>(w)] = 1;
      if (consistent(k) && dfs(k + 1)) return true;
      used_[static_cast<std::size_t>(w)] = 0;
      map_[static_cast<std::size_t>(k)] = -1;
    }
    return false;
  }

  const RelationalStructure& a_;
  const RelationalStructure& b_;
  std::vector<Rel> rels_;
  std::vector<int> map_;
  std::vector<char> used_;
};

}  // namespace

std::optional<std::vector<int>> find_embedding(const RelationalStructure& a, const RelationalStructure& b) {
  require_same_signature(a, b);
  EmbeddingSearch search(a, b);
  return search.run();
}

namespace {

std::vector<int> closure_orbit(int start, const std::vector<Permutation>& gens, int n) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> orbit{start};
  seen[static_cast<std::size_t>(start)] = 1;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (const auto& g : gens) {
      const int y = g[static_cast<std::size_t>(orbit[i])];
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        orbit.push_back(y);
      }
    }
  }
  return orbit;
}

}  // namespace

namespace {

PermGroupDescription automorphisms_of(const Compiled& c) {
  if (c.n > kGroupLimit) throw SizeLimit("automorphism group computation", kGroupLimit);
  Refiner refiner;
  const int n = c.n;
  PermGroupDescription group;
  group.degree = n;

  // Colourings with 0..i-1 individualized, for every level i.
  std::vector<Colouring> prefix(static_cast<std::size_t>(n) + 1);
  std::vector<int> prefix_cells(static_cast<std::size_t>(n) + 1);
  int cells = 0;
  prefix[0] = refiner.initial(c, cells);
  refiner.refine(c, prefix[0], nullptr, nullptr, cells);
  prefix_cells[0] = cells;
  for (int i = 0; i < n; ++i) {
    int k = prefix_cells[static_cast<std::size_t>(i)];
    Colouring next = detail::individualize(prefix[static_cast<std::size_t>(i)], i, k);
    refiner.refine(c, next, nullptr, nullptr, k);
    prefix[static_cast<std::size_t>(i) + 1] = std::move(next);
    prefix_cells[static_cast<std::size_t>(i) + 1] = k;
  }

  BigInt order = 1;
  for (int i = n - 1; i >= 0; --i) {
    const auto& base = prefix[static_cast<std::size_t>(i)];
    std::vector<int> orbit = closure_orbit(i, group.generators, n);
    for (int j = i + 1; j < n; ++j) {
      if (std::find(orbit.begin(), orbit.end(), j) != orbit.end()) continue;
      if (base[static_cast<std::size_t>(j)] != base[static_cast<std::size_t>(i)]) continue;
      auto g = automorphism_moving(c, refiner, base, prefix_cells[static_cast<std::size_t>(i)], i, j);
      if (g) {
        group.generators.push_back(std::move(*g));
        orbit = closure_orbit(i, group.generators, n);
      }
    }
    order *= static_cast<unsigned>(orbit.size());
  }
  group.order = order;
  return group;
}

std::vector<int> stabiliser_orbits_of(const Compiled& c, std::span<const int> fixed) {
  if (c.n > kGroupLimit) throw SizeLimit("stabiliser orbit computation", kGroupLimit);
  for (int v : fixed) {
    if (v < 0 || v >= c.n) throw InvalidVertex("vertex " + std::to_string(v) + " outside domain");
  }
  Refiner refiner;
  int cells = 0;
  const Colouring base = fixed_colouring(c, refiner, fixed, cells);
  const auto n = static_cast<std::size_t>(c.n);
  union_find uf(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = v + 1; w < n; ++w) {
      if (base[v] != base[w] || uf.find(v) == uf.find(w)) continue;
      auto g = automorphism_moving(c, refiner, base, cells, static_cast<int>(v), static_cast<int>(w));
      if (g) {
        for (std::size_t x = 0; x < n; ++x) uf.unite(x, static_cast<std::size_t>((*g)[x]));
      }
    }
  }
  std::vector<int> id(n, -1);
  int next = 0;
  std::vector<int> root_id(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    const auto r = uf.find(v);
    if (root_id[r] < 0) root_id[r] = next++;
    id[v] = root_id[r];
  }
  return id;
}

}  // namespace

PermGroupDescription automorphisms(const RelationalStructure& s) {
  if (s.size() > kGroupLimit) throw SizeLimit("automorphism group computation", kGroupLimit);
  return automorphisms_of(detail::compile(s));
}

PermGroupDescription automorphisms(const FiniteGraph& g) {
  if (g.order() > kGroupLimit) throw SizeLimit("automorphism group computation", kGroupLimit);
  return automorphisms_of(detail::compile(g));
}

std::vector<int> stabiliser_orbits(const RelationalStructure& s, std::span<const int> fixed) {
  if (s.size() > kGroupLimit) throw SizeLimit("stabiliser orbit computation", kGroupLimit);
  check_points(s, fixed);
  return stabiliser_orbits_of(detail::compile(s), fixed);
}

std::vector<int> stabiliser_orbits(const FiniteGraph& g, std::span<const int> fixed) {
  if (g.order() > kGroupLimit) throw SizeLimit("stabiliser orbit computation", kGroupLimit);
  return stabiliser_orbits_of(detail::compile(g), fixed);
}

namespace {

// Individualization-refinement search for the least leaf code, pruned by the
// automorphisms discovered along the way.
class CanonicalSearch {
 public:
  CanonicalSearch(const Compiled& c, Refiner& refiner) : c_(c), refiner_(refiner) {}

  void run() {
    int cells = 0;
    Colouring col = refiner_.initial(c_, cells);
    refiner_.refine(c_, col, nullptr, nullptr, cells);
    dfs(col, cells);
  }

  std::vector<std::uint8_t> best_code;
  Permutation best_labelling;

 private:
  std::vector<std::uint8_t> code_for(const Colouring& labels) const {
    const auto& sig = *c_.signature;
    const auto n = static_cast<std::size_t>(c_.n);
    std::vector<std::uint8_t> code;
    code.push_back(static_cast<std::uint8_t>(n));
    code.push_back(static_cast<std::uint8_t>(sig.size()));
    for (const auto& sym : sig) code.push_back(static_cast<std::uint8_t>(sym.arity));
    std::vector<std::uint8_t> table;
    auto set_cell = [&](std::size_t cell) { table[cell >> 3] |= static_cast<std::uint8_t>(1U << (cell & 7)); };
    std::size_t binary = 0;
    std::size_t unary = 0;
    std::size_t high = 0;
    for (const auto& sym : sig) {
      std::size_t cells = 1;
      for (int i = 0; i < sym.arity; ++i) cells *= n;
      table.assign((cells + 7) / 8, 0);
      if (sym.arity == 1) {
        std::uint64_t m = c_.unary[unary++];
        while (m != 0) {
          const int v = std::countr_zero(m);
          m &= m - 1;
          set_cell(static_cast<std::size_t>(labels[static_cast<std::size_t>(v)]));
        }
      } else if (sym.arity == 2) {
        const std::size_t b = binary++;
        std::uint64_t loops = c_.loops[b];
        while (loops != 0) {
          const int v = std::countr_zero(loops);
          loops &= loops - 1;
          const auto lv = static_cast<std::size_t>(labels[static_cast<std::size_t>(v)]);
          set_cell(lv * n + lv);
        }
        for (std::size_t v = 0; v < n; ++v) {
          const auto lv = static_cast<std::size_t>(labels[v]);
          std::uint64_t m = c_.out[b * n + v];
          while (m != 0) {
            const int u = std::countr_zero(m);
            m &= m - 1;
            set_cell(lv * n + static_cast<std::size_t>(labels[static_cast<std::size_t>(u)]));
          }
        }
      } else {
        const auto& h = c_.high[high++];
        const auto a = static_cast<std::size_t>(h.arity);
        for (std::size_t off = 0; off < h.flat.size(); off += a) {
          std::size_t cell = 0;
          for (std::size_t p = 0; p < a; ++p) cell = cell * n + static_cast<std::size_t>(labels[static_cast<std::size_t>(h.flat[off + p])]);
          set_cell(cell);
        }
      }
      code.insert(code.end(), table.begin(), table.end());
    }
    return code;
  }

  // Returns the depth to unwind to, or -1 to continue normally.
  int dfs(const Colouring& col, int cells) {
    const int depth = static_cast<int>(path_.size());
    const int target = detail::first_nonsingleton(col, cells);
    if (target < 0) return leaf(col);
    std::vector<int> explored;
    for (int w = 0; w < c_.n; ++w) {
      if (col[static_cast<std::size_t>(w)] != target) continue;
      if (!explored.empty() && equivalent_to_explored(w, explored)) continue;
      explored.push_back(w);
      int k = cells;
      Colouring next = detail::individualize(col, w, k);
      refiner_.refine(c_, next, nullptr, nullptr, k);
      path_.push_back(w);
      const int unwind = dfs(next, k);
      path_.pop_back();
      if (unwind >= 0 && unwind < depth) return unwind;
    }
    return -1;
  }

  int leaf(const Colouring& labels) {
    auto code = code_for(labels);
    if (best_code.empty() || code < best_code) {
      best_code = std::move(code);
      best_labelling = labels;
      best_path_ = path_;
      return -1;
    }
    if (code == best_code) {
      // labels^-1 o best maps the best leaf onto this one.
      const Permutation inv = inverse(labels);
      Permutation gamma(labels.size());
      for (std::size_t v = 0; v < labels.size(); ++v) gamma[v] = inv[static_cast<std::size_t>(best_labelling[v])];
      automorphisms_.push_back(std::move(gamma));
      std::size_t common = 0;
      while (common < path_.size() && common < best_path_.size() && path_[common] == best_path_[common]) ++common;
      return static_cast<int>(common);
    }
    return -1;
  }

  bool equivalent_to_explored(int w, const std::vector<int>& explored) const {
    const auto n = static_cast<std::size_t>(c_.n);
    union_find uf(n);
    for (const auto& g : automorphisms_) {
      bool fixes_path = true;
      for (int p : path_) {
        if (g[static_cast<std::size_t>(p)] != p) {
          fixes_path = false;
          break;
        }
      }
      if (!fixes_path) continue;
      for (std::size_t x = 0; x < n; ++x) uf.unite(x, static_cast<std::size_t>(g[x]));
    }
    const auto rw = uf.find(static_cast<std::size_t>(w));
    for (int e : explored) {
      if (uf.find(static_cast<std::size_t>(e)) == rw) return true;
    }
    return false;
  }

  const Compiled& c_;
  Refiner& refiner_;
  std::vector<int> path_;
  std::vector<int> best_path_;
  std::vector<Permutation> automorphisms_;
};

}  // namespace

namespace {

std::pair<std::vector<std::uint8_t>, Permutation> canonical_of(const Compiled& c) {
  if (c.n > kCanonicalLimit) throw SizeLimit("canonical code", kCanonicalLimit);
  Refiner refiner;
  CanonicalSearch search(c, refiner);
  search.run();
  return {std::move(search.best_code), std::move(search.best_labelling)};
}

}  // namespace

std::pair<std::vector<std::uint8_t>, Permutation> canonical_form(const RelationalStructure& s) {
  if (s.size() > kCanonicalLimit) throw SizeLimit("canonical code", kCanonicalLimit);
  return canonical_of(detail::compile(s));
}

std::pair<std::vector<std::uint8_t>, Permutation> canonical_form(const FiniteGraph& g) {
  if (g.order() > kCanonicalLimit) throw SizeLimit("canonical code", kCanonicalLimit);
  return canonical_of(detail::compile(g));
}

std::vector<std::uint8_t> canonical_code(const RelationalStructure& s) { return canonical_form(s).first; }
std::vector<std::uint8_t> canonical_code(const FiniteGraph& g) { return canonical_form(g).first; }

TupleOrbits::TupleOrbits(int n, int k) : n_(n), k_(k) {
  std::size_t size = 1;
  for (int i = 0; i < k; ++i) size *= static_cast<std::size_t>(n);
  label_.assign(size, -1);
}

std::size_t TupleOrbits::index_of(std::span<const int> tuple) const {
  if (static_cast<int>(tuple.size()) != k_) throw InvalidVertex("tuple length differs from k");
  std::size_t idx = 0;
  for (int v : tuple) {
    if (v < 0 || v >= n_) throw InvalidVertex("tuple entry outside domain");
    idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }
  return idx;
}

std::vector<int> TupleOrbits::tuple_at(std::size_t index) const {
  std::vector<int> t(static_cast<std::size_t>(k_));
  for (int i = k_ - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(n_));
    index /= static_cast<std::size_t>(n_);
  }
  return t;
}

std::vector<std::vector<int>> TupleOrbits::representatives() const {
  std::vector<std::vector<int>> reps(static_cast<std::size_t>(count_));
  std::vector<char> done(static_cast<std::size_t>(count_), 0);
  for (std::size_t i = 0; i < label_.size(); ++i) {
    const int o = label_[i];
    if (o >= 0 && !done[static_cast<std::size_t>(o)]) {
      done[static_cast<std::size_t>(o)] = 1;
      reps[static_cast<std::size_t>(o)] = tuple_at(i);
    }
  }
  return reps;
}

TupleOrbits orbits_on_ktuples(const PermGroupDescription& group, int k) {
  const int n = group.degree;
  if (n > kGroupLimit) throw SizeLimit("k-tuple orbits", kGroupLimit);
  if (k < 1 || k > 4) throw SizeLimit("k-tuple orbits need 1 <= k", 4);
  TupleOrbits orbits(n, k);
  const std::size_t size = orbits.index_space();
  union_find uf(size);
  std::vector<char> injective(size, 0);
  std::vector<int> t(static_cast<std::size_t>(k));
  for (std::size_t idx = 0; idx < size; ++idx) {
    std::size_t rest = idx;
    std::uint64_t seen = 0;
    bool ok = true;
    for (int i = k - 1; i >= 0; --i) {
      const int v = static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
      t[static_cast<std::size_t>(i)] = v;
      if ((seen >> v) & 1U) ok = false;
      seen |= std::uint64_t{1} << v;
    }
    if (!ok) continue;
    injective[idx] = 1;
    for (const auto& g : group.generators) {
      std::size_t image = 0;
      for (int v : t) image = image * static_cast<std::size_t>(n) + static_cast<std::size_t>(g[static_cast<std::size_t>(v)]);
      uf.unite(idx, image);
    }
  }
  std::vector<int> root_id(size, -1);
  int next = 0;
  for (std::size_t idx = 0; idx < size; ++idx) {
    if (!injective[idx]) continue;
    const auto r = uf.find(idx);
    if (root_id[r] < 0) root_id[r] = next++;
    orbits.label_[idx] = root_id[r];
  }
  orbits.count_ = next;
  return orbits;
}

TupleOrbits orbits_on_ktuples(const RelationalStructure& s, int k) {
  if (s.size() > kGroupLimit) throw SizeLimit("k-tuple orbits", kGroupLimit);
  if (k < 1 || k > 4) throw SizeLimit("k-tuple orbits need 1 <= k", 4);
  return orbits_on_ktuples(automorphisms(s), k);
}

TupleOrbits orbits_on_ktuples(const FiniteGraph& g, int k) {
  if (g.order() > kGroupLimit) throw SizeLimit("k-tuple orbits", kGroupLimit);
  if (k < 1 || k > 4) throw SizeLimit("k-tuple orbits need 1 <= k", 4);
  return orbits_on_ktuples(automorphisms(g), k);
}

}  // namespace homlab
