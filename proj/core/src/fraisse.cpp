#include "homlab/fraisse.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "homlab/errors.hpp"
#include "homlab/graph.hpp"
#include "homlab/rigid.hpp"

namespace homlab::fraisse {

struct ClassSpec::Impl {
  ClassKind kind = ClassKind::AllGraphs;
  int parameter = 0;
  Signature signature;
  std::string name;
  // Superposition only: the two components and, for each component
  // relation, its index in `signature`.
  std::shared_ptr<const Impl> first;
  std::shared_ptr<const Impl> second;
  std::vector<std::size_t> first_map;
  std::vector<std::size_t> second_map;
};

struct ClassSpec::Access {
  static const Impl& of(const ClassSpec& c) { return *c.impl_; }
  static bool hereditary(const Impl& c) {
    if (c.kind == ClassKind::EvenEdgeGraphs) return false;
    if (c.kind == ClassKind::Superposition) return hereditary(*c.first) && hereditary(*c.second);
    return true;
  }
};

namespace {

using Impl = ClassSpec::Impl;
const Impl& impl_of(const ClassSpec& c) { return ClassSpec::Access::of(c); }

std::shared_ptr<const Impl> make_impl(ClassKind kind, int parameter, Signature sig, std::string name) {
  auto impl = std::make_shared<Impl>();
  impl->kind = kind;
  impl->parameter = parameter;
  impl->signature = std::move(sig);
  impl->name = std::move(name);
  return impl;
}

// ---------------------------------------------------------------------------
// Membership predicates.

bool is_graph(const RelationalStructure& s) {
  const int n = s.size();
  for (int x = 0; x < n; ++x) {
    if (s.holds(0, {x, x})) return false;
    for (int y = x + 1; y < n; ++y) {
      if (s.holds(0, {x, y}) != s.holds(0, {y, x})) return false;
    }
  }
  return true;
}

bool has_clique(const RelationalStructure& s, int k) {
  const int n = s.size();
  if (k <= 0) return true;
  std::vector<int> chosen;
  std::function<bool(int)> extend = [&](int from) {
    if (static_cast<int>(chosen.size()) == k) return true;
    for (int v = from; v < n; ++v) {
      bool ok = true;
      for (int u : chosen) {
        if (!s.holds(0, {u, v})) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen.push_back(v);
      if (extend(v + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return extend(0);
}

bool is_bipartite(const RelationalStructure& s) {
  const int n = s.size();
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  for (int start = 0; start < n; ++start) {
    if (side[static_cast<std::size_t>(start)] >= 0) continue;
    side[static_cast<std::size_t>(start)] = 0;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        if (!s.holds(0, {u, v})) continue;
        auto& sv = side[static_cast<std::size_t>(v)];
        if (sv < 0) {
          sv = 1 - side[static_cast<std::size_t>(u)];
          stack.push_back(v);
        } else if (sv == side[static_cast<std::size_t>(u)]) {
          return false;
        }
      }
    }
  }
  return true;
}

int max_degree(const RelationalStructure& s) {
  int best = 0;
  for (int x = 0; x < s.size(); ++x) {
    int d = 0;
    for (int y = 0; y < s.size(); ++y) d += s.holds(0, {x, y}) ? 1 : 0;
    best = std::max(best, d);
  }
  return best;
}

bool is_strict_order(const RelationalStructure& s, std::size_t rel) {
  const int n = s.size();
  for (int x = 0; x < n; ++x) {
    if (s.holds(rel, {x, x})) return false;
    for (int y = x + 1; y < n; ++y) {
      if (s.holds(rel, {x, y}) == s.holds(rel, {y, x})) return false;
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (!s.holds(rel, {x, y})) continue;
      for (int z = 0; z < n; ++z) {
        if (s.holds(rel, {y, z}) && !s.holds(rel, {x, z})) return false;
      }
    }
  }
  return true;
}

RelationalStructure component(const RelationalStructure& s, const Impl& part, const std::vector<std::size_t>& map) {
  RelationalStructure out(part.signature, s.size());
  for (std::size_t r = 0; r < map.size(); ++r) {
    for (const Tuple& t : s.tuples(map[r])) out.set(r, t);
  }
  return out;
}

bool contains_impl(const Impl& c, const RelationalStructure& s) {
  if (s.signature() != c.signature) return false;
  switch (c.kind) {
    case ClassKind::AllGraphs:
      return is_graph(s);
    case ClassKind::KkFreeGraphs:
      return is_graph(s) && !has_clique(s, c.parameter);
    case ClassKind::Tournaments:
      return rigid::is_tournament(s);
    case ClassKind::BipartiteGraphs:
      return is_graph(s) && is_bipartite(s);
    case ClassKind::Matchings:
      return is_graph(s) && max_degree(s) <= 1;
    case ClassKind::LinearOrders:
      return is_strict_order(s, 0);
    case ClassKind::MOrders:
      for (std::size_t r = 0; r < s.signature().size(); ++r) {
        if (!is_strict_order(s, r)) return false;
      }
      return true;
    case ClassKind::CRelations:
      return s.size() == 0 ? s.tuple_count(0) == 0 : rigid::is_c_relation(s);
    case ClassKind::Superposition:
      return contains_impl(*c.first, component(s, *c.first, c.first_map)) &&
             contains_impl(*c.second, component(s, *c.second, c.second_map));
    case ClassKind::EvenEdgeGraphs:
      return is_graph(s) && s.tuple_count(0) % 4 == 0;  // each edge is stored twice
  }
  return false;
}

bool is_graph_kind(ClassKind k) {
  return k == ClassKind::AllGraphs || k == ClassKind::KkFreeGraphs || k == ClassKind::BipartiteGraphs ||
         k == ClassKind::Matchings || k == ClassKind::EvenEdgeGraphs;
}

// Same relations on one more point.
RelationalStructure grow(const RelationalStructure& s) {
  RelationalStructure out(s.signature(), s.size() + 1);
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    for (const Tuple& t : s.tuples(r)) out.set(r, t);
  }
  return out;
}

// Rank of each point in a strict linear order.
std::vector<int> order_ranks(const RelationalStructure& s, std::size_t rel) {
  std::vector<int> rank(static_cast<std::size_t>(s.size()), 0);
  for (int x = 0; x < s.size(); ++x) {
    for (int y = 0; y < s.size(); ++y) rank[static_cast<std::size_t>(x)] += s.holds(rel, {y, x}) ? 1 : 0;
  }
  return rank;
}

std::vector<RelationalStructure> extensions_impl(const Impl& c, const RelationalStructure& s) {
  const int n = s.size();
  std::vector<RelationalStructure> out;
  if (is_graph_kind(c.kind) || c.kind == ClassKind::Tournaments) {
    if (n > 20) throw SizeLimit("one-point extensions", 20);
    const bool tour = c.kind == ClassKind::Tournaments;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      RelationalStructure t = grow(s);
      for (int u = 0; u < n; ++u) {
        const bool bit = (mask >> u) & 1U;
        if (tour) {
          if (bit) t.set(0, {n, u});
          else t.set(0, {u, n});
        } else if (bit) {
          t.set(0, {n, u});
          t.set(0, {u, n});
        }
      }
      out.push_back(std::move(t));
    }
    return out;
  }
  switch (c.kind) {
    case ClassKind::LinearOrders:
    case ClassKind::MOrders: {
      const std::size_t m = s.signature().size();
      std::vector<std::vector<int>> ranks;
      for (std::size_t r = 0; r < m; ++r) ranks.push_back(order_ranks(s, r));
      std::vector<int> pos(m, 0);  // the new point has pos[r] points below it
      while (true) {
        RelationalStructure t = grow(s);
        for (std::size_t r = 0; r < m; ++r) {
          for (int u = 0; u < n; ++u) {
            if (ranks[r][static_cast<std::size_t>(u)] < pos[r]) t.set(r, {u, n});
            else t.set(r, {n, u});
          }
        }
        out.push_back(std::move(t));
        std::size_t r = m;
        while (r > 0 && pos[r - 1] == n) pos[--r] = 0;
        if (r == 0) break;
        ++pos[r - 1];
      }
      return out;
    }
    case ClassKind::CRelations: {
      if (n == 0) {
        out.emplace_back(s.signature(), 1);
        return out;
      }
      const rigid::RootedBinaryTree tree = rigid::tree_of_c_relation(s);
      for (int v = 0; v < tree.node_count(); ++v) {
        out.push_back(rigid::c_relation_of_tree(tree.with_leaf_above(v)));
      }
      return out;
    }
    case ClassKind::Superposition: {
      const auto e1 = extensions_impl(*c.first, component(s, *c.first, c.first_map));
      const auto e2 = extensions_impl(*c.second, component(s, *c.second, c.second_map));
      for (const auto& x : e1) {
        for (const auto& y : e2) {
          RelationalStructure t(c.signature, n + 1);
          for (std::size_t r = 0; r < c.first_map.size(); ++r) {
            for (const Tuple& tup : x.tuples(r)) t.set(c.first_map[r], tup);
          }
          for (std::size_t r = 0; r < c.second_map.size(); ++r) {
            for (const Tuple& tup : y.tuples(r)) t.set(c.second_map[r], tup);
          }
          out.push_back(std::move(t));
        }
      }
      return out;
    }
    default:
      break;
  }
  return out;
}

using Code = std::vector<std::uint8_t>;

// One representative per isomorphism class on `size` points. With `prune`,
// intermediate levels are restricted to members (valid for hereditary kinds).
std::vector<RelationalStructure> catalog(const Impl& c, int size, bool prune) {
  std::vector<RelationalStructure> level{RelationalStructure(c.signature, 0)};
  for (int m = 1; m <= size; ++m) {
    std::map<Code, RelationalStructure> next;
    for (const auto& s : level) {
      for (auto& t : extensions_impl(c, s)) {
        if (prune && !contains_impl(c, t)) continue;
        Code code = canonical_code(t);
        next.try_emplace(std::move(code), std::move(t));
      }
    }
    level.clear();
    for (auto& [code, t] : next) level.push_back(std::move(t));
  }
  std::vector<RelationalStructure> out;
  for (auto& t : level) {
    if (contains_impl(c, t)) out.push_back(std::move(t));
  }
  return out;
}

std::string rename_clash(const std::string& name, const std::set<std::string>& taken) {
  std::string out = name;
  while (taken.count(out)) out += "'";
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ClassSpec

ClassSpec ClassSpec::all_graphs() { return ClassSpec(make_impl(ClassKind::AllGraphs, 0, graph_signature(), "graphs")); }

ClassSpec ClassSpec::k_free_graphs(int k) {
  if (k < 2) throw Error("K_k-free graphs need k >= 2");
  return ClassSpec(
      make_impl(ClassKind::KkFreeGraphs, k, graph_signature(), "k" + std::to_string(k) + "free"));
}

ClassSpec ClassSpec::tournaments() {
  return ClassSpec(make_impl(ClassKind::Tournaments, 0, Signature{{"T", 2}}, "tournaments"));
}

ClassSpec ClassSpec::bipartite_graphs() {
  return ClassSpec(make_impl(ClassKind::BipartiteGraphs, 0, graph_signature(), "bipartite"));
}

ClassSpec ClassSpec::matchings() {
  return ClassSpec(make_impl(ClassKind::Matchings, 0, graph_signature(), "matchings"));
}

ClassSpec ClassSpec::linear_orders() {
  return ClassSpec(make_impl(ClassKind::LinearOrders, 1, Signature{{"<", 2}}, "orders"));
}

ClassSpec ClassSpec::m_orders(int m) {
  if (m < 1 || m > 4) throw Error("m-orders need 1 <= m <= 4");
  return ClassSpec(
      make_impl(ClassKind::MOrders, m, rigid::multiorder_signature(m), std::to_string(m) + "orders"));
}

ClassSpec ClassSpec::c_relations() {
  return ClassSpec(make_impl(ClassKind::CRelations, 0, rigid::c_relation_signature(), "crel"));
}

ClassSpec ClassSpec::even_edge_graphs() {
  return ClassSpec(make_impl(ClassKind::EvenEdgeGraphs, 0, graph_signature(), "even-edges"));
}

ClassSpec ClassSpec::superposition(const ClassSpec& first, const ClassSpec& second) {
  auto impl = std::make_shared<Impl>();
  impl->kind = ClassKind::Superposition;
  impl->first = first.impl_;
  impl->second = second.impl_;
  std::vector<RelationSymbol> symbols;
  std::set<std::string> taken;
  for (const auto& r : first.signature()) {
    impl->first_map.push_back(symbols.size());
    symbols.push_back(r);
    taken.insert(r.name);
  }
  for (const auto& r : second.signature()) {
    impl->second_map.push_back(symbols.size());
    RelationSymbol renamed{rename_clash(r.name, taken), r.arity};
    taken.insert(renamed.name);
    symbols.push_back(renamed);
  }
  impl->signature = Signature(std::move(symbols));
  impl->name = first.name() + "*" + second.name();
  return ClassSpec(std::move(impl));
}

ClassSpec ClassSpec::parse(std::string_view keyword) {
  if (const auto star = keyword.find('*'); star != std::string_view::npos) {
    return superposition(parse(keyword.substr(0, star)), parse(keyword.substr(star + 1)));
  }
  if (keyword == "graphs") return all_graphs();
  if (keyword == "tournaments") return tournaments();
  if (keyword == "bipartite") return bipartite_graphs();
  if (keyword == "matchings") return matchings();
  if (keyword == "orders") return linear_orders();
  if (keyword == "crel") return c_relations();
  if (keyword == "even-edges") return even_edge_graphs();
  auto number = [](std::string_view digits) {
    if (digits.empty() || digits.size() > 2) return -1;
    int v = 0;
    for (char ch : digits) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) return -1;
      v = v * 10 + (ch - '0');
    }
    return v;
  };
  if (keyword.size() > 5 && keyword.front() == 'k' && keyword.ends_with("free")) {
    const int k = number(keyword.substr(1, keyword.size() - 5));
    if (k >= 2) return k_free_graphs(k);
  }
  if (keyword.size() > 6 && keyword.ends_with("orders")) {
    const int m = number(keyword.substr(0, keyword.size() - 6));
    if (m >= 1 && m <= 4) return m_orders(m);
  }
  throw ParseError("unknown class keyword '" + std::string(keyword) + "'", 1, 1);
}

ClassKind ClassSpec::kind() const { return impl_->kind; }
int ClassSpec::parameter() const { return impl_->parameter; }
const Signature& ClassSpec::signature() const { return impl_->signature; }
std::string ClassSpec::name() const { return impl_->name; }

bool ClassSpec::hereditary() const { return Access::hereditary(*impl_); }

bool ClassSpec::contains(const RelationalStructure& s) const { return contains_impl(*impl_, s); }

std::vector<RelationalStructure> ClassSpec::one_point_extensions(const RelationalStructure& s) const {
  require_same_signature(s, RelationalStructure(impl_->signature, 0));
  return extensions_impl(*impl_, s);
}

std::vector<RelationalStructure> ClassSpec::members(int size) const {
  if (size < 0) throw Error("member size must be non-negative");
  if (size > 7) throw SizeLimit("class catalog", 7);
  return catalog(*impl_, size, hereditary());
}

// ---------------------------------------------------------------------------
// Hereditary check

HereditaryReport check_hereditary(const ClassSpec& c, int n) {
  if (n > kHereditaryLimit) throw SizeLimit("hereditary check", kHereditaryLimit);
  HereditaryReport report;
  const Impl& impl = impl_of(c);
  for (int size = 2; size <= n; ++size) {
    // Unpruned catalog: intermediate levels must not assume heredity.
    for (const auto& m : catalog(impl, size, false)) {
      for (int p = 0; p < size; ++p) {
        std::vector<int> keep;
        for (int v = 0; v < size; ++v) {
          if (v != p) keep.push_back(v);
        }
        RelationalStructure sub = induced_substructure(m, keep);
        if (!contains_impl(impl, sub)) {
          report.holds = false;
          report.member = m;
          report.substructure = std::move(sub);
          report.deleted_point = p;
          return report;
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Amalgamation

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::Fails:
      return "fails";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

// Searches an amalgam for an instance in normal form: A is the prefix
// 0..a-1 of both B1 and B2 and the host starts as a copy of B1.
class AmalgamSearch {
 public:
  AmalgamSearch(const Impl& c, const RelationalStructure& b1, const RelationalStructure& b2, int a, int extra)
      : c_(c), b1_(b1), b2_(b2), a_(a), extra_(extra), hereditary_(ClassSpec::Access::hereditary(c)) {}

  std::optional<Amalgam> run(bool strong) {
    const int k1 = b1_.size() - a_;
    const int k2 = b2_.size() - a_;
    const int max_ident = strong ? 0 : std::min(k1, k2);
    for (int s = 0; s <= max_ident; ++s) {
      for (const auto& pattern : patterns(k1, k2, s)) {
        if (auto found = try_pattern(pattern)) return found;
      }
    }
    return std::nullopt;
  }

 private:
  // Each pattern maps the B2-only points to B1-only points (or -1 = new)
  // injectively, with exactly s identifications; sorted lexicographically.
  static std::vector<std::vector<int>> patterns(int k1, int k2, int s) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::vector<bool> used(static_cast<std::size_t>(k1), false);
    std::function<void(int)> rec = [&](int ident) {
      if (static_cast<int>(cur.size()) == k2) {
        if (ident == s) out.push_back(cur);
        return;
      }
      const int left = k2 - static_cast<int>(cur.size());
      if (ident + left < s) return;
      cur.push_back(-1);
      rec(ident);
      cur.pop_back();
      if (ident == s) return;
      for (int u = 0; u < k1; ++u) {
        if (used[static_cast<std::size_t>(u)]) continue;
        used[static_cast<std::size_t>(u)] = true;
        cur.push_back(u);
        rec(ident + 1);
        cur.pop_back();
        used[static_cast<std::size_t>(u)] = false;
      }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<Amalgam> try_pattern(const std::vector<int>& pattern) {
    const int n2 = b2_.size();
    g2_.assign(static_cast<std::size_t>(n2), -1);
    pre_.clear();
    img_.clear();
    for (int i = 0; i < a_; ++i) {
      g2_[static_cast<std::size_t>(i)] = i;
      pre_.push_back(i);
      img_.push_back(i);
    }
    new_points_.clear();
    for (int j = a_; j < n2; ++j) {
      const int t = pattern[static_cast<std::size_t>(j - a_)];
      if (t < 0) {
        new_points_.push_back(j);
      } else {
        g2_[static_cast<std::size_t>(j)] = a_ + t;
        pre_.push_back(j);
        img_.push_back(a_ + t);
      }
    }
    if (induced_substructure(b2_, pre_) != induced_substructure(b1_, img_)) return std::nullopt;
    host_ = b1_;
    if (place(0)) return Amalgam{host_, identity(b1_.size()), g2_};
    return std::nullopt;
  }

  static std::vector<int> identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return v;
  }

  bool place(std::size_t idx) {
    if (idx == new_points_.size()) return pad(0);
    const int j = new_points_[idx];
    const int p = host_.size();
    for (auto& cand : candidates(j)) {
      if (hereditary_ && !contains_impl(c_, cand)) continue;
      RelationalStructure saved = std::move(host_);
      host_ = std::move(cand);
      g2_[static_cast<std::size_t>(j)] = p;
      pre_.push_back(j);
      img_.push_back(p);
      if (place(idx + 1)) return true;
      pre_.pop_back();
      img_.pop_back();
      g2_[static_cast<std::size_t>(j)] = -1;
      host_ = std::move(saved);
    }
    return false;
  }

  // Unconstrained extra points, only useful for non-hereditary classes.
  bool pad(int used) {
    if (contains_impl(c_, host_)) return true;
    if (used == extra_) return false;
    for (auto& cand : extensions_impl(c_, host_)) {
      if (hereditary_ && !contains_impl(c_, cand)) continue;
      RelationalStructure saved = std::move(host_);
      host_ = std::move(cand);
      if (pad(used + 1)) return true;
      host_ = std::move(saved);
    }
    return false;
  }

  // Extensions of the host by one point that agree with B2 on the image of
  // the already placed points together with j.
  std::vector<RelationalStructure> candidates(int j) {
    const int n = host_.size();
    std::vector<RelationalStructure> out;
    const bool tour = c_.kind == ClassKind::Tournaments;
    if (is_graph_kind(c_.kind) || tour) {
      std::vector<int> pre_of(static_cast<std::size_t>(n), -1);
      for (std::size_t i = 0; i < img_.size(); ++i) pre_of[static_cast<std::size_t>(img_[i])] = pre_[i];
      std::vector<int> free_points;
      for (int u = 0; u < n; ++u) {
        if (pre_of[static_cast<std::size_t>(u)] < 0) free_points.push_back(u);
      }
      for (std::uint64_t counter = 0; counter < (std::uint64_t{1} << free_points.size()); ++counter) {
        RelationalStructure t = grow(host_);
        for (int u = 0; u < n; ++u) {
          bool bit = false;
          if (const int q = pre_of[static_cast<std::size_t>(u)]; q >= 0) {
            bit = b2_.holds(0, {j, q});
          } else {
            const auto pos = std::find(free_points.begin(), free_points.end(), u) - free_points.begin();
            bit = (counter >> pos) & 1U;
          }
          if (tour) {
            if (bit) t.set(0, {n, u});
            else t.set(0, {u, n});
          } else if (bit) {
            t.set(0, {n, u});
            t.set(0, {u, n});
          }
        }
        out.push_back(std::move(t));
      }
      return out;
    }
    for (auto& t : extensions_impl(c_, host_)) {
      if (agrees(t, n, j)) out.push_back(std::move(t));
    }
    return out;
  }

  // Every tuple over the placed images and the new point p that uses p.
  bool agrees(const RelationalStructure& t, int p, int j) const {
    std::vector<int> img = img_;
    std::vector<int> pre = pre_;
    img.push_back(p);
    pre.push_back(j);
    const std::size_t L = img.size();
    for (std::size_t r = 0; r < t.signature().size(); ++r) {
      const int k = t.signature()[r].arity;
      std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
      Tuple ti(static_cast<std::size_t>(k));
      Tuple tp(static_cast<std::size_t>(k));
      while (true) {
        bool uses_new = false;
        for (int q = 0; q < k; ++q) {
          const std::size_t i = idx[static_cast<std::size_t>(q)];
          ti[static_cast<std::size_t>(q)] = img[i];
          tp[static_cast<std::size_t>(q)] = pre[i];
          uses_new = uses_new || i + 1 == L;
        }
        if (uses_new && t.holds(r, ti) != b2_.holds(r, tp)) return false;
        int q = k - 1;
        while (q >= 0 && ++idx[static_cast<std::size_t>(q)] == L) idx[static_cast<std::size_t>(q--)] = 0;
        if (q < 0) break;
      }
    }
    return true;
  }

  const Impl& c_;
  const RelationalStructure& b1_;
  const RelationalStructure& b2_;
  int a_;
  int extra_;
  bool hereditary_;
  RelationalStructure host_;
  std::vector<int> g2_;
  std::vector<int> pre_;
  std::vector<int> img_;
  std::vector<int> new_points_;
};

// Relabels b so that f lists the points 0..|f|-1 and the rest follow in
// increasing order; returns the structure and old-to-new labels.
std::pair<RelationalStructure, std::vector<int>> normalise(const RelationalStructure& b, std::span<const int> f) {
  std::vector<int> order(f.begin(), f.end());
  std::vector<bool> in(static_cast<std::size_t>(b.size()), false);
  for (int x : f) in[static_cast<std::size_t>(x)] = true;
  for (int x = 0; x < b.size(); ++x) {
    if (!in[static_cast<std::size_t>(x)]) order.push_back(x);
  }
  std::vector<int> sigma(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) sigma[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  return {relabel(b, sigma), sigma};
}

void validate(const AmalgamationInstance& inst) {
  require_same_signature(inst.a, inst.b1);
  require_same_signature(inst.a, inst.b2);
  if (inst.f1.size() != static_cast<std::size_t>(inst.a.size()) || !is_embedding(inst.a, inst.b1, inst.f1)) {
    throw InvalidEmbedding("f1 is not an embedding of A into B1");
  }
  if (inst.f2.size() != static_cast<std::size_t>(inst.a.size()) || !is_embedding(inst.a, inst.b2, inst.f2)) {
    throw InvalidEmbedding("f2 is not an embedding of A into B2");
  }
}

RelationalStructure with_markers(const RelationalStructure& s, int a) {
  std::vector<RelationSymbol> marks;
  for (int i = 0; i < a; ++i) marks.push_back({"@" + std::to_string(i), 1});
  RelationalStructure out = expand(s, Signature(std::move(marks)));
  const std::size_t base = s.signature().size();
  for (int i = 0; i < a; ++i) out.set(base + static_cast<std::size_t>(i), {i});
  return out;
}

// Members B with |A| < |B| <= n having A as the prefix, one per
// isomorphism class over A, ordered by size then marked canonical code.
std::vector<RelationalStructure> extensions_over(const Impl& c, const RelationalStructure& a, int n, bool prune) {
  std::vector<RelationalStructure> out;
  std::vector<RelationalStructure> level{a};
  for (int m = a.size() + 1; m <= n; ++m) {
    std::map<Code, RelationalStructure> next;
    for (const auto& s : level) {
      for (auto& t : extensions_impl(c, s)) {
        if (prune && !contains_impl(c, t)) continue;
        next.try_emplace(canonical_code(with_markers(t, a.size())), std::move(t));
      }
    }
    level.clear();
    for (auto& [code, t] : next) {
      if (contains_impl(c, t)) out.push_back(t);
      level.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

std::optional<Amalgam> find_amalgam(const ClassSpec& c, const AmalgamationInstance& inst, bool strong,
                                    int extra_points) {
  validate(inst);
  require_same_signature(inst.a, RelationalStructure(c.signature(), 0));
  auto [b1, sigma1] = normalise(inst.b1, inst.f1);
  auto [b2, sigma2] = normalise(inst.b2, inst.f2);
  AmalgamSearch search(impl_of(c), b1, b2, inst.a.size(), extra_points);
  auto found = search.run(strong);
  if (!found) return std::nullopt;
  Amalgam out;
  out.host = std::move(found->host);
  out.g1.resize(sigma1.size());
  for (std::size_t x = 0; x < sigma1.size(); ++x) out.g1[x] = found->g1[static_cast<std::size_t>(sigma1[x])];
  out.g2.resize(sigma2.size());
  for (std::size_t y = 0; y < sigma2.size(); ++y) out.g2[y] = found->g2[static_cast<std::size_t>(sigma2[y])];
  return out;
}

AmalgamationReport check_ap(const ClassSpec& c, int n, bool strong) {
  if (n > kAmalgamationLimit) throw SizeLimit("amalgamation check", kAmalgamationLimit);
  const Impl& impl = impl_of(c);
  const bool hered = c.hereditary();
  AmalgamationReport report;
  report.strong = strong;
  report.n = n;
  for (int a = 1; a < n; ++a) {
    for (const auto& base : catalog(impl, a, hered)) {
      const auto exts = extensions_over(impl, base, n, hered);
      std::vector<int> f(static_cast<std::size_t>(a));
      std::iota(f.begin(), f.end(), 0);
      for (std::size_t i = 0; i < exts.size(); ++i) {
        for (std::size_t j = i; j < exts.size(); ++j) {
          ++report.instances;
          const int extra = hered ? 0 : a;
          AmalgamSearch search(impl, exts[i], exts[j], a, extra);
          if (search.run(strong)) continue;
          report.verdict = hered ? Verdict::Fails : Verdict::Inconclusive;
          report.witness = AmalgamationInstance{base, exts[i], exts[j], f, f};
          report.host_bound = exts[i].size() + exts[j].size() - a + extra;
          return report;
        }
      }
    }
  }
  return report;
}

AmalgamationReport check_jep(const ClassSpec& c, int n) {
  if (n > kAmalgamationLimit) throw SizeLimit("joint embedding check", kAmalgamationLimit);
  const Impl& impl = impl_of(c);
  const bool hered = c.hereditary();
  std::vector<RelationalStructure> all;
  for (int size = 1; size <= n; ++size) {
    for (auto& m : catalog(impl, size, hered)) all.push_back(std::move(m));
  }
  AmalgamationReport report;
  report.n = n;
  const RelationalStructure empty(c.signature(), 0);
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i; j < all.size(); ++j) {
      ++report.instances;
      const int extra = hered ? 0 : n;
      AmalgamSearch search(impl, all[i], all[j], 0, extra);
      if (search.run(false)) continue;
      report.verdict = hered ? Verdict::Fails : Verdict::Inconclusive;
      report.witness = AmalgamationInstance{empty, all[i], all[j], {}, {}};
      report.host_bound = all[i].size() + all[j].size() + extra;
      return report;
    }
  }
  return report;
}

Amalgam free_amalgam(const AmalgamationInstance& inst) {
  validate(inst);
  const int n1 = inst.b1.size();
  const int n2 = inst.b2.size();
  Amalgam out;
  out.g1.resize(static_cast<std::size_t>(n1));
  std::iota(out.g1.begin(), out.g1.end(), 0);
  out.g2.assign(static_cast<std::size_t>(n2), -1);
  for (std::size_t i = 0; i < inst.f2.size(); ++i) out.g2[static_cast<std::size_t>(inst.f2[i])] = inst.f1[i];
  int next = n1;
  for (auto& g : out.g2) {
    if (g < 0) g = next++;
  }
  out.host = RelationalStructure(inst.b1.signature(), next);
  for (std::size_t r = 0; r < inst.b1.signature().size(); ++r) {
    for (const Tuple& t : inst.b1.tuples(r)) out.host.set(r, t);
    for (Tuple t : inst.b2.tuples(r)) {
      for (int& x : t) x = out.g2[static_cast<std::size_t>(x)];
      out.host.set(r, t);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Age

std::vector<AgeEntry> age(const RelationalStructure& s, int k) {
  if (k < 1 || k > 5) throw SizeLimit("age subset size", 5);
  const int n = s.size();
  const int top = std::min(k, n);
  double subsets = 0;
  for (int size = 1; size <= top; ++size) {
    double binom = 1;
    for (int i = 0; i < size; ++i) binom = binom * (n - i) / (i + 1);
    subsets += binom;
  }
  if (subsets > 1e7) throw SizeLimit("age subsets", 10000000);
  std::map<std::pair<int, Code>, AgeEntry> found;
  for (int size = 1; size <= top; ++size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      const RelationalStructure sub = induced_substructure(s, pick);
      auto [code, labelling] = canonical_form(sub);
      auto [it, fresh] = found.try_emplace({size, code});
      if (fresh) {
        it->second.code = code;
        it->second.representative = relabel(sub, labelling);
      }
      ++it->second.count;
      int i = size - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - size + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int q = i + 1; q < size; ++q) pick[static_cast<std::size_t>(q)] = pick[static_cast<std::size_t>(q - 1)] + 1;
    }
  }
  std::vector<AgeEntry> out;
  for (auto& [key, entry] : found) out.push_back(std::move(entry));
  return out;
}

// ---------------------------------------------------------------------------
// Limit approximation

namespace {

// Adjacency (graphs) or out-arcs (tournaments) as bitset rows.
class BitStructure {
 public:
  BitStructure(bool tournament, int clique_bound) : tournament_(tournament), k_(clique_bound) {}

  static BitStructure from(const Impl& c, const RelationalStructure& s) {
    BitStructure b = make(c);
    for (int v = 0; v < s.size(); ++v) {
      b.add_point();
      for (int u = 0; u < v; ++u) {
        if (s.holds(0, {v, u})) b.set_arc(v, u);
        else if (b.tournament_ || s.holds(0, {u, v})) b.set_arc(u, v);
      }
    }
    return b;
  }

  static BitStructure make(const Impl& c) {
    switch (c.kind) {
      case ClassKind::AllGraphs:
        return BitStructure(false, 0);
      case ClassKind::KkFreeGraphs:
        return BitStructure(false, c.parameter);
      case ClassKind::Tournaments:
        return BitStructure(true, 0);
      default:
        throw Error("limit approximation supports graphs, K_k-free graphs and tournaments");
    }
  }

  int size() const { return static_cast<int>(rows_.size()); }
  bool tournament() const { return tournament_; }

  void add_point() {
    rows_.emplace_back(words_, 0);
    in_.emplace_back(words_, 0);
    if (rows_.size() > 64 * words_) {
      ++words_;
      for (auto& r : rows_) r.push_back(0);
      for (auto& r : in_) r.push_back(0);
    }
  }

  bool has(int u, int v) const {
    return (rows_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v) / 64] >> (v % 64)) & 1U;
  }

  // Graph edge {u, v}, or tournament arc u -> v.
  void set_arc(int u, int v) {
    set_bit(u, v);
    if (!tournament_) set_bit(v, u);
  }

  // The bits of z over X.
  unsigned type_of(int z, const std::vector<int>& x) const {
    unsigned t = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (has(z, x[i])) t |= 1U << i;
    }
    return t;
  }

  // Whether a new point with type t over X stays in the class.
  bool allowed(const std::vector<int>& x, unsigned t) const {
    if (tournament_ || k_ == 0) return true;
    std::vector<int> chosen;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if ((t >> i) & 1U) chosen.push_back(x[i]);
    }
    return !clique_among(chosen, k_ - 1);
  }

  bool realized(const std::vector<int>& x, unsigned t) const {
    // Points z whose bit towards x[i] matches t, as a word-parallel AND over
    // the columns of X.
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t cand = w + 1 < words_ || size() % 64 == 0 ? ~std::uint64_t{0}
                                                               : (std::uint64_t{1} << (size() % 64)) - 1;
      for (std::size_t i = 0; i < x.size() && cand; ++i) {
        const std::uint64_t col = column(x[i])[w];
        cand &= ((t >> i) & 1U) ? col : ~col;
        if (static_cast<std::size_t>(x[i]) / 64 == w) cand &= ~(std::uint64_t{1} << (x[i] % 64));
      }
      if (cand) return true;
    }
    return false;
  }

  // Whether edge {z, u} can be added without creating K_k.
  bool edge_safe(int z, int u) const {
    if (k_ == 0) return true;
    std::vector<int> common;
    for (int w = 0; w < size(); ++w) {
      if (w != z && w != u && has(z, w) && has(u, w)) common.push_back(w);
    }
    return !clique_among(common, k_ - 2);
  }

  RelationalStructure to_structure() const {
    RelationalStructure s(tournament_ ? Signature{{"T", 2}} : graph_signature(), size());
    for (int u = 0; u < size(); ++u) {
      for (int v = 0; v < size(); ++v) {
        if (u != v && has(u, v)) s.set(0, {u, v});
      }
    }
    return s;
  }

 private:
  void set_bit(int u, int v) {
    rows_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
    in_[static_cast<std::size_t>(v)][static_cast<std::size_t>(u) / 64] |= std::uint64_t{1} << (u % 64);
  }

  // Points z with has(z, v).
  const std::vector<std::uint64_t>& column(int v) const { return in_[static_cast<std::size_t>(v)]; }

  bool clique_among(const std::vector<int>& pts, int size) const {
    if (size <= 0) return true;
    std::vector<int> chosen;
    std::function<bool(std::size_t)> rec = [&](std::size_t from) {
      if (static_cast<int>(chosen.size()) == size) return true;
      for (std::size_t i = from; i < pts.size(); ++i) {
        bool ok = true;
        for (int c : chosen) ok = ok && has(c, pts[i]);
        if (!ok) continue;
        chosen.push_back(pts[i]);
        if (rec(i + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    return rec(0);
  }

  bool tournament_;
  int k_;
  std::size_t words_ = 1;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::vector<std::uint64_t>> in_;
};

struct Demand {
  std::vector<int> x;
  unsigned type = 0;
};

// Calls f on every subset of {0..w-1} with 1..4 elements that contains w-1.
template <typename F>
void subsets_ending_at(int w, F&& f) {
  std::vector<int> x;
  std::function<void(int)> rec = [&](int from) {
    if (from == w - 1) {
      x.push_back(w - 1);
      f(x);
      x.pop_back();
      return;
    }
    if (x.size() < 3) {
      x.push_back(from);
      rec(from + 1);
      x.pop_back();
    }
    rec(from + 1);
  };
  if (w >= 1) rec(0);
}

bool window_complete(const BitStructure& b, int w) {
  bool ok = true;
  subsets_ending_at(w, [&](const std::vector<int>& x) {
    for (unsigned t = 0; ok && t < (1U << x.size()); ++t) {
      if (b.allowed(x, t) && !b.realized(x, t)) ok = false;
    }
  });
  return ok;
}

int closure_level(const BitStructure& b) {
  const int n = b.size();
  if (n == 0) return -1;
  for (int level = 1; level <= 3; ++level) {
    std::vector<int> x(static_cast<std::size_t>(level));
    std::iota(x.begin(), x.end(), 0);
    if (level > n) return level - 1;
    while (true) {
      for (unsigned t = 0; t < (1U << level); ++t) {
        if (b.allowed(x, t) && !b.realized(x, t)) return level - 1;
      }
      int i = level - 1;
      while (i >= 0 && x[static_cast<std::size_t>(i)] == n - level + i) --i;
      if (i < 0) break;
      ++x[static_cast<std::size_t>(i)];
      for (int q = i + 1; q < level; ++q) x[static_cast<std::size_t>(q)] = x[static_cast<std::size_t>(q - 1)] + 1;
    }
  }
  return 3;
}

}  // namespace

LimitApproximation limit_approximation(const ClassSpec& c, int stages, std::uint64_t seed) {
  if (stages < 0) throw Error("stage count must be non-negative");
  if (stages > 200) throw SizeLimit("limit approximation stages", 200);
  BitStructure b = BitStructure::make(impl_of(c));
  std::mt19937_64 rng(seed);
  std::vector<Demand> queue;
  std::size_t head = 0;
  int window = 0;
  for (int stage = 0; stage < stages; ++stage) {
    std::optional<Demand> demand;
    while (!demand) {
      while (head < queue.size() && !demand) {
        const Demand& d = queue[head++];
        if (!b.realized(d.x, d.type)) demand = d;
      }
      if (demand || window >= b.size()) break;
      ++window;
      const std::size_t first = queue.size();
      subsets_ending_at(window, [&](const std::vector<int>& x) {
        for (unsigned t = 0; t < (1U << x.size()); ++t) {
          if (b.allowed(x, t)) queue.push_back({x, t});
        }
      });
      for (std::size_t i = queue.size() - 1; i > first; --i) {
        const std::size_t j = first + rng() % (i - first + 1);
        std::swap(queue[i], queue[j]);
      }
    }
    const int z = b.size();
    b.add_point();
    std::vector<bool> fixed(static_cast<std::size_t>(z), false);
    if (demand) {
      for (std::size_t i = 0; i < demand->x.size(); ++i) {
        const int u = demand->x[i];
        fixed[static_cast<std::size_t>(u)] = true;
        const bool bit = (demand->type >> i) & 1U;
        if (bit) b.set_arc(z, u);
        else if (b.tournament()) b.set_arc(u, z);
      }
    }
    for (int u = 0; u < z; ++u) {
      if (fixed[static_cast<std::size_t>(u)]) continue;
      const bool coin = rng() & 1U;
      if (b.tournament()) {
        if (coin) b.set_arc(z, u);
        else b.set_arc(u, z);
      } else if (coin && b.edge_safe(z, u)) {
        b.set_arc(z, u);
      }
    }
  }
  LimitApproximation out;
  out.structure = b.to_structure();
  const int level = closure_level(b);
  out.guaranteed_level = std::min(4, level + 1);
  while (out.window < b.size() && window_complete(b, out.window + 1)) ++out.window;
  return out;
}

int extension_closure_level(const ClassSpec& c, const RelationalStructure& s) {
  require_same_signature(s, RelationalStructure(c.signature(), 0));
  return closure_level(BitStructure::from(impl_of(c), s));
}

}  // namespace homlab::fraisse
