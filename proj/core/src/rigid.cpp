#include "homlab/rigid.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <regex>

#include "homlab/errors.hpp"
#include "number_theory.hpp"

namespace homlab::rigid {

RootedBinaryTree::RootedBinaryTree() : nodes_{Node{-1, -1, -1, 0}} {}

RootedBinaryTree RootedBinaryTree::from_nodes(std::vector<Node> nodes, int root) {
  const int count = static_cast<int>(nodes.size());
  if (root < 0 || root >= count || nodes[static_cast<std::size_t>(root)].parent != -1) {
    throw Error("tree root is invalid");
  }
  int leaves = 0;
  for (int i = 0; i < count; ++i) {
    const Node& nd = nodes[static_cast<std::size_t>(i)];
    const bool leaf = nd.left < 0 && nd.right < 0;
    if (!leaf && (nd.left < 0 || nd.right < 0)) throw Error("internal node without two children");
    if (leaf) ++leaves;
    for (int c : {nd.left, nd.right}) {
      if (c >= count || (c >= 0 && nodes[static_cast<std::size_t>(c)].parent != i)) throw Error("inconsistent parent link");
    }
  }
  std::vector<char> label_seen(static_cast<std::size_t>(leaves), 0);
  for (const Node& nd : nodes) {
    if (nd.left >= 0) continue;
    if (nd.label < 0 || nd.label >= leaves || label_seen[static_cast<std::size_t>(nd.label)]) {
      throw Error("leaf labels must be exactly 0.." + std::to_string(leaves - 1));
    }
    label_seen[static_cast<std::size_t>(nd.label)] = 1;
  }
  if (count != 2 * leaves - 1) throw Error("tree is not connected");
  RootedBinaryTree t;
  t.nodes_ = std::move(nodes);
  t.root_ = root;
  t.leaves_ = leaves;
  return t;
}

RootedBinaryTree RootedBinaryTree::parse(std::string_view text) {
  std::vector<Node> nodes;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) -> ParseError { return ParseError(what, 1, pos + 1); };
  // Iterative descent would be overkill; depth is bounded by the leaf count.
  auto parse_node = [&](auto&& self) -> int {
    skip();
    if (pos >= text.size()) throw fail("unexpected end of tree");
    if (text[pos] == '(') {
      ++pos;
      const int left = self(self);
      skip();
      if (pos >= text.size() || text[pos] != ',') throw fail("expected ','");
      ++pos;
      const int right = self(self);
      skip();
      if (pos >= text.size() || text[pos] != ')') throw fail("expected ')'");
      ++pos;
      const int id = static_cast<int>(nodes.size());
      nodes.push_back(Node{left, right, -1, -1});
      nodes[static_cast<std::size_t>(left)].parent = id;
      nodes[static_cast<std::size_t>(right)].parent = id;
      return id;
    }
    if (!std::isdigit(static_cast<unsigned char>(text[pos]))) throw fail("expected a leaf label or '('");
    int label = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      label = label * 10 + (text[pos] - '0');
      if (label > 1000000) throw fail("leaf label too large");
      ++pos;
    }
    nodes.push_back(Node{-1, -1, -1, label});
    return static_cast<int>(nodes.size()) - 1;
  };
  const int root = parse_node(parse_node);
  skip();
  if (pos != text.size()) throw fail("trailing characters after tree");
  try {
    return from_nodes(std::move(nodes), root);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

int RootedBinaryTree::leaf_node(int label) const {
  for (int i = 0; i < node_count(); ++i) {
    if (is_leaf(i) && node(i).label == label) return i;
  }
  throw InvalidVertex("no leaf labelled " + std::to_string(label));
}

int RootedBinaryTree::depth(int v) const {
  int d = 0;
  while (node(v).parent >= 0) {
    v = node(v).parent;
    ++d;
  }
  return d;
}

int RootedBinaryTree::meet(int a, int b) const {
  int da = depth(a);
  int db = depth(b);
  while (da > db) {
    a = node(a).parent;
    --da;
  }
  while (db > da) {
    b = node(b).parent;
    --db;
  }
  while (a != b) {
    a = node(a).parent;
    b = node(b).parent;
  }
  return a;
}

RootedBinaryTree RootedBinaryTree::with_leaf_above(int v) const {
  if (v < 0 || v >= node_count()) throw InvalidVertex("no tree node " + std::to_string(v));
  RootedBinaryTree t = *this;
  const int leaf = t.node_count();
  const int joint = leaf + 1;
  const int parent = node(v).parent;
  t.nodes_.push_back(Node{-1, -1, joint, leaves_});
  t.nodes_.push_back(Node{v, leaf, parent, -1});
  t.nodes_[static_cast<std::size_t>(v)].parent = joint;
  if (parent < 0) {
    t.root_ = joint;
  } else {
    auto& p = t.nodes_[static_cast<std::size_t>(parent)];
    (p.left == v ? p.left : p.right) = joint;
  }
  ++t.leaves_;
  return t;
}

int RootedBinaryTree::min_leaf(int v) const {
  if (is_leaf(v)) return node(v).label;
  return std::min(min_leaf(node(v).left), min_leaf(node(v).right));
}

std::string RootedBinaryTree::render(int v, bool canonical) const {
  if (is_leaf(v)) return std::to_string(node(v).label);
  int a = node(v).left;
  int b = node(v).right;
  if (canonical && min_leaf(b) < min_leaf(a)) std::swap(a, b);
  return "(" + render(a, canonical) + "," + render(b, canonical) + ")";
}

std::string RootedBinaryTree::to_string() const { return render(root_, false); }
std::string RootedBinaryTree::canonical_string() const { return render(root_, true); }

RootedBinaryTree join(const RootedBinaryTree& left, const RootedBinaryTree& right) {
  std::vector<RootedBinaryTree::Node> nodes;
  for (int i = 0; i < left.node_count(); ++i) nodes.push_back(left.node(i));
  const int offset = left.node_count();
  for (int i = 0; i < right.node_count(); ++i) {
    auto nd = right.node(i);
    if (nd.left >= 0) nd.left += offset;
    if (nd.right >= 0) nd.right += offset;
    if (nd.parent >= 0) nd.parent += offset;
    if (nd.label >= 0) nd.label += left.leaf_count();
    nodes.push_back(nd);
  }
  const int root = static_cast<int>(nodes.size());
  nodes[static_cast<std::size_t>(left.root())].parent = root;
  nodes[static_cast<std::size_t>(right.root() + offset)].parent = root;
  nodes.push_back({left.root(), right.root() + offset, -1, -1});
  return RootedBinaryTree::from_nodes(std::move(nodes), root);
}

std::vector<RootedBinaryTree> all_trees(int leaves) {
  if (leaves < 1) throw SizeLimit("trees need at least one leaf", 1);
  if (leaves > 9) throw SizeLimit("tree enumeration", 9);
  std::vector<RootedBinaryTree> level{RootedBinaryTree()};
  for (int l = 2; l <= leaves; ++l) {
    std::vector<RootedBinaryTree> next;
    for (const auto& t : level) {
      for (int v = 0; v < t.node_count(); ++v) next.push_back(t.with_leaf_above(v));
    }
    level = std::move(next);
  }
  return level;
}

RootedBinaryTree caterpillar(int leaves) {
  if (leaves < 1) throw SizeLimit("trees need at least one leaf", 1);
  std::string s = std::to_string(leaves - 1);
  for (int i = leaves - 2; i >= 0; --i) s = "(" + std::to_string(i) + "," + s + ")";
  return RootedBinaryTree::parse(s);
}

RootedBinaryTree balanced_tree(int levels) {
  if (levels < 0 || levels > 4) throw SizeLimit("balanced tree levels", 4);
  std::vector<std::string> parts;
  for (int i = 0; i < (1 << levels); ++i) parts.push_back(std::to_string(i));
  while (parts.size() > 1) {
    std::vector<std::string> next;
    for (std::size_t i = 0; i < parts.size(); i += 2) next.push_back("(" + parts[i] + "," + parts[i + 1] + ")");
    parts = std::move(next);
  }
  return RootedBinaryTree::parse(parts[0]);
}

Signature c_relation_signature() { return Signature{{"C", 3}}; }

RelationalStructure c_relation_of_tree(const RootedBinaryTree& t) {
  const int l = t.leaf_count();
  RelationalStructure s(c_relation_signature(), l);
  std::vector<int> leaf(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) leaf[static_cast<std::size_t>(i)] = t.leaf_node(i);
  std::vector<int> meet(static_cast<std::size_t>(l * l));
  std::vector<int> depth(static_cast<std::size_t>(t.node_count()));
  for (int v = 0; v < t.node_count(); ++v) depth[static_cast<std::size_t>(v)] = t.depth(v);
  for (int x = 0; x < l; ++x) {
    for (int y = 0; y < l; ++y) meet[static_cast<std::size_t>(x * l + y)] = t.meet(leaf[static_cast<std::size_t>(x)], leaf[static_cast<std::size_t>(y)]);
  }
  auto m = [&](int x, int y) { return meet[static_cast<std::size_t>(x * l + y)]; };
  for (int x = 0; x < l; ++x) {
    for (int y = 0; y < l; ++y) {
      for (int z = 0; z < l; ++z) {
        if (x == y || y == z || x == z) continue;
        if (m(x, z) == m(y, z) && depth[static_cast<std::size_t>(m(x, y))] > depth[static_cast<std::size_t>(m(x, z))]) s.set(0, {x, y, z});
      }
    }
  }
  return s;
}

namespace {

std::size_t c_index(const RelationalStructure& gamma) {
  const auto& sig = gamma.signature();
  if (sig.size() != 1 || sig[0].arity != 3) throw SignatureMismatch("a C-relation has one ternary relation");
  return 0;
}

int build_block(const RelationalStructure& gamma, std::size_t rel, const std::vector<int>& block,
                std::vector<RootedBinaryTree::Node>& nodes) {
  if (block.size() == 1) {
    nodes.push_back({-1, -1, -1, block[0]});
    return static_cast<int>(nodes.size()) - 1;
  }
  const int a = block[0];  // blocks are kept sorted
  std::vector<int> with_a{a};
  std::vector<int> rest;
  for (std::size_t i = 1; i < block.size(); ++i) {
    const int b = block[i];
    bool together = false;
    for (int c : block) {
      if (c != a && c != b && gamma.holds(rel, {a, b, c})) {
        together = true;
        break;
      }
    }
    (together ? with_a : rest).push_back(b);
  }
  if (rest.empty()) {
    throw NotACRelation("no root split for leaves {" + [&] {
      std::string s;
      for (int v : block) s += (s.empty() ? "" : ",") + std::to_string(v);
      return s;
    }() + "}");
  }
  const int left = build_block(gamma, rel, with_a, nodes);
  const int right = build_block(gamma, rel, rest, nodes);
  nodes.push_back({left, right, -1, -1});
  const int id = static_cast<int>(nodes.size()) - 1;
  nodes[static_cast<std::size_t>(left)].parent = id;
  nodes[static_cast<std::size_t>(right)].parent = id;
  return id;
}

}  // namespace

RootedBinaryTree tree_of_c_relation(const RelationalStructure& gamma) {
  const std::size_t rel = c_index(gamma);
  if (gamma.size() < 1) throw NotACRelation("a C-relation needs at least one leaf");
  std::vector<int> all(static_cast<std::size_t>(gamma.size()));
  std::iota(all.begin(), all.end(), 0);
  std::vector<RootedBinaryTree::Node> nodes;
  const int root = build_block(gamma, rel, all, nodes);
  RootedBinaryTree t = RootedBinaryTree::from_nodes(std::move(nodes), root);
  const RelationalStructure back = c_relation_of_tree(t);
  if (!std::ranges::equal(back.table(0), gamma.table(rel))) {
    // Report the first triple on which the relation and the reconstruction differ.
    for (int x = 0; x < gamma.size(); ++x) {
      for (int y = 0; y < gamma.size(); ++y) {
        for (int z = 0; z < gamma.size(); ++z) {
          if (back.holds(0, {x, y, z}) != gamma.holds(rel, {x, y, z})) {
            throw NotACRelation("triple (" + std::to_string(x) + "," + std::to_string(y) + ";" + std::to_string(z) +
                                ") contradicts every binary tree");
          }
        }
      }
    }
  }
  return t;
}

bool is_c_relation(const RelationalStructure& gamma) {
  try {
    tree_of_c_relation(gamma);
    return true;
  } catch (const NotACRelation&) {
    return false;
  }
}

RelationalStructure parse_tournament(std::string_view text) {
  struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
  };
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(start, end - start);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::string token;
    for (char ch : raw) {
      if (std::isspace(static_cast<unsigned char>(ch))) {
        if (!token.empty()) line.tokens.push_back(std::move(token));
        token.clear();
      } else {
        token += ch;
      }
    }
    if (!token.empty()) line.tokens.push_back(std::move(token));
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    start = end + 1;
  }
  if (lines.empty()) throw ParseError("empty tournament description", 1, 1);
  auto to_int = [](const std::string& tok, std::size_t line) {
    int v = 0;
    for (char ch : tok) {
      if (!std::isdigit(static_cast<unsigned char>(ch)) || v > 100000) {
        throw ParseError("expected a non-negative integer, got '" + tok + "'", line, 1);
      }
      v = v * 10 + (ch - '0');
    }
    return v;
  };
  const auto& first = lines.front().tokens;
  const bool matrix = first.size() == 1 && first[0].size() == lines.size() &&
                      first[0].find_first_not_of("01") == std::string::npos && lines.size() > 1;
  RelationalStructure t;
  if (matrix) {
    const int n = static_cast<int>(lines.size());
    t = RelationalStructure(Signature{{"T", 2}}, n);
    for (int u = 0; u < n; ++u) {
      const Line& line = lines[static_cast<std::size_t>(u)];
      if (line.tokens.size() != 1 || line.tokens[0].size() != static_cast<std::size_t>(n) ||
          line.tokens[0].find_first_not_of("01") != std::string::npos) {
        throw ParseError("matrix rows must be " + std::to_string(n) + " binary digits", line.number, 1);
      }
      for (int v = 0; v < n; ++v) {
        if (line.tokens[0][static_cast<std::size_t>(v)] == '1') t.set(0, {u, v});
      }
    }
  } else {
    if (first.size() != 1) throw ParseError("arc list must start with the vertex count", lines.front().number, 1);
    const int n = to_int(first[0], lines.front().number);
    t = RelationalStructure(Signature{{"T", 2}}, n);
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const Line& line = lines[i];
      if (line.tokens.size() != 2) throw ParseError("expected an arc 'u v'", line.number, 1);
      const int u = to_int(line.tokens[0], line.number);
      const int v = to_int(line.tokens[1], line.number);
      if (u >= n || v >= n) throw ParseError("arc endpoint out of range", line.number, 1);
      if (u == v) throw ParseError("loops are not allowed in a tournament", line.number, 1);
      t.set(0, {u, v});
    }
  }
  if (!is_tournament(t)) throw ParseError("arcs do not form a tournament", lines.back().number, 1);
  return t;
}

bool is_tournament(const RelationalStructure& t) {
  if (t.signature().size() != 1 || t.signature()[0].arity != 2) return false;
  for (int x = 0; x < t.size(); ++x) {
    if (t.holds(0, {x, x})) return false;
    for (int y = x + 1; y < t.size(); ++y) {
      if (t.holds(0, {x, y}) == t.holds(0, {y, x})) return false;
    }
  }
  return true;
}

BigInt tournament_aut_order(const RelationalStructure& t) {
  if (t.size() > 10) throw SizeLimit("tournament automorphism order", 10);
  if (!is_tournament(t)) throw SignatureMismatch("not a tournament");
  return automorphisms(t).order;
}

BigInt c_aut_order(const RelationalStructure& gamma) {
  if (gamma.size() > 10) throw SizeLimit("C-relation automorphism order", 10);
  c_index(gamma);
  return automorphisms(gamma).order;
}

RelationalStructure quadratic_residue_tournament(std::span<const std::uint64_t> primes) {
  RelationalStructure t(Signature{{"T", 2}}, static_cast<int>(primes.size()));
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!detail::is_prime_u64(primes[i]) || primes[i] % 4 != 3) {
      throw InvalidVertex(std::to_string(primes[i]) + " is not a prime congruent to 3 mod 4");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (primes[i] == primes[j]) throw InvalidVertex("repeated prime " + std::to_string(primes[i]));
    }
  }
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = 0; j < primes.size(); ++j) {
      if (i != j && detail::is_quadratic_residue(primes[j], primes[i])) t.set(0, {static_cast<int>(i), static_cast<int>(j)});
    }
  }
  return t;
}

Signature superposition_signature() { return Signature{{"T", 2}, {"C", 3}}; }

RelationalStructure superpose(const RelationalStructure& tournament, const RelationalStructure& gamma) {
  if (tournament.size() != gamma.size()) {
    throw DomainMismatch("tournament has " + std::to_string(tournament.size()) + " points, C-relation has " +
                         std::to_string(gamma.size()));
  }
  if (!is_tournament(tournament)) throw SignatureMismatch("first argument is not a tournament");
  c_index(gamma);
  RelationalStructure s(superposition_signature(), tournament.size());
  for (const auto& t : tournament.tuples(0)) s.set(0, t);
  for (const auto& t : gamma.tuples(0)) s.set(1, t);
  return s;
}

RamseyFailureReport ramsey_failure_colouring(const RelationalStructure& sup, std::span<const int> order) {
  const int n = sup.size();
  const std::size_t tau = sup.signature().index_of("T");
  if (static_cast<int>(order.size()) != n) throw InvalidVertex("order must list every point once");
  std::vector<int> rank(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int v = order[i];
    if (v < 0 || v >= n || rank[static_cast<std::size_t>(v)] >= 0) throw InvalidVertex("order must list every point once");
    rank[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  RamseyFailureReport report;
  for (const auto& arc : sup.tuples(tau)) {
    report.colouring.push_back({arc[0], arc[1], rank[static_cast<std::size_t>(arc[0])] < rank[static_cast<std::size_t>(arc[1])]});
  }
  auto red = [&](int x, int y) { return rank[static_cast<std::size_t>(x)] < rank[static_cast<std::size_t>(y)]; };
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        const bool forward = sup.holds(tau, {a, b}) && sup.holds(tau, {b, c}) && sup.holds(tau, {c, a});
        const bool backward = sup.holds(tau, {b, a}) && sup.holds(tau, {c, b}) && sup.holds(tau, {a, c});
        if (!forward && !backward) continue;
        CyclicTriple triple{{a, b, c}, 0, 0};
        const std::pair<int, int> cycle[3] = {forward ? std::pair<int, int>{a, b} : std::pair<int, int>{b, a},
                                              forward ? std::pair<int, int>{b, c} : std::pair<int, int>{c, b},
                                              forward ? std::pair<int, int>{c, a} : std::pair<int, int>{a, c}};
        for (auto [x, y] : cycle) (red(x, y) ? triple.red : triple.blue) += 1;
        if (triple.red == 0 || triple.blue == 0) report.certified = false;
        report.cyclic_triples.push_back(std::move(triple));
      }
    }
  }
  return report;
}

namespace {

void check_permutation(std::span<const int> p, const char* what) {
  std::vector<char> seen(p.size() + 1, 0);
  for (int v : p) {
    if (v < 1 || v > static_cast<int>(p.size()) || seen[static_cast<std::size_t>(v)]) {
      throw InvalidVertex(std::string(what) + " is not a permutation of 1..n");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

}  // namespace

PatternMatch pattern_contains(std::span<const int> p, std::span<const int> q) {
  constexpr std::size_t kLimit = 12;
  if (q.size() > kLimit) throw SizeLimit("pattern containment text length", kLimit);
  check_permutation(p, "pattern");
  check_permutation(q, "text");
  PatternMatch match;
  if (p.size() > q.size()) return match;
  std::vector<int> pos;
  auto dfs = [&](auto&& self, int start) -> bool {
    const std::size_t k = pos.size();
    if (k == p.size()) return true;
    for (int i = start; i < static_cast<int>(q.size()); ++i) {
      if (static_cast<int>(q.size()) - i < static_cast<int>(p.size() - k)) break;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) {
        ok = (q[static_cast<std::size_t>(pos[j])] < q[static_cast<std::size_t>(i)]) == (p[j] < p[k]);
      }
      if (!ok) continue;
      pos.push_back(i);
      if (self(self, i + 1)) return true;
      pos.pop_back();
    }
    return false;
  };
  if (dfs(dfs, 0)) {
    match.found = true;
    match.positions = pos;
  }
  return match;
}

Signature multiorder_signature(int m) {
  if (m < 1) throw SizeLimit("multiorders need at least one order", 1);
  std::vector<RelationSymbol> symbols;
  for (int i = 1; i <= m; ++i) symbols.push_back({"<" + std::to_string(i), 2});
  return Signature(std::move(symbols));
}

RelationalStructure two_order_of_permutation(std::span<const int> perm) {
  check_permutation(perm, "argument");
  const int n = static_cast<int>(perm.size());
  RelationalStructure s(multiorder_signature(2), n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i < j) s.set(0, {i, j});
      if (perm[static_cast<std::size_t>(i)] < perm[static_cast<std::size_t>(j)]) s.set(1, {i, j});
    }
  }
  return s;
}

std::vector<int> permutation_of_two_order(const RelationalStructure& s) {
  if (!(s.signature() == multiorder_signature(2))) throw SignatureMismatch("expected a 2-order");
  const int n = s.size();
  std::vector<int> rank1(static_cast<std::size_t>(n), 0);
  std::vector<int> rank2(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (s.holds(0, {j, i})) ++rank1[static_cast<std::size_t>(i)];
      if (s.holds(1, {j, i})) ++rank2[static_cast<std::size_t>(i)];
    }
  }
  std::vector<int> perm(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(rank1[static_cast<std::size_t>(i)])] = rank2[static_cast<std::size_t>(i)] + 1;
  std::vector<int> check = perm;
  std::sort(check.begin(), check.end());
  for (int i = 0; i < n; ++i) {
    if (check[static_cast<std::size_t>(i)] != i + 1) throw Error("relations are not total orders");
  }
  if (!(two_order_of_permutation(perm) == s)) throw Error("relations are not total orders");
  return perm;
}

namespace {

// Moves square factors of d into b, leaving d squarefree (or folding it
// into a when it becomes 1).
Surd normalise(Surd s) {
  if (s.b == 0 || s.d == 0) return Surd{s.a, 0, 0};
  if (s.d < 0) throw ParseError("negative radicand", 1, 1);
  for (long long f = 2; f * f <= s.d; ++f) {
    while (s.d % (f * f) == 0) {
      s.d /= f * f;
      s.b *= f;
    }
  }
  if (s.d == 1) return Surd{s.a + s.b, 0, 0};
  return s;
}

}  // namespace

Surd parse_surd(std::string_view text) {
  static const std::regex pattern(R"(^\s*([+-]?\d+)?\s*(?:([+-])?\s*(\d+)?\s*sqrt\s*\(?\s*(\d+)\s*\)?)?\s*$)");
  const std::string s(text);
  std::smatch m;
  if (s.empty() || !std::regex_match(s, m, pattern) || (!m[1].matched && !m[4].matched)) {
    throw ParseError("expected a + b*sqrt(d), e.g. 1+2sqrt3", 1, 1);
  }
  Surd out;
  if (m[4].matched) {
    long long coef = m[3].matched ? std::stoll(m[3].str()) : 1;
    if (m[2].matched && m[2].str() == "-") coef = -coef;
    if (m[1].matched && !m[2].matched) {
      // "2sqrt3": the leading integer is the coefficient.
      if (m[3].matched) throw ParseError("ambiguous surd", 1, 1);
      coef = std::stoll(m[1].str());
    } else if (m[1].matched) {
      out.a = std::stoll(m[1].str());
    }
    out.b = coef;
    out.d = std::stoll(m[4].str());
  } else {
    out.a = std::stoll(m[1].str());
  }
  return normalise(out);
}

bool rationally_independent(std::span<const Surd> direction) {
  std::vector<long long> radicands;
  std::vector<Surd> coords;
  for (const Surd& raw : direction) {
    const Surd s = normalise(raw);
    coords.push_back(s);
    if (s.b != 0 && std::find(radicands.begin(), radicands.end(), s.d) == radicands.end()) radicands.push_back(s.d);
  }
  // Over Q, 1 and the square roots of distinct squarefree integers are
  // linearly independent, so each coordinate is a vector in that basis.
  const std::size_t cols = radicands.size() + 1;
  std::vector<std::vector<BigInt>> rows;
  for (const Surd& s : coords) {
    std::vector<BigInt> r(cols, 0);
    r[0] = s.a;
    if (s.b != 0) r[1 + static_cast<std::size_t>(std::find(radicands.begin(), radicands.end(), s.d) - radicands.begin())] = s.b;
    rows.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const BigInt f = rows[r][c];
      if (f == 0) continue;
      const BigInt g = rows[rank][c];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] = rows[r][k] * g - rows[rank][k] * f;
    }
    ++rank;
  }
  return rank == rows.size();
}

namespace {

// Sign of A + sum_j B_j sqrt(d_j).
int surd_sign(long long a, const std::vector<std::pair<long long, long long>>& terms) {
  std::vector<std::pair<long long, long long>> nz;
  for (auto t : terms) {
    if (t.first != 0) nz.push_back(t);
  }
  if (nz.empty()) return (a > 0) - (a < 0);
  if (nz.size() == 1) {
    const long long b = nz[0].first;
    const long long d = nz[0].second;
    const int sa = (a > 0) - (a < 0);
    const int sb = (b > 0) - (b < 0);
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with b^2 d exactly.
    const detail::i128 lhs = static_cast<detail::i128>(a) * a;
    const detail::i128 rhs = static_cast<detail::i128>(b) * b * d;
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
  }
  long double value = static_cast<long double>(a);
  long double scale = std::fabs(static_cast<long double>(a));
  for (auto [b, d] : nz) {
    const long double term = static_cast<long double>(b) * std::sqrt(static_cast<long double>(d));
    value += term;
    scale += std::fabs(term);
  }
  if (std::fabs(value) <= scale * 1e-15L) throw DegenerateDirection("comparison within floating-point separation bound");
  return value > 0 ? 1 : -1;
}

}  // namespace

MultiOrder kronecker_multiorder(const std::vector<std::vector<Surd>>& directions, int radius) {
  constexpr int kMaxRadius = 20;
  constexpr std::size_t kMaxPoints = 200000;
  if (radius < 0 || radius > kMaxRadius) throw SizeLimit("window radius", kMaxRadius);
  if (directions.empty()) throw Error("at least one direction is required");
  const std::size_t n = directions[0].size();
  for (const auto& d : directions) {
    if (d.size() != n) throw Error("directions must share one dimension");
  }
  if (directions.size() >= n) throw Error("the number of orders must be less than the dimension");
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= static_cast<std::size_t>(2 * radius + 1);
    if (total > kMaxPoints) throw SizeLimit("window point count", kMaxPoints);
  }

  MultiOrder out;
  out.dimension = static_cast<int>(n);
  std::vector<int> p(n, -radius);
  for (std::size_t k = 0; k < total; ++k) {
    out.points.push_back(p);
    for (std::size_t i = n; i-- > 0;) {
      if (++p[i] <= radius) break;
      p[i] = -radius;
    }
  }

  for (const auto& raw : directions) {
    std::vector<Surd> dir;
    for (const Surd& s : raw) dir.push_back(normalise(s));
    if (!rationally_independent(dir)) throw DegenerateDirection("direction coordinates are rationally dependent");
    std::vector<long long> radicands;
    for (const Surd& s : dir) {
      if (s.b != 0 && std::find(radicands.begin(), radicands.end(), s.d) == radicands.end()) radicands.push_back(s.d);
    }
    auto compare = [&](std::size_t x, std::size_t y) {
      long long a = 0;
      std::vector<std::pair<long long, long long>> terms;
      for (long long d : radicands) terms.emplace_back(0, d);
      for (std::size_t i = 0; i < n; ++i) {
        const long long diff = out.points[x][i] - out.points[y][i];
        a += diff * dir[i].a;
        if (dir[i].b != 0) {
          const auto j = static_cast<std::size_t>(std::find(radicands.begin(), radicands.end(), dir[i].d) - radicands.begin());
          terms[j].first += diff * dir[i].b;
        }
      }
      return surd_sign(a, terms);
    };
    std::vector<std::size_t> idx(out.points.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
      if (x == y) return false;
      const int s = compare(x, y);
      if (s == 0) throw DegenerateDirection("two window points tie");
      return s < 0;
    });
    std::vector<int> rank(out.points.size());
    for (std::size_t r = 0; r < idx.size(); ++r) rank[idx[r]] = static_cast<int>(r);
    out.ranks.push_back(std::move(rank));
  }
  return out;
}

RelationalStructure MultiOrder::to_structure() const {
  const int count = static_cast<int>(points.size());
  RelationalStructure s(multiorder_signature(static_cast<int>(ranks.size())), count);
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    for (int u = 0; u < count; ++u) {
      for (int v = 0; v < count; ++v) {
        if (ranks[i][static_cast<std::size_t>(u)] < ranks[i][static_cast<std::size_t>(v)]) s.set(i, {u, v});
      }
    }
  }
  return s;
}

}  // namespace homlab::rigid
