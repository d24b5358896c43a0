#include "engine.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "homlab/errors.hpp"
#include "homlab/isomorphism.hpp"

namespace homlab::detail {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Equality pattern of a tuple: position i records the first position holding
// the same element.
std::uint64_t equality_pattern(std::span<const int> t) {
  std::uint64_t pattern = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::size_t first = i;
    for (std::size_t j = 0; j < i; ++j) {
      if (t[j] == t[i]) {
        first = j;
        break;
      }
    }
    pattern = pattern * 16 + first;
  }
  return pattern;
}

}  // namespace

Compiled compile(const RelationalStructure& s) {
  if (s.size() > kEngineLimit) throw SizeLimit("structure too large for the search engine", kEngineLimit);
  Compiled c;
  c.source = &s;
  c.signature = &s.signature();
  c.n = s.size();
  const auto n = static_cast<std::size_t>(c.n);
  const auto& sig = s.signature();
  for (std::size_t r = 0; r < sig.size(); ++r) {
    if (sig[r].arity == 2) c.binary_relations.push_back(r);
    if (sig[r].arity == 1) c.unary_relations.push_back(r);
  }
  c.binary_count = static_cast<int>(c.binary_relations.size());
  c.out.assign(c.binary_relations.size() * n, 0);
  c.in.assign(c.binary_relations.size() * n, 0);
  c.loops.assign(c.binary_relations.size(), 0);
  c.unary.assign(c.unary_relations.size(), 0);
  c.vertex_key.assign(n, 0);

  for (std::size_t b = 0; b < c.binary_relations.size(); ++b) {
    for (const auto& t : s.tuples(c.binary_relations[b])) {
      const auto u = static_cast<std::size_t>(t[0]);
      const auto v = static_cast<std::size_t>(t[1]);
      if (u == v) {
        c.loops[b] |= std::uint64_t{1} << u;
      } else {
        c.out[b * n + u] |= std::uint64_t{1} << v;
        c.in[b * n + v] |= std::uint64_t{1} << u;
      }
    }
  }
  for (std::size_t u = 0; u < c.unary_relations.size(); ++u) {
    for (const auto& t : s.tuples(c.unary_relations[u])) c.unary[u] |= std::uint64_t{1} << t[0];
  }
  for (std::size_t r = 0; r < sig.size(); ++r) {
    if (sig[r].arity <= 2) continue;
    Compiled::High h;
    h.relation = r;
    h.arity = sig[r].arity;
    for (const auto& t : s.tuples(r)) h.flat.insert(h.flat.end(), t.begin(), t.end());
    c.high.push_back(std::move(h));
  }

  // Vertex keys: unary membership, loops, and for each higher relation the
  // multiset of (position, equality pattern) over tuples through the vertex.
  for (std::size_t v = 0; v < n; ++v) {
    std::uint64_t key = 0x12345;
    for (std::size_t u = 0; u < c.unary.size(); ++u) key = mix64(key * 3 + ((c.unary[u] >> v) & 1U));
    for (std::size_t b = 0; b < c.loops.size(); ++b) key = mix64(key * 3 + ((c.loops[b] >> v) & 1U));
    c.vertex_key[v] = key;
  }
  for (std::size_t hi = 0; hi < c.high.size(); ++hi) {
    const auto& h = c.high[hi];
    const auto a = static_cast<std::size_t>(h.arity);
    for (std::size_t off = 0; off < h.flat.size(); off += a) {
      std::span<const int> t(h.flat.data() + off, a);
      const std::uint64_t pat = equality_pattern(t);
      for (std::size_t p = 0; p < a; ++p) {
        c.vertex_key[static_cast<std::size_t>(t[p])] += mix64((hi + 1) * 0x9e3779b97f4a7c15ULL ^ (pat << 8) ^ (p + 1));
      }
    }
  }
  return c;
}

Compiled compile(const FiniteGraph& g) {
  if (g.order() > kEngineLimit) throw SizeLimit("graph too large for the search engine", kEngineLimit);
  static const Signature kGraphSignature = graph_signature();
  Compiled c;
  c.signature = &kGraphSignature;
  c.n = g.order();
  const auto n = static_cast<std::size_t>(c.n);
  c.binary_relations = {0};
  c.binary_count = 1;
  c.out.assign(n, 0);
  c.loops.assign(1, 0);
  for (int v = 0; v < c.n; ++v) {
    const auto row = g.row(v);
    c.out[static_cast<std::size_t>(v)] = row.empty() ? 0 : row[0];
  }
  c.in = c.out;
  c.vertex_key.assign(n, 0x12345);
  for (auto& k : c.vertex_key) k = mix64(k * 3);
  return c;
}

void Refiner::signatures(const Compiled& c, const Colouring& col, int cells, std::vector<std::uint64_t>& sig,
                         int width) {
  const auto n = static_cast<std::size_t>(c.n);
  masks_.assign(static_cast<std::size_t>(cells), 0);
  for (std::size_t v = 0; v < n; ++v) masks_[static_cast<std::size_t>(col[v])] |= std::uint64_t{1} << v;

  if (!c.high.empty()) {
    high_hash_.assign(n, 0);
    for (std::size_t hi = 0; hi < c.high.size(); ++hi) {
      const auto& h = c.high[hi];
      const auto a = static_cast<std::size_t>(h.arity);
      for (std::size_t off = 0; off < h.flat.size(); off += a) {
        std::uint64_t key = (hi + 1) * 0x9e3779b97f4a7c15ULL;
        for (std::size_t p = 0; p < a; ++p) key = mix64(key + static_cast<std::uint64_t>(col[static_cast<std::size_t>(h.flat[off + p])]) + 1);
        key ^= equality_pattern(std::span<const int>(h.flat.data() + off, a));
        for (std::size_t p = 0; p < a; ++p) {
          high_hash_[static_cast<std::size_t>(h.flat[off + p])] += mix64(key + (p + 1) * 0x632be59bd9b4e019ULL);
        }
      }
    }
  }

  const auto w = static_cast<std::size_t>(width);
  sig.resize(n * w);
  for (std::size_t v = 0; v < n; ++v) {
    std::uint64_t* row = sig.data() + v * w;
    std::size_t k = 0;
    row[k++] = static_cast<std::uint64_t>(col[v]);
    for (int b = 0; b < c.binary_count; ++b) {
      const std::uint64_t o = c.out[static_cast<std::size_t>(b) * n + v];
      const std::uint64_t i = c.in[static_cast<std::size_t>(b) * n + v];
      for (int cell = 0; cell < cells; ++cell) {
        const std::uint64_t m = masks_[static_cast<std::size_t>(cell)];
        row[k++] = (static_cast<std::uint64_t>(std::popcount(o & m)) << 8) | static_cast<std::uint64_t>(std::popcount(i & m));
      }
    }
    if (!c.high.empty()) row[k++] = high_hash_[v];
  }
}

bool Refiner::rank(int n_a, int n_b, int width, Colouring& ca, Colouring* cb, int& cells) {
  const auto w = static_cast<std::size_t>(width);
  const int total = n_a + n_b;
  order_.resize(static_cast<std::size_t>(total));
  std::iota(order_.begin(), order_.end(), 0);
  const std::uint64_t* base = sig_.data();
  auto row = [&](int i) { return base + static_cast<std::size_t>(i) * w; };
  std::sort(order_.begin(), order_.end(), [&](int x, int y) {
    const auto* rx = row(x);
    const auto* ry = row(y);
    for (std::size_t k = 0; k < w; ++k) {
      if (rx[k] != ry[k]) return rx[k] < ry[k];
    }
    return x < y;
  });
  int colour = -1;
  std::vector<int> count_a;
  std::vector<int> count_b;
  for (int idx = 0; idx < total; ++idx) {
    const int i = order_[static_cast<std::size_t>(idx)];
    if (idx == 0 || !std::equal(row(i), row(i) + w, row(order_[static_cast<std::size_t>(idx - 1)]))) {
      ++colour;
      count_a.push_back(0);
      count_b.push_back(0);
    }
    if (i < n_a) {
      ca[static_cast<std::size_t>(i)] = colour;
      ++count_a[static_cast<std::size_t>(colour)];
    } else {
      (*cb)[static_cast<std::size_t>(i - n_a)] = colour;
      ++count_b[static_cast<std::size_t>(colour)];
    }
  }
  cells = colour + 1;
  if (cb != nullptr && count_a != count_b) return false;
  return true;
}

Colouring Refiner::initial(const Compiled& c, int& cells) {
  Colouring col(static_cast<std::size_t>(c.n), 0);
  sig_.assign(c.vertex_key.begin(), c.vertex_key.end());
  rank(c.n, 0, 1, col, nullptr, cells);
  return col;
}

bool Refiner::initial_joint(const Compiled& a, Colouring& ca, const Compiled& b, Colouring& cb, int& cells) {
  if (a.n != b.n) return false;
  ca.assign(static_cast<std::size_t>(a.n), 0);
  cb.assign(static_cast<std::size_t>(b.n), 0);
  sig_.assign(a.vertex_key.begin(), a.vertex_key.end());
  sig_.insert(sig_.end(), b.vertex_key.begin(), b.vertex_key.end());
  return rank(a.n, b.n, 1, ca, &cb, cells);
}

bool Refiner::refine(const Compiled& a, Colouring& ca, const Compiled* b, Colouring* cb, int& cells) {
  if (a.n == 0) return true;
  while (true) {
    const int width = 1 + a.binary_count * cells + (a.high.empty() ? 0 : 1);
    std::vector<std::uint64_t> sig_b;
    signatures(a, ca, cells, sig_, width);
    if (b != nullptr) {
      std::vector<std::uint64_t> sig_a = std::move(sig_);
      signatures(*b, *cb, cells, sig_b, width);
      sig_ = std::move(sig_a);
      sig_.insert(sig_.end(), sig_b.begin(), sig_b.end());
    }
    const int before = cells;
    if (!rank(a.n, b != nullptr ? b->n : 0, width, ca, cb, cells)) return false;
    if (cells == before || cells == a.n) return true;
  }
}

Colouring individualize(const Colouring& col, int v, int& cells) {
  const int c = col[static_cast<std::size_t>(v)];
  const auto size = std::count(col.begin(), col.end(), c);
  if (size <= 1) return col;
  Colouring out(col.size());
  for (std::size_t u = 0; u < col.size(); ++u) {
    if (col[u] < c) {
      out[u] = col[u];
    } else if (static_cast<int>(u) == v) {
      out[u] = c;
    } else {
      out[u] = col[u] + 1;
    }
  }
  ++cells;
  return out;
}

int first_nonsingleton(const Colouring& col, int cells) {
  if (cells == static_cast<int>(col.size())) return -1;
  std::vector<int> count(static_cast<std::size_t>(cells), 0);
  for (int c : col) ++count[static_cast<std::size_t>(c)];
  for (int c = 0; c < cells; ++c) {
    if (count[static_cast<std::size_t>(c)] > 1) return c;
  }
  return -1;
}

bool verify_isomorphism(const Compiled& a, const Compiled& b, std::span<const int> perm) {
  const auto n = static_cast<std::size_t>(a.n);
  if (a.n != b.n || perm.size() != n) return false;
  auto map_mask = [&](std::uint64_t m) {
    std::uint64_t r = 0;
    while (m != 0) {
      const int u = std::countr_zero(m);
      m &= m - 1;
      r |= std::uint64_t{1} << perm[static_cast<std::size_t>(u)];
    }
    return r;
  };
  for (std::size_t bi = 0; bi < a.binary_relations.size(); ++bi) {
    if (map_mask(a.loops[bi]) != b.loops[bi]) return false;
    for (std::size_t v = 0; v < n; ++v) {
      if (map_mask(a.out[bi * n + v]) != b.out[bi * n + static_cast<std::size_t>(perm[v])]) return false;
    }
  }
  for (std::size_t u = 0; u < a.unary.size(); ++u) {
    if (map_mask(a.unary[u]) != b.unary[u]) return false;
  }
  std::vector<int> image;
  for (std::size_t hi = 0; hi < a.high.size(); ++hi) {
    const auto& ha = a.high[hi];
    const auto& hb = b.high[hi];
    if (ha.flat.size() != hb.flat.size()) return false;
    const auto ar = static_cast<std::size_t>(ha.arity);
    image.resize(ar);
    for (std::size_t off = 0; off < ha.flat.size(); off += ar) {
      for (std::size_t p = 0; p < ar; ++p) image[p] = perm[static_cast<std::size_t>(ha.flat[off + p])];
      if (!b.source->holds(hb.relation, image)) return false;
    }
  }
  return true;
}

}  // namespace homlab::detail
