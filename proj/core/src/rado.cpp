#include "homlab/rado.hpp"

#include <algorithm>
#include <functional>

#include "homlab/errors.hpp"
#include "number_theory.hpp"

namespace homlab::rado {

namespace {

bool prime_one_mod_four(Vertex p) { return p % 4 == 1 && detail::is_prime_u64(p); }

bool qr_adjacent(Vertex p, Vertex q) { return detail::is_quadratic_residue(q % p, p); }

// True iff z satisfies the extension query.
bool satisfies(const GraphOracle& o, Vertex z, std::span<const Vertex> u, std::span<const Vertex> v) {
  for (Vertex x : u) {
    if (x == z || !o.adjacent(z, x)) return false;
  }
  for (Vertex x : v) {
    if (x == z || o.adjacent(z, x)) return false;
  }
  return true;
}

}  // namespace

bool rado_adjacent(Vertex x, Vertex y) {
  if (x == y) throw SelfLoop("vertex " + std::to_string(x) + " compared with itself");
  const Vertex a = std::min(x, y);
  const Vertex b = std::max(x, y);
  return a < 64 && ((b >> a) & 1U);
}

bool prime_graph_adjacent(Vertex p, Vertex q) {
  for (Vertex x : {p, q}) {
    if (!prime_one_mod_four(x)) throw InvalidVertex(std::to_string(x) + " is not a prime congruent to 1 mod 4");
  }
  if (p == q) throw SelfLoop("vertex " + std::to_string(p) + " compared with itself");
  return qr_adjacent(p, q);
}

bool BitOracle::adjacent(Vertex x, Vertex y) const { return rado_adjacent(x, y); }

PrimeOracle::PrimeOracle(Vertex sieve_limit) : limit_(sieve_limit), composite_(sieve_limit + 1, false) {
  composite_[0] = true;
  if (sieve_limit >= 1) composite_[1] = true;
  for (Vertex i = 2; i * i <= sieve_limit; ++i) {
    if (composite_[i]) continue;
    for (Vertex j = i * i; j <= sieve_limit; j += i) composite_[j] = true;
  }
}

bool PrimeOracle::contains(Vertex v) const {
  if (v % 4 != 1) return false;
  return v <= limit_ ? !composite_[v] : detail::is_prime_u64(v);
}

bool PrimeOracle::adjacent(Vertex p, Vertex q) const {
  if (p == q) throw SelfLoop("vertex " + std::to_string(p) + " compared with itself");
  return qr_adjacent(p, q);
}

std::optional<Vertex> PrimeOracle::next_vertex(Vertex v) const {
  Vertex c = v <= 5 ? 5 : v + (4 - (v - 1) % 4) % 4;
  for (; c >= v; c += 4) {
    if (contains(c)) return c;
  }
  return std::nullopt;  // wrapped around
}

FiniteGraphOracle::FiniteGraphOracle(FiniteGraph g, std::string tag) : g_(std::move(g)), tag_(std::move(tag)) {}

bool FiniteGraphOracle::adjacent(Vertex x, Vertex y) const {
  if (!contains(x) || !contains(y)) throw InvalidVertex("vertex outside the finite graph");
  return g_.adjacent(static_cast<int>(x), static_cast<int>(y));
}

std::optional<Vertex> FiniteGraphOracle::next_vertex(Vertex v) const {
  if (contains(v)) return v;
  return std::nullopt;
}

CirculantOracle::CirculantOracle(std::vector<Vertex> differences) : differences_(std::move(differences)) {
  std::sort(differences_.begin(), differences_.end());
  differences_.erase(std::unique(differences_.begin(), differences_.end()), differences_.end());
  if (!differences_.empty() && differences_.front() == 0) throw SelfLoop("difference 0 would create loops");
}

bool CirculantOracle::adjacent(Vertex x, Vertex y) const {
  if (x == y) throw SelfLoop("vertex " + std::to_string(x) + " compared with itself");
  const Vertex d = x > y ? x - y : y - x;
  return std::binary_search(differences_.begin(), differences_.end(), d);
}

std::optional<Vertex> extension_witness(const GraphOracle& o, std::span<const Vertex> u, std::span<const Vertex> v,
                                        Vertex bound) {
  for (Vertex x : u) {
    if (!o.contains(x)) throw InvalidVertex(std::to_string(x) + " is outside the " + o.tag() + " universe");
    if (std::find(v.begin(), v.end(), x) != v.end()) throw InvalidVertex("U and V share vertex " + std::to_string(x));
  }
  for (Vertex x : v) {
    if (!o.contains(x)) throw InvalidVertex(std::to_string(x) + " is outside the " + o.tag() + " universe");
  }
  for (std::optional<Vertex> z = o.next_vertex(0); z && *z <= bound; z = o.next_vertex(*z + 1)) {
    if (satisfies(o, *z, u, v)) {
      // Re-check against the predicate before reporting.
      if (!satisfies(o, *z, u, v)) throw Error("extension witness failed re-verification");
      return z;
    }
    if (*z == bound) break;
  }
  return std::nullopt;
}

bool OracleMap::is_valid(const GraphOracle& a, const GraphOracle& b) const {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!a.contains(pairs[i].first) || !b.contains(pairs[i].second)) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (pairs[i].first == pairs[j].first || pairs[i].second == pairs[j].second) return false;
      if (a.adjacent(pairs[i].first, pairs[j].first) != b.adjacent(pairs[i].second, pairs[j].second)) return false;
    }
  }
  return true;
}

BackAndForthResult try_back_and_forth(const GraphOracle& a, const GraphOracle& b, int steps, Vertex bound) {
  if (steps < 1) throw Error("back-and-forth needs at least one step");
  BackAndForthResult result;
  auto& pairs = result.map.pairs;
  auto mapped = [&](Vertex x, bool source) {
    return std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) { return (source ? p.first : p.second) == x; });
  };
  for (int round = 0; round < steps; ++round) {
    const bool forward = round % 2 == 0;
    const GraphOracle& from = forward ? a : b;
    const GraphOracle& to = forward ? b : a;
    std::optional<Vertex> x = from.next_vertex(0);
    while (x && mapped(*x, forward)) x = from.next_vertex(*x + 1);
    if (!x) {
      // A finite side is exhausted; nothing to add this round.
      ++result.rounds_completed;
      continue;
    }
    std::vector<Vertex> u;
    std::vector<Vertex> v;
    for (const auto& [s, t] : pairs) {
      const Vertex here = forward ? s : t;
      const Vertex there = forward ? t : s;
      (from.adjacent(*x, here) ? u : v).push_back(there);
    }
    // The least witness outside the current image is the least witness
    // overall, since image points are excluded by the query itself.
    const auto z = extension_witness(to, u, v, bound);
    if (!z) {
      result.stuck_vertex = x;
      result.stuck_forward = forward;
      return result;
    }
    pairs.emplace_back(forward ? *x : *z, forward ? *z : *x);
    ++result.rounds_completed;
  }
  result.complete = true;
  return result;
}

OracleMap back_and_forth(const GraphOracle& a, const GraphOracle& b, int steps, Vertex bound) {
  BackAndForthResult r = try_back_and_forth(a, b, steps, bound);
  if (!r.complete) {
    throw WitnessNotFound("back-and-forth round " + std::to_string(r.rounds_completed + 1) + " (" +
                              (r.stuck_forward ? a.tag() : b.tag()) + " vertex " + std::to_string(*r.stuck_vertex) +
                              ")",
                          bound);
  }
  return std::move(r.map);
}

CommonNeighbourReport common_neighbour_check(const GraphOracle& o, int s, int m, Vertex bound) {
  if (s > 5) throw SizeLimit("common-neighbour subset size", 5);
  if (m > 16) throw SizeLimit("common-neighbour window", 16);
  std::vector<Vertex> window;
  for (std::optional<Vertex> x = o.next_vertex(0); x && static_cast<int>(window.size()) < m; x = o.next_vertex(*x + 1)) {
    window.push_back(*x);
  }
  CommonNeighbourReport report;
  std::vector<Vertex> set;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int size) {
    if (static_cast<int>(set.size()) == size) {
      CommonNeighbourEntry e{set, extension_witness(o, set, {}, bound)};
      if (e.witness) ++report.found;
      else report.all_found = false;
      report.entries.push_back(std::move(e));
      return;
    }
    for (std::size_t i = from; i < window.size(); ++i) {
      set.push_back(window[i]);
      rec(i + 1, size);
      set.pop_back();
    }
  };
  for (int size = 1; size <= s; ++size) rec(0, size);
  return report;
}

}  // namespace homlab::rado
