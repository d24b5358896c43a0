// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every criterion also produces a digest of its verdicts
// and counts; the determinism criterion recomputes them all and compares.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/oracles.hpp"
#include "homlab/enumerate.hpp"
#include "homlab/fraisse.hpp"
#include "homlab/graph.hpp"
#include "homlab/homogeneity.hpp"
#include "homlab/io.hpp"
#include "homlab/isomorphism.hpp"
#include "homlab/rado.hpp"
#include "homlab/reducts.hpp"
#include "homlab/rigid.hpp"
#include "homlab/sumfree.hpp"

#ifdef HOMLAB_ACCEPTANCE_CLI
#include "cli.hpp"
#endif

using namespace homlab;
using namespace homlab::homog;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;  // one line, shown after the verdict
  std::string digest;   // everything the verdict depends on, no timings
};

class Recorder {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      if (!failures_.empty()) failures_ += "; ";
      failures_ += what;
    }
    digest_ << (ok ? "ok " : "FAIL ") << what << '\n';
  }
  void note(const std::string& line) { digest_ << line << '\n'; }

  Outcome finish(const std::string& summary) const {
    return {pass_, pass_ ? summary : summary + " | failed: " + failures_, digest_.str()};
  }

 private:
  bool pass_ = true;
  std::string failures_;
  std::ostringstream digest_;
};

template <class T>
std::string str(const T& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

FiniteGraph from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
  FiniteGraph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

bool non_extendable(const FiniteGraph& g, const PartialIsomorphism& w) {
  const RelationalStructure s = to_structure(g);
  if (!w.is_valid(s, s)) return false;
  std::vector<int> p(static_cast<std::size_t>(g.order()));
  std::iota(p.begin(), p.end(), 0);
  do {
    if (!is_automorphism(s, p)) continue;
    if (std::all_of(w.pairs.begin(), w.pairs.end(), [&](const auto& pr) { return p[pr.first] == pr.second; }))
      return false;
  } while (std::next_permutation(p.begin(), p.end()));
  return true;
}

Outcome gardiner_verification() {
  Recorder r;
  const std::vector<std::pair<std::string, FiniteGraph>> listed{
      {"2K3", graphs::copies(2, graphs::complete(3))},
      {"3K2", graphs::copies(3, graphs::complete(2))},
      {"K3,3,3", graphs::complete_multipartite(3, 3)},
      {"C5", graphs::cycle(5)},
      {"L(K3,3)", graphs::line_graph(graphs::complete_bipartite(3, 3))},
  };
  for (const auto& [name, g] : listed) r.check(is_homogeneous(g).holds, name + " homogeneous");

  const std::vector<std::pair<std::string, FiniteGraph>> others{
      {"K2+K1", graphs::disjoint_union(graphs::complete(2), graphs::complete(1))},
      {"P3", graphs::path(3)},
      {"P4", graphs::path(4)},
      {"P5", graphs::path(5)},
      {"K1,3", graphs::complete_bipartite(1, 3)},
      {"K2,3", graphs::complete_bipartite(2, 3)},
      {"K1,1,2", graphs::complete_multipartite(std::vector<int>{1, 1, 2})},
      {"K3+K1", graphs::disjoint_union(graphs::complete(3), graphs::complete(1))},
      {"C4+K1", graphs::disjoint_union(graphs::cycle(4), graphs::complete(1))},
      {"K3+K2", graphs::disjoint_union(graphs::complete(3), graphs::complete(2))},
      {"paw", from_edges(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}})},
      {"bull", from_edges(5, {{0, 1}, {1, 2}, {0, 2}, {1, 3}, {2, 4}})},
      {"house", from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 4}})},
      {"C6", graphs::cycle(6)},
      {"C7", graphs::cycle(7)},
      {"C8", graphs::cycle(8)},
      {"W5", from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 0}, {5, 1}, {5, 2}, {5, 3}, {5, 4}})},
      {"prism", from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}})},
      {"cube", from_edges(8, {{0, 1}, {1, 3}, {3, 2}, {2, 0}, {4, 5}, {5, 7}, {7, 6}, {6, 4},
                              {0, 4}, {1, 5}, {2, 6}, {3, 7}})},
      {"K4,4-M", from_edges(8, {{0, 5}, {0, 6}, {0, 7}, {1, 4}, {1, 6}, {1, 7},
                                {2, 4}, {2, 5}, {2, 7}, {3, 4}, {3, 5}, {3, 6}})},
  };
  r.check(others.size() == 20, "twenty fixed graphs");
  for (const auto& [name, g] : others) {
    const auto h = is_homogeneous(g);
    r.check(!h.holds, name + " not homogeneous");
    r.check(h.witness.has_value() && non_extendable(g, *h.witness), name + " witness blocks every automorphism");
    r.check(!oracle::homogeneous(g), name + " oracle agrees");
    r.note(name + " failing_size=" + str(h.failing_size));
  }
  return r.finish("5 listed graphs homogeneous, 20 others rejected with verified witnesses");
}

Outcome schlafli_suite() {
  Recorder r;
  const FiniteGraph g = schlafli_graph();
  bool regular = g.order() == 27;
  for (int v = 0; v < g.order(); ++v) regular = regular && g.degree(v) == 10;
  r.check(regular, "10-regular on 27 vertices");

  const auto census = four_vertex_census(g);
  int k4 = 0, k4e = 0, k3k1 = 0, other = 0;
  for (int mask : census.missing) {
    switch (std::popcount(static_cast<unsigned>(mask))) {
      case 6: ++k4; break;
      case 5: ++k4e; break;
      case 3: {
        // Three edges on four points form a triangle iff one point is isolated.
        const FiniteGraph h = [&] {
          FiniteGraph x(4);
          int bit = 0;
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j, ++bit)
              if ((mask >> bit) & 1) x.add_edge(i, j);
          return x;
        }();
        bool isolated = false;
        for (int v = 0; v < 4; ++v) isolated = isolated || h.degree(v) == 0;
        isolated ? ++k3k1 : ++other;
        break;
      }
      default: ++other;
    }
  }
  r.check(k4 == 1 && k4e == 6 && k3k1 == 4 && other == 0, "missing types are exactly K4, K4-e, K3+K1");
  r.check(census.realized.size() == 53, "53 realized labelled types");
  const auto orbits = orbits_on_ktuples(g, 4);
  // Orbits refine labelled types, so equal counts means one orbit per type.
  r.check(orbits.count() == 53, "53 orbits on injective 4-tuples");
  r.check(is_t_homogeneous(g, 4).holds, "4-homogeneous");
  r.note("orbits=" + str(orbits.count()) + " realized=" + str(census.realized.size()));
  return r.finish("srg on 27 vertices, 53 types in 53 orbits, 11 missing labellings of K4/K4-e/K3+K1");
}

Outcome five_tuple_regularity() {
  Recorder r;
  const auto c = regularity_census(9);
  std::size_t graphs = 0, homogeneous = 0, mismatches = 0;
  for (const auto& row : c.rows) {
    graphs += row.graphs;
    homogeneous += row.homogeneous;
    mismatches += row.mismatches;
    r.check(row.mismatches == 0, "n=" + str(row.n) + " five_regular=" + str(row.five_regular) +
                                     " homogeneous=" + str(row.homogeneous));
  }
  return r.finish(str(graphs) + " graphs on <=9 vertices, " + str(homogeneous) + " homogeneous, " + str(mismatches) + " mismatches");
}

Outcome spectrum_shadow() {
  Recorder r;
  const auto c = cospectral_regularity(8);
  r.check(c.violations == 0, "violations=" + str(c.violations));
  r.note("graphs=" + str(c.graphs) + " groups=" + str(c.groups) + " shared=" + str(c.shared.size()));
  return r.finish(str(c.graphs) + " graphs, " + str(c.groups) + " spectra, " + str(c.shared.size()) +
                  " shared, " + str(c.violations) + " violations");
}

Outcome sumfree_census() {
  Recorder r;
  bool all = true;
  for (int n = 0; n <= 25; ++n) {
    const auto expected = oracle::sum_free_subsets(n);
    const auto got = sumfree::census(n).total;
    all = all && expected == got;
    r.note("n=" + str(n) + " total=" + str(got));
  }
  r.check(all, "totals for n<=25 match the 2^n oracle");
  const auto c36 = sumfree::census(36);
  const auto c35 = sumfree::census(35);
  r.check(c36.ratio >= 5.5 && c36.ratio <= 7.5, "census(36).ratio=" + str(c36.ratio) + " in [5.5,7.5]");
  r.check(c35.ratio >= 5.0 && c35.ratio <= 7.0, "census(35).ratio=" + str(c35.ratio) + " in [5.0,7.0]");
  return r.finish("totals n<=25 exact; ratio(36)=" + str(c36.ratio) + ", ratio(35)=" + str(c35.ratio));
}

Outcome random_measure() {
  Recorder r;
  const auto d = sumfree::density_experiment(100000, 2000, 7);
  r.check(d.no_even_fraction >= 0.198 && d.no_even_fraction <= 0.238,
          "no-even fraction " + str(d.no_even_fraction) + " in [0.198,0.238]");
  r.check(d.mean_density_no_even >= 0.23 && d.mean_density_no_even <= 0.27,
          "conditional density " + str(d.mean_density_no_even) + " in [0.23,0.27]");
  std::ostringstream hist;
  for (const auto& b : d.histogram) hist << b.count << ',';
  r.note("histogram=" + hist.str());
  return r.finish("no-even fraction " + str(d.no_even_fraction) + ", conditional density " +
                  str(d.mean_density_no_even));
}

Outcome rado_suite() {
  Recorder r;
  const rado::BitOracle bit;
  std::size_t found = 0;
  rado::Vertex largest = 0;
  int total = 1;
  for (int i = 0; i < 10; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    std::vector<rado::Vertex> u, v;
    int c = code;
    for (rado::Vertex x = 0; x < 10; ++x, c /= 3) {
      if (c % 3 == 1) u.push_back(x);
      if (c % 3 == 2) v.push_back(x);
    }
    const auto z = rado::extension_witness(bit, u, v, rado::Vertex{1} << 16);
    if (z) {
      ++found;
      largest = std::max(largest, *z);
    }
  }
  r.check(found == static_cast<std::size_t>(total), "extension witnesses " + str(found) + "/" + str(total));
  r.note("largest witness " + str(largest));

  const rado::PrimeOracle primes(10000);
  std::vector<rado::Vertex> ps;
  for (auto p = primes.next_vertex(0); p && *p < 10000; p = primes.next_vertex(*p + 1)) ps.push_back(*p);
  std::size_t pairs = 0;
  bool symmetric = true;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j, ++pairs)
      symmetric = symmetric && rado::prime_graph_adjacent(ps[i], ps[j]) == rado::prime_graph_adjacent(ps[j], ps[i]);
  r.check(symmetric, "reciprocity symmetry over " + str(pairs) + " pairs of " + str(ps.size()) + " primes");

  const rado::PrimeOracle big(1000000);
  const auto bf = rado::try_back_and_forth(bit, big, 100, 1000000);
  const bool valid = bf.map.is_valid(bit, big);
  r.check(valid, "back-and-forth map is a partial isomorphism");
  r.check(bf.complete && bf.map.pairs.size() >= 100,
          "back-and-forth domain " + str(bf.map.pairs.size()) + " >= 100 (rounds " + str(bf.rounds_completed) +
              (bf.stuck_vertex ? ", stuck at " + str(*bf.stuck_vertex) : std::string{}) + ")");
  return r.finish("3^10 extension patterns, " + str(pairs) + " prime pairs, back-and-forth domain " +
                  str(bf.map.pairs.size()));
}

Outcome fraisse_checker() {
  Recorder r;
  using fraisse::ClassSpec;
  using fraisse::Verdict;
  const std::vector<std::pair<std::string, ClassSpec>> holding{
      {"graphs", ClassSpec::all_graphs()},
      {"K3-free", ClassSpec::k_free_graphs(3)},
      {"K4-free", ClassSpec::k_free_graphs(4)},
      {"tournaments", ClassSpec::tournaments()},
      {"linear orders", ClassSpec::linear_orders()},
  };
  for (const auto& [name, c] : holding) {
    const auto rep = fraisse::check_ap(c, 5, false);
    r.check(rep.verdict == Verdict::Holds, name + " AP holds at n=5 over " + str(rep.instances) + " instances");
  }
  const auto bip = fraisse::check_ap(ClassSpec::bipartite_graphs(), 5, false);
  const bool small = bip.witness && bip.witness->b1.size() <= 5 && bip.witness->b2.size() <= 5;
  r.check(bip.verdict == Verdict::Fails && small, "bipartite AP fails with a witness on <=5 vertices");
  r.note("bipartite instances=" + str(bip.instances) + " host_bound=" + str(bip.host_bound));

  const auto match = fraisse::check_ap(ClassSpec::matchings(), 5, false);
  r.check(match.verdict == Verdict::Holds, "matchings AP holds");
  const auto strong = fraisse::check_ap(ClassSpec::matchings(), 5, true);
  r.check(strong.verdict == Verdict::Fails && strong.witness && strong.witness->a.size() == 1,
          "matchings strong AP fails with a 1-vertex base");
  return r.finish("AP holds for 5 classes, bipartite fails (host bound " + str(bip.host_bound) +
                  "), matchings strong AP fails");
}

Outcome reduct_chain() {
  Recorder r;
  for (int n = 4; n <= 6; ++n) {
    const auto rep = reducts::reduct_lattice(n);
    BigInt factorial = 1;
    for (int i = 2; i <= n; ++i) factorial *= i;
    const bool orders = rep.orders[0] == 1 && rep.orders[1] == 2 && rep.orders[2] == n &&
                        rep.orders[3] == 2 * n && rep.orders[4] == factorial;
    r.check(orders, "n=" + str(n) + " orders (1,2,n,2n,n!)");
    std::ostringstream links;
    for (int i = 0; i < 4; ++i) links << rep.contains[i][i + 1];
    r.check(rep.chain, "n=" + str(n) + " containment chain (links " + links.str() + ")");
  }
  return r.finish("orders (1,2,n,2n,n!) for n=4,5,6 with containment chain");
}

RelationalStructure random_tournament(int n, std::mt19937_64& rng) {
  RelationalStructure t(tournament_signature(), n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (rng() % 2) t.set(0, {u, v});
      else t.set(0, {v, u});
    }
  return t;
}

Outcome rigid_suite() {
  Recorder r;
  std::size_t tournaments = 0;
  bool odd = true;
  for (int n = 1; n <= 6; ++n) {
    const auto ts = tournaments_up_to_isomorphism(n);
    tournaments += ts.size();
    for (const auto& t : ts) odd = odd && rigid::tournament_aut_order(t) % 2 == 1;
    r.note("tournaments n=" + str(n) + ": " + str(ts.size()));
  }
  r.check(odd, "odd automorphism order for all " + str(tournaments) + " tournaments on <=6 vertices");

  std::size_t trees = 0;
  bool round_trip = true, two_power = true;
  for (int l = 1; l <= 8; ++l) {
    for (const auto& t : rigid::all_trees(l)) {
      ++trees;
      const auto gamma = rigid::c_relation_of_tree(t);
      round_trip = round_trip && rigid::tree_of_c_relation(gamma).canonical_string() == t.canonical_string();
      const BigInt order = rigid::c_aut_order(gamma);
      two_power = two_power && order > 0 && (order & (order - 1)) == 0;
    }
  }
  r.check(round_trip, "tree round trips over " + str(trees) + " trees");
  r.check(two_power, "2-power C-relation automorphism orders");

  std::mt19937_64 rng(7);
  int rigid_count = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto all = rigid::all_trees(n);
    const auto s = rigid::superpose(random_tournament(n, rng), rigid::c_relation_of_tree(all[rng() % all.size()]));
    rigid_count += automorphisms(s).order == 1;
  }
  r.check(rigid_count == 1000, "rigid superpositions " + str(rigid_count) + "/1000");

  // Every superposition on <=6 points is isomorphic to one whose tournament
  // is a catalogue representative, so representatives times labelled trees
  // cover all of them.
  std::size_t checked = 0, triples = 0;
  bool certified = true;
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const auto trees_n = rigid::all_trees(n);
    for (const auto& t : tournaments_up_to_isomorphism(n)) {
      for (const auto& tree : trees_n) {
        const auto rep = rigid::ramsey_failure_colouring(rigid::superpose(t, rigid::c_relation_of_tree(tree)), order);
        certified = certified && rep.certified;
        triples += rep.cyclic_triples.size();
        ++checked;
      }
    }
  }
  r.check(certified, "both colours on all " + str(triples) + " cyclic triples of " + str(checked) +
                         " superpositions");
  return r.finish(str(tournaments) + " tournaments odd, " + str(trees) + " trees, 1000 rigid samples, " +
                  str(checked) + " superpositions certified");
}

using Criterion = std::function<Outcome()>;

struct Entry {
  int id;
  std::string name;
  Criterion run;
};

const std::vector<Entry>& criteria() {
  static const std::vector<Entry> list{
      {1, "Gardiner verification", gardiner_verification},
      {2, "Schlafli suite", schlafli_suite},
      {3, "5-tuple regularity on <=9 vertices", five_tuple_regularity},
      {4, "cospectral regularity on <=8 vertices", spectrum_shadow},
      {5, "sum-free census", sumfree_census},
      {6, "random sum-free measure", random_measure},
      {7, "Rado suite", rado_suite},
      {8, "Fraisse checker", fraisse_checker},
      {9, "reduct chain", reduct_chain},
      {10, "rigid suite", rigid_suite},
  };
  return list;
}

Outcome determinism(const std::vector<std::string>& first) {
  Recorder r;
  for (std::size_t i = 0; i < criteria().size(); ++i) {
    const auto again = criteria()[i].run();
    r.check(again.digest == first[i], "criterion " + str(criteria()[i].id) + " digest reproduced");
  }
#ifdef HOMLAB_ACCEPTANCE_CLI
  const std::vector<std::vector<std::string>> commands{
      {"--seed", "7", "sumfree", "random", "--trials", "2000", "--N", "500", "--workers", "2"},
      {"--seed", "7", "fraisse", "--class", "graphs", "--check", "limit", "--stages", "60"},
      {"rado", "--back-and-forth", "bit", "bit", "--steps", "20"},
      {"schlafli"},
  };
  for (const auto& args : commands) {
    std::ostringstream a, b, err;
    const int ca = cli::run(args, a, err);
    const int cb = cli::run(args, b, err);
    std::string joined;
    for (const auto& s : args) joined += s + ' ';
    r.check(ca == 0 && cb == 0 && cli::strip_timing(a.str()) == cli::strip_timing(b.str()),
            "CLI report reproduced: " + joined);
  }
#endif
  return r.finish("criteria 1-10 and CLI reports reproduce byte for byte");
}

}  // namespace

int main() {
  bool all = true;
  std::vector<std::string> digests;
  auto report = [&](int id, const std::string& name, const Outcome& o, double seconds) {
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << name << "): " << o.summary << " ["
              << std::fixed << std::setprecision(1) << seconds << " s]" << std::endl;
    std::cout.unsetf(std::ios::fixed);
  };
  auto timed = [](const std::function<Outcome()>& f) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = f();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::make_pair(std::move(o), s);
  };
  for (const auto& e : criteria()) {
    auto [o, s] = timed(e.run);
    digests.push_back(o.digest);
    report(e.id, e.name, o, s);
  }
  auto [o, s] = timed([&] { return determinism(digests); });
  report(11, "determinism", o, s);
  return all ? 0 : 1;
}
