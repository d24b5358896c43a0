#include <gtest/gtest.h>

#include <random>

#include "homlab/enumerate.hpp"
#include "homlab/errors.hpp"
#include "homlab/io.hpp"
#include "homlab/isomorphism.hpp"
#include "oracles.hpp"

using namespace homlab;

namespace {

FiniteGraph shuffled(const FiniteGraph& g, std::mt19937_64& rng) {
  std::vector<int> perm(static_cast<std::size_t>(g.order()));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return relabel(g, perm);
}

}  // namespace

TEST(Graph, BasicFamilies) {
  EXPECT_EQ(graphs::complete(5).edge_count(), 10U);
  EXPECT_EQ(graphs::cycle(5).edge_count(), 5U);
  EXPECT_EQ(graphs::petersen().edge_count(), 15U);
  EXPECT_EQ(graphs::line_graph(graphs::complete_bipartite(3, 3)).order(), 9);
  EXPECT_EQ(graphs::complete_multipartite(3, 3).edge_count(), 27U);
  EXPECT_THROW(FiniteGraph(3).add_edge(1, 1), SelfLoop);
  EXPECT_THROW((void)FiniteGraph(3).adjacent(0, 3), InvalidVertex);
}

TEST(Graph, ComplementAndInducedSubgraph) {
  const FiniteGraph c5 = graphs::cycle(5);
  EXPECT_EQ(complement(c5).edge_count(), 5U);
  const std::vector<int> verts{0, 1, 2};
  const FiniteGraph p = induced_subgraph(c5, verts);
  EXPECT_EQ(p.edge_count(), 2U);
  EXPECT_TRUE(p.adjacent(0, 1));
  EXPECT_FALSE(p.adjacent(0, 2));
}

TEST(Structure, TablesAndEmbeddings) {
  RelationalStructure s(Signature{{"R", 3}}, 4);
  s.set(0, {0, 1, 2});
  s.set(0, {3, 2, 1});
  EXPECT_TRUE(s.holds(0, {0, 1, 2}));
  EXPECT_FALSE(s.holds(0, {2, 1, 0}));
  EXPECT_EQ(s.tuple_count(0), 2U);
  EXPECT_EQ(s.tuples(0).front(), (Tuple{0, 1, 2}));
  const std::vector<int> verts{0, 1, 2};
  const RelationalStructure sub = induced_substructure(s, verts);
  EXPECT_EQ(sub.tuple_count(0), 1U);
  EXPECT_TRUE(is_embedding(sub, s, verts));
  EXPECT_THROW(Signature({{"R", 2}, {"R", 3}}), SignatureMismatch);
}

TEST(Io, Graph6RoundTrip) {
  std::mt19937_64 rng(11);
  for (int n : {0, 1, 2, 5, 13, 62, 63, 64}) {
    const FiniteGraph g = oracle::random_graph(n, 0.4, rng);
    EXPECT_EQ(io::parse_graph6(io::to_graph6(g)), g) << n;
  }
  EXPECT_EQ(io::to_graph6(graphs::cycle(5)), "Dhc");
  EXPECT_EQ(io::parse_graph6(">>graph6<<Dhc"), graphs::cycle(5));
}

TEST(Io, Graph6ErrorsCarryColumns) {
  try {
    io::parse_graph6("D h");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1U);
    EXPECT_EQ(e.column(), 2U);
  }
  EXPECT_THROW(io::parse_graph6("D"), ParseError);
}

TEST(Io, EdgeListRoundTripAndErrors) {
  const FiniteGraph p = graphs::petersen();
  EXPECT_EQ(io::parse_edge_list(io::to_edge_list(p)), p);
  EXPECT_EQ(io::parse_graph("# comment\n3 1\n0 2\n"), io::parse_edge_list("3 1\n0 2\n"));
  try {
    io::parse_edge_list("3 2\n0 1\n1 7\n");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3U);
  }
  EXPECT_THROW(io::parse_edge_list("3 1\n1 1\n"), ParseError);
}

TEST(Io, StructureJsonRoundTrip) {
  RelationalStructure s(Signature{{"T", 2}, {"C", 3}}, 3);
  s.set(0, {0, 1});
  s.set(1, {0, 1, 2});
  const std::string doc = io::to_structure_json(s);
  EXPECT_EQ(io::parse_structure_json(doc), s);
  EXPECT_THROW(io::parse_structure_json("{\"n\": 2"), ParseError);
  EXPECT_THROW(io::parse_structure_json(R"({"signature":[{"name":"E","arity":2}],"n":2,"tables":{"E":[[0,5]]}})"),
               Error);
}

TEST(Isomorphism, AutomorphismOrdersMatchBruteForce) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 6;
    const FiniteGraph g = oracle::random_graph(n, trial % 3 == 0 ? 0.5 : 0.3, rng);
    EXPECT_EQ(automorphisms(g).order, BigInt(oracle::automorphism_count(g))) << io::to_graph6(g);
  }
  EXPECT_EQ(automorphisms(graphs::petersen()).order, 120);
  EXPECT_EQ(automorphisms(graphs::complete(7)).order, 5040);
  EXPECT_EQ(automorphisms(graphs::cycle(9)).order, 18);
}

TEST(Isomorphism, GeneratorsAreAutomorphisms) {
  const RelationalStructure s = to_structure(graphs::petersen());
  for (const Permutation& p : automorphisms(s).generators) EXPECT_TRUE(is_automorphism(s, p));
}

TEST(Isomorphism, RelabelledCopiesAreIsomorphic) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const FiniteGraph g = oracle::random_graph(3 + trial % 9, 0.45, rng);
    const FiniteGraph h = shuffled(g, rng);
    const auto iso = are_isomorphic(g, h);
    ASSERT_TRUE(iso.has_value());
    EXPECT_EQ(relabel(g, *iso), h);
    EXPECT_EQ(canonical_code(g), canonical_code(h));
  }
  EXPECT_FALSE(are_isomorphic(graphs::cycle(6), graphs::disjoint_union(graphs::cycle(3), graphs::cycle(3))));
}

TEST(Isomorphism, CanonicalCodeSeparatesClassesLikeBruteForce) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const FiniteGraph a = oracle::random_graph(6, 0.5, rng);
    const FiniteGraph b = oracle::random_graph(6, 0.5, rng);
    EXPECT_EQ(canonical_code(a) == canonical_code(b), oracle::brute_canonical(a) == oracle::brute_canonical(b));
  }
}

TEST(Isomorphism, EmbeddingSearch) {
  const RelationalStructure p3 = to_structure(graphs::path(3));
  const RelationalStructure c5 = to_structure(graphs::cycle(5));
  const auto e = find_embedding(p3, c5);
  ASSERT_TRUE(e.has_value());
  EXPECT_TRUE(is_embedding(p3, c5, *e));
  EXPECT_FALSE(find_embedding(to_structure(graphs::complete(3)), c5).has_value());
}

TEST(Isomorphism, OrbitsOnPairs) {
  // The Petersen graph is distance-transitive: ordered pairs split by distance.
  EXPECT_EQ(orbits_on_ktuples(graphs::petersen(), 2).count(), 2);
  EXPECT_EQ(orbits_on_ktuples(graphs::path(4), 1).count(), 2);
}

TEST(Enumerate, GraphCountsMatchBruteForce) {
  for (int n = 1; n <= 6; ++n) {
    const std::size_t expected = oracle::class_count(n, [](const FiniteGraph&) { return true; });
    EXPECT_EQ(graphs_up_to_isomorphism(n).size(), expected) << n;
  }
  EXPECT_EQ(graphs_up_to_isomorphism(7).size(), 1044U);
}

TEST(Enumerate, TournamentCounts) {
  const std::vector<std::size_t> expected{1, 1, 2, 4, 12, 56};
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(tournaments_up_to_isomorphism(n).size(), expected[n - 1]) << n;
}
