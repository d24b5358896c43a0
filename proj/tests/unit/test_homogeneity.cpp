#include <gtest/gtest.h>

#include <random>

#include "homlab/enumerate.hpp"
#include "homlab/errors.hpp"
#include "homlab/homogeneity.hpp"
#include "homlab/io.hpp"
#include "oracles.hpp"

using namespace homlab;
using namespace homlab::homog;

namespace {

// A witness must be a partial isomorphism that no automorphism extends.
void expect_non_extendable(const FiniteGraph& g, const PartialIsomorphism& w) {
  const RelationalStructure s = to_structure(g);
  ASSERT_TRUE(w.is_valid(s, s));
  std::vector<int> p(static_cast<std::size_t>(g.order()));
  std::iota(p.begin(), p.end(), 0);
  do {
    if (!is_automorphism(s, p)) continue;
    const bool extends =
        std::all_of(w.pairs.begin(), w.pairs.end(), [&](const auto& pr) { return p[pr.first] == pr.second; });
    ASSERT_FALSE(extends);
  } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace

TEST(TupleRegularity, Examples) {
  EXPECT_TRUE(is_t_tuple_regular(graphs::cycle(5), 2).holds);
  EXPECT_TRUE(is_t_tuple_regular(graphs::cycle(5), 5).holds);
  const auto p3 = is_t_tuple_regular(graphs::path(3), 1);
  ASSERT_FALSE(p3.holds);
  ASSERT_TRUE(p3.witness.has_value());
  EXPECT_EQ(p3.witness->first, Tuple{0});
  EXPECT_EQ(p3.witness->second, Tuple{1});
  EXPECT_EQ(p3.counts, std::make_pair(1, 2));
  EXPECT_THROW(is_t_tuple_regular(graphs::cycle(5), 6), SizeLimit);
}

TEST(TupleRegularity, PathIsNotTwoTupleRegular) {
  // Pairs alone agree on P3, but pairs with a repeated entry see the degrees.
  EXPECT_FALSE(is_t_tuple_regular(graphs::path(3), 2).holds);
}

TEST(TupleRegularity, MatchesDefinitionOnRandomGraphs) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 3 + trial % 4;
    const FiniteGraph g = oracle::random_graph(n, 0.5, rng);
    for (int t = 1; t <= 3; ++t) {
      EXPECT_EQ(is_t_tuple_regular(g, t).holds, oracle::tuple_regular(g, t)) << io::to_graph6(g) << " t=" << t;
    }
  }
  for (const FiniteGraph& g : {graphs::petersen(), graphs::cycle(6), graphs::complete_multipartite(2, 3)}) {
    for (int t = 1; t <= 3; ++t) EXPECT_EQ(is_t_tuple_regular(g, t).holds, oracle::tuple_regular(g, t));
  }
}

TEST(Homogeneity, GardinerListIsHomogeneous) {
  const FiniteGraph k3 = graphs::complete(3);
  for (const FiniteGraph& g :
       {graphs::copies(2, k3), graphs::copies(3, graphs::complete(2)), graphs::complete_multipartite(3, 3),
        graphs::cycle(5), graphs::line_graph(graphs::complete_bipartite(3, 3)), graphs::empty(4), graphs::complete(6)}) {
    EXPECT_TRUE(is_homogeneous(g).holds) << io::to_graph6(g);
  }
}

TEST(Homogeneity, AgreesWithDefinitionOnSmallGraphs) {
  for (int n = 1; n <= 5; ++n) {
    for (const FiniteGraph& g : graphs_up_to_isomorphism(n)) {
      const auto r = is_homogeneous(g);
      EXPECT_EQ(r.holds, oracle::homogeneous(g)) << io::to_graph6(g);
      if (!r.holds) {
        ASSERT_TRUE(r.witness.has_value());
        EXPECT_EQ(static_cast<int>(r.witness->pairs.size()), r.failing_size);
        expect_non_extendable(g, *r.witness);
      }
    }
  }
}

TEST(Homogeneity, PetersenFailsWithWitness) {
  const FiniteGraph g = graphs::petersen();
  const auto r = is_homogeneous(g);
  ASSERT_FALSE(r.holds);
  ASSERT_TRUE(r.witness.has_value());
  expect_non_extendable(g, *r.witness);
  EXPECT_TRUE(is_t_homogeneous(g, 2).holds);
  EXPECT_FALSE(is_t_homogeneous(g, 3).holds);
}

TEST(Homogeneity, ComplementInvariant) {
  for (int n = 1; n <= 7; ++n) {
    for (const FiniteGraph& g : graphs_up_to_isomorphism(n)) {
      ASSERT_EQ(is_homogeneous(g).holds, is_homogeneous(complement(g)).holds) << io::to_graph6(g);
    }
  }
}

TEST(Homogeneity, THomogeneousImpliesTupleRegular) {
  for (int n = 1; n <= 6; ++n) {
    for (const FiniteGraph& g : graphs_up_to_isomorphism(n)) {
      for (int t = 1; t <= 3; ++t) {
        if (is_t_homogeneous(g, t).holds) EXPECT_TRUE(is_t_tuple_regular(g, t).holds) << io::to_graph6(g);
      }
    }
  }
}

TEST(Gardiner, Classification) {
  auto family = [](const FiniteGraph& g) { return gardiner_classify(g); };
  const auto cliques = family(graphs::copies(2, graphs::complete(3)));
  EXPECT_EQ(cliques.family, GardinerFamily::DisjointCliques);
  EXPECT_EQ(cliques.m, 2);
  EXPECT_EQ(cliques.k, 3);
  const auto parts = family(graphs::complete_multipartite(3, 3));
  EXPECT_EQ(parts.family, GardinerFamily::CompleteMultipartite);
  EXPECT_EQ(parts.m, 3);
  EXPECT_EQ(parts.k, 3);
  EXPECT_EQ(family(graphs::cycle(5)).family, GardinerFamily::FiveCycle);
  EXPECT_EQ(family(graphs::line_graph(graphs::complete_bipartite(3, 3))).family, GardinerFamily::LineGraphK33);
  const auto p4 = family(graphs::path(4));
  EXPECT_EQ(p4.family, GardinerFamily::NotHomogeneous);
  ASSERT_TRUE(p4.witness.has_value());
  expect_non_extendable(graphs::path(4), *p4.witness);
}

TEST(Gardiner, AgreesWithHomogeneity) {
  for (int n = 1; n <= 7; ++n) {
    for (const FiniteGraph& g : graphs_up_to_isomorphism(n)) {
      EXPECT_EQ(gardiner_classify(g).family != GardinerFamily::NotHomogeneous, is_homogeneous(g).holds)
          << io::to_graph6(g);
    }
  }
}

TEST(Spectrum, CompleteGraphPolynomial) {
  // det(xI - A(K_4)) = (x - 3)(x + 1)^3 = x^4 - 6x^2 - 8x - 3.
  const auto s = spectral_signature(graphs::complete(4));
  EXPECT_EQ(s.coefficients, (std::vector<BigInt>{1, 0, -6, -8, -3}));
  EXPECT_EQ(to_string(s), "x^4 - 6x^2 - 8x - 3");
}

TEST(Spectrum, SmallestCospectralPair) {
  const FiniteGraph star_plus = graphs::disjoint_union(graphs::complete_bipartite(1, 4), graphs::empty(1));
  const FiniteGraph square_plus = graphs::disjoint_union(graphs::cycle(4), graphs::empty(2));
  const auto a = spectral_signature(star_plus);
  EXPECT_EQ(a, spectral_signature(square_plus));
  EXPECT_EQ(a.coefficients, (std::vector<BigInt>{1, 0, -4, 0, 0, 0, 0}));
  EXPECT_FALSE(are_isomorphic(star_plus, square_plus).has_value());
}

TEST(Spectrum, InvariantUnderRelabelling) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const FiniteGraph g = oracle::random_graph(9, 0.5, rng);
    std::vector<int> perm(9);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(spectral_signature(g), spectral_signature(relabel(g, perm)));
  }
}

TEST(Spectrum, CospectralGroupsAgreeOnLowRegularity) {
  const auto r = cospectral_regularity(7);
  EXPECT_EQ(r.graphs, 1U + 2 + 4 + 11 + 34 + 156 + 1044);
  EXPECT_EQ(r.violations, 0U);
  EXPECT_FALSE(r.shared.empty());
  EXPECT_THROW(cospectral_regularity(9), SizeLimit);
}

TEST(Spectrum, RegularityCensusSmall) {
  const auto c = regularity_census(7);
  ASSERT_EQ(c.rows.size(), 7U);
  for (const auto& row : c.rows) EXPECT_EQ(row.mismatches, 0U);
  EXPECT_EQ(c.rows[4].homogeneous, 3U);  // 5K1, K5, C5
}

TEST(Schlafli, Parameters) {
  const FiniteGraph g = schlafli_graph();
  ASSERT_EQ(g.order(), 27);
  for (int v = 0; v < 27; ++v) EXPECT_EQ(g.degree(v), 10);
  // Strongly regular (27, 10, 1, 5), checked from adjacency directly.
  for (int u = 0; u < 27; ++u) {
    for (int v = u + 1; v < 27; ++v) {
      EXPECT_EQ(oracle::common_neighbours(g, {u, v}), g.adjacent(u, v) ? 1 : 5);
    }
  }
  EXPECT_EQ(schlafli_label(0), "a1");
  EXPECT_EQ(schlafli_label(6), "b1");
  EXPECT_EQ(schlafli_label(12), "c12");
  EXPECT_EQ(schlafli_label(26), "c56");
}

TEST(Schlafli, FourVertexCensus) {
  const FiniteGraph g = schlafli_graph();
  const auto census = four_vertex_census(g);
  EXPECT_EQ(census.realized.size(), 53U);
  ASSERT_EQ(census.missing.size(), 11U);
  // Missing types by edge count: K4 (6 edges, 1 labelling), K4-e (5 edges,
  // 6 labellings), K3+K1 (3 edges forming a triangle, 4 labellings).
  int k4 = 0;
  int k4e = 0;
  int triangle = 0;
  for (int mask : census.missing) {
    const int edges = std::popcount(static_cast<unsigned>(mask));
    if (edges == 6) ++k4;
    if (edges == 5) ++k4e;
    if (edges == 3) ++triangle;
  }
  EXPECT_EQ(k4, 1);
  EXPECT_EQ(k4e, 6);
  EXPECT_EQ(triangle, 4);
  EXPECT_TRUE(is_t_homogeneous(g, 4).holds);
  EXPECT_TRUE(is_t_tuple_regular(g, 4).holds);
  EXPECT_FALSE(is_homogeneous(g).holds);
}
