#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>

#include "homlab/enumerate.hpp"
#include "homlab/errors.hpp"
#include "homlab/rigid.hpp"
#include "oracles.hpp"

using namespace homlab;
using namespace homlab::rigid;

namespace {

std::uint64_t double_factorial(int k) {
  std::uint64_t r = 1;
  for (int i = k; i > 1; i -= 2) r *= static_cast<std::uint64_t>(i);
  return r;
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

// Pattern containment by trying every subset of positions.
bool brute_contains(const std::vector<int>& p, const std::vector<int>& q) {
  const int k = static_cast<int>(p.size());
  const int n = static_cast<int>(q.size());
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    std::vector<int> vals;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1U) vals.push_back(q[i]);
    bool ok = true;
    for (int a = 0; a < k && ok; ++a)
      for (int b = 0; b < k && ok; ++b) ok = (p[a] < p[b]) == (vals[a] < vals[b]);
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST(Trees, ParseAndPrint) {
  const auto t = RootedBinaryTree::parse("((0,1),2)");
  EXPECT_EQ(t.leaf_count(), 3);
  EXPECT_EQ(t.to_string(), "((0,1),2)");
  EXPECT_EQ(RootedBinaryTree::parse("(2,(1,0))").canonical_string(), "((0,1),2)");
  EXPECT_THROW(RootedBinaryTree::parse("((0,1),3)"), ParseError);
  EXPECT_THROW(RootedBinaryTree::parse("((0,1),2"), ParseError);
  EXPECT_THROW(RootedBinaryTree::parse("(0,1,2)"), ParseError);
}

TEST(Trees, CountsAreDoubleFactorials) {
  for (int l = 1; l <= 7; ++l) {
    const auto trees = all_trees(l);
    EXPECT_EQ(trees.size(), l < 2 ? 1U : double_factorial(2 * l - 3)) << l;
    std::set<std::string> distinct;
    for (const auto& t : trees) distinct.insert(t.canonical_string());
    EXPECT_EQ(distinct.size(), trees.size());
  }
}

TEST(CRelation, FigureOneTriple) {
  const auto gamma = c_relation_of_tree(RootedBinaryTree::parse("((0,1),2)"));
  EXPECT_TRUE(gamma.holds(0, {0, 1, 2}));
  EXPECT_TRUE(gamma.holds(0, {1, 0, 2}));
  EXPECT_FALSE(gamma.holds(0, {0, 2, 1}));
  EXPECT_EQ(gamma.tuple_count(0), 2U);
}

TEST(CRelation, RoundTripAndTwoGroups) {
  for (int l = 1; l <= 7; ++l) {
    for (const auto& t : all_trees(l)) {
      const auto gamma = c_relation_of_tree(t);
      ASSERT_EQ(tree_of_c_relation(gamma).canonical_string(), t.canonical_string());
      EXPECT_TRUE(is_c_relation(gamma));
      const BigInt order = c_aut_order(gamma);
      EXPECT_TRUE(order > 0 && (order & (order - 1)) == 0) << t.to_string();
      if (l <= 6) EXPECT_EQ(order, BigInt(oracle::automorphism_count(gamma))) << t.to_string();
    }
  }
  EXPECT_EQ(c_aut_order(c_relation_of_tree(balanced_tree(3))), 128);
  EXPECT_EQ(c_aut_order(c_relation_of_tree(caterpillar(5))), 2);
}

TEST(CRelation, RejectsNonTrees) {
  RelationalStructure bad(c_relation_signature(), 3);
  bad.set(0, {0, 1, 2});  // missing the symmetric triple
  EXPECT_FALSE(is_c_relation(bad));
  EXPECT_THROW(tree_of_c_relation(bad), NotACRelation);
}

TEST(Tournaments, OddAutomorphismOrders) {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& t : tournaments_up_to_isomorphism(n)) {
      const BigInt order = tournament_aut_order(t);
      EXPECT_EQ(order % 2, 1);
      if (n <= 5) EXPECT_EQ(order, BigInt(oracle::automorphism_count(t)));
    }
  }
}

TEST(Tournaments, ParseFormats) {
  const auto from_arcs = parse_tournament("3\n0 1\n1 2\n2 0\n");
  const auto from_matrix = parse_tournament("010\n001\n100\n");
  EXPECT_EQ(from_arcs, from_matrix);
  EXPECT_EQ(tournament_aut_order(from_arcs), 3);
  EXPECT_THROW(parse_tournament("3\n0 1\n1 2\n"), ParseError);
  EXPECT_THROW(parse_tournament("011\n001\n100\n"), ParseError);
}

TEST(Tournaments, QuadraticResidueTournament) {
  const std::vector<std::uint64_t> primes{3, 7, 11, 19, 23};
  const auto t = quadratic_residue_tournament(primes);
  EXPECT_TRUE(is_tournament(t));
  // 7 is 1 mod 3, a square; so 3 -> 7.
  EXPECT_TRUE(t.holds(0, {0, 1}));
}

TEST(Superposition, SampledPairsAreRigid) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const auto trees = all_trees(n);
    const auto& tree = trees[rng() % trees.size()];
    const auto s = superpose(random_tournament(n, rng), c_relation_of_tree(tree));
    EXPECT_EQ(oracle::automorphism_count(s), 1U);
    EXPECT_EQ(automorphisms(s).order, 1);
  }
  EXPECT_THROW(superpose(random_tournament(3, rng), c_relation_of_tree(caterpillar(4))), DomainMismatch);
}

TEST(Superposition, RamseyFailureColouring) {
  const auto cyclic = parse_tournament("010\n001\n100\n");
  const auto s = superpose(cyclic, c_relation_of_tree(RootedBinaryTree::parse("((0,1),2)")));
  for (const std::vector<int>& order : {std::vector<int>{0, 1, 2}, {2, 0, 1}, {1, 2, 0}, {2, 1, 0}}) {
    const auto r = ramsey_failure_colouring(s, order);
    ASSERT_EQ(r.cyclic_triples.size(), 1U);
    EXPECT_GT(r.cyclic_triples[0].red, 0);
    EXPECT_GT(r.cyclic_triples[0].blue, 0);
    EXPECT_TRUE(r.certified);
    EXPECT_EQ(r.colouring.size(), 3U);
  }
}

TEST(Patterns, Examples) {
  const std::vector<int> p{1, 3, 2};
  const std::vector<int> q{4, 1, 5, 3, 2};
  const auto m = pattern_contains(p, q);
  EXPECT_TRUE(m.found);
  EXPECT_EQ(m.positions, (std::vector<int>{1, 2, 3}));
  const std::vector<int> up{1, 2, 3};
  const std::vector<int> down{3, 2, 1};
  EXPECT_FALSE(pattern_contains(up, down).found);
}

TEST(Patterns, AgreeWithBruteForce) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> q(8);
    std::iota(q.begin(), q.end(), 1);
    std::shuffle(q.begin(), q.end(), rng);
    std::vector<int> p(3 + trial % 3);
    std::iota(p.begin(), p.end(), 1);
    std::shuffle(p.begin(), p.end(), rng);
    EXPECT_EQ(pattern_contains(p, q).found, brute_contains(p, q));
  }
}

TEST(MultiOrders, TwoOrderRoundTrip) {
  std::vector<int> perm{3, 1, 4, 2, 5};
  const auto s = two_order_of_permutation(perm);
  EXPECT_EQ(permutation_of_two_order(s), perm);
  EXPECT_EQ(s.signature(), multiorder_signature(2));
}

TEST(MultiOrders, Kronecker) {
  EXPECT_TRUE(rationally_independent(std::vector<Surd>{{1, 0, 0}, {0, 1, 2}}));
  EXPECT_FALSE(rationally_independent(std::vector<Surd>{{1, 0, 0}, {2, 0, 0}}));
  const std::vector<std::vector<Surd>> dirs{{parse_surd("1"), parse_surd("sqrt2")}};
  const auto m = kronecker_multiorder(dirs, 2);
  EXPECT_EQ(m.points.size(), 25U);
  EXPECT_EQ(m.ranks[0].size(), 25U);
  const auto rs = m.to_structure();
  EXPECT_EQ(rs.tuple_count(0), 25U * 24 / 2);
  const std::vector<std::vector<Surd>> flat{{parse_surd("1"), parse_surd("2")}};
  EXPECT_THROW(kronecker_multiorder(flat, 2), DegenerateDirection);
  EXPECT_THROW(parse_surd("sqrt"), ParseError);
}
