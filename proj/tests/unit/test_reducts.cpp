#include <gtest/gtest.h>

#include <random>

#include "homlab/errors.hpp"
#include "homlab/reducts.hpp"
#include "oracles.hpp"

using namespace homlab;
using namespace homlab::reducts;

namespace {

// Separation from the definition: walking round the circle from x, exactly
// one of y and w is met before z.
bool separated(int x, int y, int z, int w, int n) {
  auto pos = [&](int v) { return (v - x + n) % n; };
  return (pos(y) < pos(z)) != (pos(w) < pos(z));
}

}  // namespace

TEST(Switching, FlipsCrossPairsOnly) {
  const FiniteGraph g = graphs::path(3);
  const std::vector<int> y{0};
  const FiniteGraph h = switch_graph(g, y);
  EXPECT_FALSE(h.adjacent(0, 1));
  EXPECT_TRUE(h.adjacent(0, 2));
  EXPECT_TRUE(h.adjacent(1, 2));
  EXPECT_EQ(switch_graph(h, y), g);
  const std::vector<int> bad{3};
  EXPECT_THROW(switch_graph(g, bad), InvalidVertex);
}

TEST(Switching, WitnessRecoversTheSet) {
  const FiniteGraph g = graphs::path(3);
  const std::vector<int> y{0};
  const auto w = switching_witness(g, switch_graph(g, y));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(*w, (std::vector<int>{1, 2}));  // the complement of {0}
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const FiniteGraph a = oracle::random_graph(7, 0.5, rng);
    std::vector<int> set;
    for (int v = 0; v < 7; ++v)
      if (rng() % 2) set.push_back(v);
    const auto found = switching_witness(a, switch_graph(a, set));
    ASSERT_TRUE(found.has_value());
    EXPECT_EQ(switch_graph(a, *found), switch_graph(a, set));
  }
  EXPECT_FALSE(switching_witness(graphs::complete(4), graphs::path(4)).has_value());
  EXPECT_THROW(switching_witness(graphs::path(3), graphs::path(4)), DomainMismatch);
}

TEST(Switching, AutomorphismWitness) {
  // Relabelling C5 by a rotation is an automorphism, so Y is empty.
  const std::vector<int> rot{1, 2, 3, 4, 0};
  const auto w = switching_automorphism_witness(graphs::cycle(5), rot);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->empty());
  // The transposition (0 1) of P3 needs a switch.
  const std::vector<int> swap{1, 0, 2};
  const auto s = switching_automorphism_witness(graphs::path(3), swap);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(switch_graph(graphs::path(3), *s), relabel(graphs::path(3), swap));
}

TEST(Reducts, RelationsMatchDefinitions) {
  const int n = 6;
  const auto sep = reduct_relation(n, ReductKind::Separation);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) {
          const bool distinct = x != y && x != z && x != w && y != z && y != w && z != w;
          EXPECT_EQ(sep.holds(0, {x, y, z, w}), distinct && separated(x, y, z, w, n));
        }
  EXPECT_EQ(reduct_relation(n, ReductKind::Order).tuple_count(0), 15U);
  EXPECT_EQ(reduct_relation(n, ReductKind::Betweenness).tuple_count(0), 40U);
  EXPECT_EQ(reduct_relation(n, ReductKind::Circular).tuple_count(0), 60U);
  EXPECT_THROW(reduct_relation(3, ReductKind::Separation), SizeLimit);
  EXPECT_EQ(parse_reduct("pure-set"), ReductKind::PureSet);
  EXPECT_THROW(parse_reduct("cyclic"), ParseError);
}

TEST(Reducts, GroupOrdersMatchBruteForce) {
  for (int n = 4; n <= 6; ++n) {
    for (ReductKind k : kAllReducts) {
      const auto rel = reduct_relation(n, k);
      EXPECT_EQ(reduct_group_order(n, k), BigInt(oracle::automorphism_count(rel))) << to_string(k) << " n=" << n;
    }
  }
}

TEST(Reducts, OrdersFollowThePattern) {
  for (int n = 4; n <= 7; ++n) {
    const auto r = reduct_lattice(n);
    BigInt factorial = 1;
    for (int i = 2; i <= n; ++i) factorial *= i;
    EXPECT_EQ(r.orders[0], 1);
    EXPECT_EQ(r.orders[1], 2);
    EXPECT_EQ(r.orders[2], n);
    EXPECT_EQ(r.orders[3], 2 * n);
    EXPECT_EQ(r.orders[4], factorial);
  }
}

TEST(Reducts, Containments) {
  const auto r = reduct_lattice(5);
  const std::size_t order = 0, between = 1, circ = 2, sep = 3, pure = 4;
  for (std::size_t j = 0; j < 5; ++j) {
    EXPECT_TRUE(r.contains[order][j]);
    EXPECT_TRUE(r.contains[j][pure]);
    EXPECT_TRUE(r.contains[j][j]);
  }
  EXPECT_TRUE(r.contains[between][sep]);
  EXPECT_TRUE(r.contains[circ][sep]);
  // Reversal preserves betweenness but not the cyclic orientation, and a
  // rotation does the opposite, so the two middle groups are incomparable.
  EXPECT_FALSE(r.contains[between][circ]);
  EXPECT_FALSE(r.contains[circ][between]);
  EXPECT_FALSE(r.chain);
}
