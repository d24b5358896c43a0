#include <gtest/gtest.h>

#include <cmath>

#include "homlab/errors.hpp"
#include "homlab/sumfree.hpp"
#include "oracles.hpp"

using namespace homlab;
using namespace homlab::sumfree;

TEST(SumFree, Predicate) {
  const std::vector<std::uint64_t> odd{1, 3, 5, 7};
  EXPECT_TRUE(is_sum_free(odd).holds);
  const std::vector<std::uint64_t> bad{1, 2, 4};
  const auto r = is_sum_free(bad);
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(r.witness, std::make_tuple(std::uint64_t{1}, std::uint64_t{1}, std::uint64_t{2}));
  const std::vector<std::uint64_t> zero{0, 3};
  EXPECT_THROW(is_sum_free(zero), InvalidVertex);
}

TEST(SumFree, CensusMatchesBruteForce) {
  for (int n = 0; n <= 18; ++n) EXPECT_EQ(census(n).total, oracle::sum_free_subsets(n)) << n;
  EXPECT_EQ(census(3).total, 6U);
  EXPECT_EQ(census(4).total, 9U);
}

TEST(SumFree, CensusTypesAreConsistent) {
  for (int n = 1; n <= 24; ++n) {
    const auto c = census(n);
    // Inclusion-exclusion over the two structured families.
    EXPECT_EQ(c.odd_type, std::uint64_t{1} << ((n + 1) / 2));
    EXPECT_EQ(c.top_type, std::uint64_t{1} << (n - n / 2));
    EXPECT_EQ(c.total, c.odd_type + c.top_type - c.both_types + c.other);
    const double exact = static_cast<double>(c.ratio_numerator) / std::ldexp(1.0, c.ratio_denominator_log2) /
                         (c.ratio_over_sqrt2 ? std::sqrt(2.0) : 1.0);
    EXPECT_NEAR(c.ratio, exact, 1e-12 * exact);
    EXPECT_NEAR(c.ratio, static_cast<double>(c.total) / std::pow(2.0, n / 2.0), 1e-9 * c.ratio);
  }
  EXPECT_THROW(census(43), SizeLimit);
}

TEST(SumFree, RandomConstructionIsSumFreeAndDeterministic) {
  const auto a = random_sum_free(7, 500);
  EXPECT_TRUE(is_sum_free(a.elements).holds);
  EXPECT_EQ(a.elements, random_sum_free(7, 500).elements);
  EXPECT_NE(a.elements, random_sum_free(8, 500).elements);
  // Coins are drawn in order of n, so a shorter run is a prefix.
  const auto prefix = random_sum_free(7, 200);
  std::vector<std::uint64_t> cut;
  for (auto x : a.elements)
    if (x <= 200) cut.push_back(x);
  EXPECT_EQ(prefix.elements, cut);
}

TEST(SumFree, DensityExperimentIndependentOfWorkers) {
  const auto one = density_experiment(400, 300, 11, 0.05, 1);
  const auto three = density_experiment(400, 300, 11, 0.05, 3);
  EXPECT_EQ(one.no_even_trials, three.no_even_trials);
  EXPECT_EQ(one.mean_density, three.mean_density);
  ASSERT_EQ(one.histogram.size(), three.histogram.size());
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < one.histogram.size(); ++i) {
    EXPECT_EQ(one.histogram[i].count, three.histogram[i].count);
    total += one.histogram[i].count;
  }
  EXPECT_EQ(total, 400U);
}

TEST(SumFree, DensityExperimentCountsMatchDirectRuns) {
  const auto r = density_experiment(50, 200, 3);
  std::uint64_t no_even = 0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto s = random_sum_free(trial_seed(3, t), 200);
    no_even += std::none_of(s.elements.begin(), s.elements.end(), [](std::uint64_t x) { return x % 2 == 0; });
  }
  EXPECT_EQ(r.no_even_trials, no_even);
}

TEST(SumFree, CirculantWindow) {
  const std::vector<std::uint64_t> s{1, 3, 8};
  const FiniteGraph g = circulant_window(s, 20);
  for (int i = 0; i + 1 < 19; ++i)
    for (int j = 0; j + 1 < 19; ++j)
      if (i != j) EXPECT_EQ(g.adjacent(i, j), g.adjacent(i + 1, j + 1));
  // Sum-free sets give triangle-free windows and vice versa.
  for (std::uint64_t mask = 1; mask < 256; ++mask) {
    std::vector<std::uint64_t> set;
    for (int b = 0; b < 8; ++b)
      if ((mask >> b) & 1U) set.push_back(static_cast<std::uint64_t>(b + 1));
    const FiniteGraph w = circulant_window(set, 24);
    bool triangle = false;
    for (int a = 0; a < 24 && !triangle; ++a)
      for (int b = a + 1; b < 24 && !triangle; ++b)
        for (int c = b + 1; c < 24 && !triangle; ++c) triangle = w.adjacent(a, b) && w.adjacent(b, c) && w.adjacent(a, c);
    EXPECT_EQ(!triangle, is_sum_free(set).holds) << mask;
  }
}

TEST(SumFree, HensonCheck) {
  const std::vector<std::uint64_t> one{1};
  const auto fail = henson_window_check(one, 2, 8, 100);
  EXPECT_FALSE(fail.passed);
  EXPECT_GT(fail.failure_count, 0U);
  const GapConstruction params{16, 2, 1};
  const auto gap = greedy_gap_set(params);
  EXPECT_TRUE(is_sum_free(gap.elements).holds);
  const auto ok = henson_window_check(gap.elements, 2, 16, 2 * gap.horizon);
  EXPECT_TRUE(ok.passed);
  EXPECT_EQ(ok.satisfied, ok.queries);
}

TEST(SumFree, GapWitnessesSatisfyTheirDemands) {
  const GapConstruction params{8, 2, 1};
  const auto set = greedy_gap_set(params);
  const auto witnesses = greedy_gap_witnesses(params);
  ASSERT_EQ(witnesses.size(), 1U + 8 + 28);
  auto adjacent = [&](std::uint64_t x, std::uint64_t y) {
    const std::uint64_t d = x > y ? x - y : y - x;
    return std::binary_search(set.elements.begin(), set.elements.end(), d);
  };
  // Demands in order: the empty set, then singletons, then pairs.
  std::size_t k = 0;
  std::vector<std::vector<std::uint64_t>> demands{{}};
  for (std::uint64_t a = 0; a < 8; ++a) demands.push_back({a});
  for (std::uint64_t a = 0; a < 8; ++a)
    for (std::uint64_t b = a + 1; b < 8; ++b) demands.push_back({a, b});
  for (const auto& u : demands) {
    const std::uint64_t z = witnesses[k++];
    for (std::uint64_t x = 0; x < 8; ++x) {
      const bool in_u = std::find(u.begin(), u.end(), x) != u.end();
      EXPECT_EQ(adjacent(z, x), in_u) << "z=" << z << " x=" << x;
    }
  }
}

TEST(SumFree, ParseSet) {
  EXPECT_EQ(parse_set("8,1,3"), (std::vector<std::uint64_t>{1, 3, 8}));
  EXPECT_THROW(parse_set("1,,3"), ParseError);
  EXPECT_THROW(parse_set("1,x"), ParseError);
}
