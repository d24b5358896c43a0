#include <gtest/gtest.h>

#include "homlab/errors.hpp"
#include "homlab/rado.hpp"

using namespace homlab;
using namespace homlab::rado;

namespace {

bool naive_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// q is a nonzero square mod p, by listing the squares.
bool naive_residue(std::uint64_t q, std::uint64_t p) {
  for (std::uint64_t x = 1; x < p; ++x)
    if (x * x % p == q % p) return true;
  return false;
}

bool brute_adjacent(Vertex x, Vertex y) {
  const Vertex lo = std::min(x, y);
  const Vertex hi = std::max(x, y);
  // Binary digits of hi, read off by repeated halving.
  Vertex v = hi;
  for (Vertex i = 0; i < lo; ++i) v /= 2;
  return lo < 64 && v % 2 == 1;
}

}  // namespace

TEST(Rado, BitAdjacencyExamples) {
  EXPECT_TRUE(rado_adjacent(0, 1));
  EXPECT_FALSE(rado_adjacent(0, 2));
  EXPECT_TRUE(rado_adjacent(1, 2));
  EXPECT_THROW(rado_adjacent(4, 4), SelfLoop);
  for (Vertex x = 0; x < 80; ++x)
    for (Vertex y = 0; y < 80; ++y)
      if (x != y) EXPECT_EQ(rado_adjacent(x, y), brute_adjacent(x, y));
}

TEST(Rado, PrimeAdjacencyExamples) {
  EXPECT_TRUE(prime_graph_adjacent(5, 29));
  EXPECT_FALSE(prime_graph_adjacent(5, 13));
  EXPECT_THROW(prime_graph_adjacent(7, 13), InvalidVertex);
  EXPECT_THROW(prime_graph_adjacent(15, 13), InvalidVertex);
  EXPECT_THROW(prime_graph_adjacent(13, 13), SelfLoop);
}

TEST(Rado, PrimeOracleMatchesNaiveArithmetic) {
  const PrimeOracle o(2000);
  std::vector<Vertex> primes;
  for (Vertex p = 0; p < 3000; ++p) {
    EXPECT_EQ(o.contains(p), p % 4 == 1 && naive_prime(p)) << p;
    if (p % 4 == 1 && naive_prime(p)) primes.push_back(p);
  }
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 40; ++j)
      if (i != j) EXPECT_EQ(o.adjacent(primes[i], primes[j]), naive_residue(primes[j], primes[i]));
  EXPECT_EQ(o.next_vertex(0), 5U);
  EXPECT_EQ(o.next_vertex(14), 17U);
}

TEST(Rado, QuadraticReciprocitySymmetry) {
  const PrimeOracle o(10000);
  std::vector<Vertex> primes;
  for (auto p = o.next_vertex(0); p && *p < 2000; p = o.next_vertex(*p + 1)) primes.push_back(*p);
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::size_t j = i + 1; j < primes.size(); ++j)
      ASSERT_EQ(prime_graph_adjacent(primes[i], primes[j]), prime_graph_adjacent(primes[j], primes[i]));
}

TEST(Rado, ExtensionWitnessIsLeast) {
  const BitOracle o;
  const std::vector<Vertex> u{0, 2};
  const std::vector<Vertex> v{1};
  EXPECT_EQ(extension_witness(o, u, v, 1000), 5U);
  // Least by exhaustive scan.
  for (Vertex z = 0; z < 5; ++z) {
    if (z == 0 || z == 1 || z == 2) continue;
    EXPECT_FALSE(brute_adjacent(z, 0) && brute_adjacent(z, 2) && !brute_adjacent(z, 1));
  }
  EXPECT_EQ(extension_witness(o, u, v, 4), std::nullopt);
  const std::vector<Vertex> overlap{2};
  EXPECT_THROW(extension_witness(o, u, overlap, 10), InvalidVertex);
}

TEST(Rado, ExtensionPropertyOnSmallWindow) {
  const BitOracle o;
  for (int code = 0; code < 729; ++code) {  // 3^6 patterns over {0..5}
    std::vector<Vertex> u;
    std::vector<Vertex> v;
    int c = code;
    for (Vertex x = 0; x < 6; ++x, c /= 3) {
      if (c % 3 == 1) u.push_back(x);
      if (c % 3 == 2) v.push_back(x);
    }
    const auto z = extension_witness(o, u, v, 1 << 12);
    ASSERT_TRUE(z.has_value());
    for (Vertex x : u) EXPECT_TRUE(brute_adjacent(*z, x));
    for (Vertex x : v) EXPECT_FALSE(brute_adjacent(*z, x));
  }
}

TEST(Rado, BackAndForthBetweenBitCopies) {
  const BitOracle a;
  const BitOracle b;
  const OracleMap m = back_and_forth(a, b, 10, 1 << 20);
  EXPECT_EQ(m.pairs.size(), 10U);
  EXPECT_TRUE(m.is_valid(a, b));
}

TEST(Rado, BackAndForthReportsTheBound) {
  const BitOracle a;
  const PrimeOracle b(100000);
  const auto r = try_back_and_forth(a, b, 40, 100000);
  EXPECT_FALSE(r.complete);
  EXPECT_TRUE(r.stuck_vertex.has_value());
  EXPECT_TRUE(r.map.is_valid(a, b));
  EXPECT_THROW(back_and_forth(a, b, 40, 100000), WitnessNotFound);
}

TEST(Rado, FiniteOracleRejectsOutsideVertices) {
  const FiniteGraphOracle o(graphs::cycle(5));
  EXPECT_TRUE(o.contains(4));
  EXPECT_FALSE(o.contains(5));
  EXPECT_EQ(o.next_vertex(5), std::nullopt);
  const std::vector<Vertex> u{7};
  EXPECT_THROW(extension_witness(o, u, {}, 10), InvalidVertex);
  // In C5 the only common neighbour of 0 and 2 is 1.
  const std::vector<Vertex> uu{0, 2};
  const std::vector<Vertex> vv{1};
  EXPECT_EQ(extension_witness(o, uu, vv, 10), std::nullopt);
}

TEST(Rado, CommonNeighbours) {
  const auto r = common_neighbour_check(BitOracle{}, 3, 6, 1 << 12);
  EXPECT_TRUE(r.all_found);
  EXPECT_EQ(r.entries.size(), 6U + 15 + 20);
  // K5 on 0..4 has no common neighbour for the whole vertex set.
  const auto k5 = common_neighbour_check(FiniteGraphOracle(graphs::complete(5)), 5, 5, 10);
  EXPECT_FALSE(k5.all_found);
  EXPECT_EQ(k5.found, 5U + 10 + 10 + 5);
  EXPECT_THROW(common_neighbour_check(BitOracle{}, 6, 6, 10), SizeLimit);
}

TEST(Rado, CirculantOracle) {
  const CirculantOracle o({1, 4});
  EXPECT_TRUE(o.adjacent(3, 7));
  EXPECT_TRUE(o.adjacent(7, 6));
  EXPECT_FALSE(o.adjacent(2, 4));
  EXPECT_THROW(CirculantOracle({0, 2}), SelfLoop);
}
