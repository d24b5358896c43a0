#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "homlab/graph.hpp"

namespace homlab::sumfree {

/// A finite set of positive integers, sorted, examined up to `horizon`.
struct SumFreeSet {
  std::vector<std::uint64_t> elements;
  std::uint64_t horizon = 0;
};

struct SumFreeReport {
  bool holds = true;
  /// x <= y with x + y = z, all in the set; the least such z, then least x.
  std::optional<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> witness;
};

/// x = y is allowed in a forbidden sum. Zero is rejected with InvalidVertex.
SumFreeReport is_sum_free(std::span<const std::uint64_t> s);

struct SumFreeCensus {
  int n = 0;
  std::uint64_t total = 0;      // sum-free subsets of {1..n}, the empty set included
  std::uint64_t odd_type = 0;   // subsets of the odd numbers
  std::uint64_t top_type = 0;   // subsets of (n/2, n]
  std::uint64_t both_types = 0; // subsets of the odd numbers in (n/2, n]
  std::uint64_t other = 0;      // neither type
  /// total / 2^(n/2): exactly ratio_numerator / 2^floor(n/2), further
  /// divided by sqrt(2) when n is odd.
  std::uint64_t ratio_numerator = 0;
  int ratio_denominator_log2 = 0;
  bool ratio_over_sqrt2 = false;
  double ratio = 0.0;
};

/// Exact enumeration by backtracking over increasing elements. n <= 42.
SumFreeCensus census(int n);

/// Coin-toss construction: n = 1..N in turn is excluded when it is a sum of
/// two chosen elements, otherwise chosen with probability 1/2. The generator
/// is a 64-bit Mersenne twister seeded with `seed`. N <= 10^6.
SumFreeSet random_sum_free(std::uint64_t seed, std::uint64_t n_max);

/// Seed of trial t derived from a master seed (splitmix64 mixing).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

struct HistogramBin {
  double low = 0;
  double high = 0;
  std::uint64_t count = 0;
};

struct DensityReport {
  std::uint64_t trials = 0;
  std::uint64_t n_max = 0;
  std::vector<HistogramBin> histogram;  // densities |S|/N of every trial
  std::uint64_t no_even_trials = 0;
  double no_even_fraction = 0.0;
  /// Mean density over the trials with no even element (0 if none).
  double mean_density_no_even = 0.0;
  double mean_density = 0.0;
  /// Trials with density below 1/6; reported, not judged.
  std::uint64_t below_one_sixth = 0;
};

/// Runs `trials` independent constructions (trial t seeded by
/// trial_seed(seed, t)), optionally on several threads; the report does not
/// depend on the worker count. trials * N <= 10^10.
DensityReport density_experiment(std::uint64_t trials, std::uint64_t n_max, std::uint64_t seed,
                                 double bin_width = 0.01, int workers = 1);

/// The graph on 0..m-1 with x ~ y iff |x - y| is in S. m <= 10^4.
FiniteGraph circulant_window(std::span<const std::uint64_t> s, int m);

struct ExtensionFailure {
  std::vector<int> u;
  std::vector<int> v;
};

struct HensonReport {
  std::uint64_t queries = 0;
  std::uint64_t satisfied = 0;
  /// Queries with no witness up to the bound (first 1000 kept).
  std::vector<ExtensionFailure> failures;
  std::uint64_t failure_count = 0;
  bool passed = true;
};

/// For all disjoint U, V within 0..m-1 with |U|, |V| <= k and U independent
/// in the graph of S, searches z in 0..bound adjacent to every vertex of U and
/// to none of V. k <= 3, m <= 64.
HensonReport henson_window_check(std::span<const std::uint64_t> s, int k, int m, std::uint64_t bound);

/// Parameters of the gap construction below.
struct GapConstruction {
  int window = 32;     // demands are subsets U of 0..window-1
  int max_u = 2;       // with |U| <= max_u
  int gap_step = 1;    // block i starts at least i * gap_step past the previous block
};

/// A sum-free set built block by block. For each U in the demand list
/// (sizes 0..max_u, lexicographic), a witness z is placed past the previous
/// block by a gap that grows with the block index, and the differences z - u
/// (u in U) are added. A candidate z is accepted only when the enlarged set
/// stays sum-free, z is non-adjacent to every window vertex outside U, and
/// every earlier witness keeps its neighbourhood in the window.
SumFreeSet greedy_gap_set(const GapConstruction& params);

/// Witnesses chosen by greedy_gap_set, one per demand, in demand order.
std::vector<std::uint64_t> greedy_gap_witnesses(const GapConstruction& params);

/// Parses "1,3,8" into a sorted set. Throws ParseError.
std::vector<std::uint64_t> parse_set(const std::string& text);

}  // namespace homlab::sumfree
