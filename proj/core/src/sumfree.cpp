#include "homlab/sumfree.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <thread>
#include <unordered_set>

#include "homlab/errors.hpp"

namespace homlab::sumfree {

SumFreeReport is_sum_free(std::span<const std::uint64_t> s) {
  std::vector<std::uint64_t> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (!sorted.empty() && sorted.front() == 0) throw InvalidVertex("sum-free sets contain positive integers only");
  SumFreeReport report;
  for (std::uint64_t z : sorted) {
    for (std::uint64_t x : sorted) {
      if (2 * x > z) break;
      if (std::binary_search(sorted.begin(), sorted.end(), z - x)) {
        report.holds = false;
        report.witness = std::tuple{x, z - x, z};
        return report;
      }
    }
  }
  return report;
}

SumFreeCensus census(int n) {
  if (n < 0) throw Error("census needs n >= 0");
  if (n > 42) throw SizeLimit("sum-free census", 42);
  SumFreeCensus c;
  c.n = n;
  // Bit k stands for the integer k; bit 0 is unused.
  const std::uint64_t all = n == 0 ? 0 : ((std::uint64_t{1} << (n + 1)) - 2);
  std::uint64_t evens = 0;
  std::uint64_t low = 0;
  for (int k = 1; k <= n; ++k) {
    if (k % 2 == 0) evens |= std::uint64_t{1} << k;
    if (2 * k <= n) low |= std::uint64_t{1} << k;
  }
  std::function<void(int, std::uint64_t, std::uint64_t)> rec = [&](int next, std::uint64_t set, std::uint64_t sums) {
    ++c.total;
    const bool odd = (set & evens) == 0;
    const bool top = (set & low) == 0;
    c.odd_type += odd;
    c.top_type += top;
    c.both_types += odd && top;
    for (int k = next; k <= n; ++k) {
      if ((sums >> k) & 1U) continue;
      const std::uint64_t grown = set | (std::uint64_t{1} << k);
      std::uint64_t new_sums = sums | (grown << k);
      rec(k + 1, grown, new_sums & all);
    }
  };
  rec(1, 0, 0);
  c.other = c.total - (c.odd_type + c.top_type - c.both_types);
  c.ratio_numerator = c.total;
  c.ratio_denominator_log2 = n / 2;
  c.ratio_over_sqrt2 = n % 2 == 1;
  c.ratio = static_cast<double>(c.total) / std::pow(2.0, n / 2.0);
  return c;
}

SumFreeSet random_sum_free(std::uint64_t seed, std::uint64_t n_max) {
  if (n_max > 1'000'000) throw SizeLimit("random sum-free horizon", 1'000'000);
  const std::size_t words = static_cast<std::size_t>(n_max / 64 + 1);
  std::vector<std::uint64_t> set(words, 0);
  std::vector<std::uint64_t> sums(words, 0);
  std::mt19937_64 rng(seed);
  std::uint64_t coins = 0;
  int coins_left = 0;
  SumFreeSet out;
  out.horizon = n_max;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    if ((sums[n / 64] >> (n % 64)) & 1U) continue;
    if (coins_left == 0) {
      coins = rng();
      coins_left = 64;
    }
    const bool take = coins & 1U;
    coins >>= 1;
    --coins_left;
    if (!take) continue;
    out.elements.push_back(n);
    set[n / 64] |= std::uint64_t{1} << (n % 64);
    // sums |= set << n, truncated to the horizon.
    const std::size_t ws = static_cast<std::size_t>(n / 64);
    const unsigned bs = static_cast<unsigned>(n % 64);
    for (std::size_t w = words; w-- > ws;) {
      const std::size_t src = w - ws;
      std::uint64_t v = set[src] << bs;
      if (bs != 0 && src > 0) v |= set[src - 1] >> (64 - bs);
      sums[w] |= v;
    }
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

DensityReport density_experiment(std::uint64_t trials, std::uint64_t n_max, std::uint64_t seed, double bin_width,
                                 int workers) {
  if (n_max == 0) throw Error("density experiment needs N >= 1");
  if (static_cast<double>(trials) * static_cast<double>(n_max) > 1e10) {
    throw SizeLimit("density experiment trials * N", 10'000'000'000ULL);
  }
  if (!(bin_width > 0 && bin_width <= 1)) throw Error("bin width must lie in (0, 1]");
  std::vector<std::uint32_t> sizes(trials);
  std::vector<std::uint8_t> no_even(trials);
  auto work = [&](std::uint64_t first, std::uint64_t stride) {
    for (std::uint64_t t = first; t < trials; t += stride) {
      const SumFreeSet s = random_sum_free(trial_seed(seed, t), n_max);
      sizes[t] = static_cast<std::uint32_t>(s.elements.size());
      no_even[t] = std::none_of(s.elements.begin(), s.elements.end(), [](std::uint64_t x) { return x % 2 == 0; });
    }
  };
  const auto w = static_cast<std::uint64_t>(std::max(1, workers));
  if (w == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::uint64_t i = 0; i < w; ++i) pool.emplace_back(work, i, w);
  }
  DensityReport r;
  r.trials = trials;
  r.n_max = n_max;
  const auto bins = static_cast<std::size_t>(std::ceil(1.0 / bin_width - 1e-9));
  for (std::size_t b = 0; b < bins; ++b) {
    r.histogram.push_back({static_cast<double>(b) * bin_width, std::min(1.0, static_cast<double>(b + 1) * bin_width), 0});
  }
  std::uint64_t total_size = 0;
  std::uint64_t no_even_size = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const double density = static_cast<double>(sizes[t]) / static_cast<double>(n_max);
    const auto b = std::min(bins - 1, static_cast<std::size_t>(density / bin_width));
    ++r.histogram[b].count;
    total_size += sizes[t];
    if (no_even[t]) {
      ++r.no_even_trials;
      no_even_size += sizes[t];
    }
    if (6 * static_cast<std::uint64_t>(sizes[t]) < n_max) ++r.below_one_sixth;
  }
  if (trials > 0) {
    r.no_even_fraction = static_cast<double>(r.no_even_trials) / static_cast<double>(trials);
    r.mean_density = static_cast<double>(total_size) / (static_cast<double>(trials) * static_cast<double>(n_max));
  }
  if (r.no_even_trials > 0) {
    r.mean_density_no_even =
        static_cast<double>(no_even_size) / (static_cast<double>(r.no_even_trials) * static_cast<double>(n_max));
  }
  return r;
}

FiniteGraph circulant_window(std::span<const std::uint64_t> s, int m) {
  if (m < 0) throw Error("window size must be non-negative");
  if (m > 10'000) throw SizeLimit("circulant window", 10'000);
  FiniteGraph g(m);
  for (std::uint64_t d : s) {
    if (d == 0) throw SelfLoop("difference 0 would create loops");
    if (d >= static_cast<std::uint64_t>(m)) continue;
    for (int x = 0; x + static_cast<int>(d) < m; ++x) g.add_edge(x, x + static_cast<int>(d));
  }
  return g;
}

namespace {

class DifferenceSet {
 public:
  explicit DifferenceSet(std::span<const std::uint64_t> s) : s_(s.begin(), s.end()) {
    std::sort(s_.begin(), s_.end());
    s_.erase(std::unique(s_.begin(), s_.end()), s_.end());
  }
  bool adjacent(std::uint64_t x, std::uint64_t y) const {
    if (x == y) return false;
    return std::binary_search(s_.begin(), s_.end(), x > y ? x - y : y - x);
  }
  const std::vector<std::uint64_t>& elements() const { return s_; }

 private:
  std::vector<std::uint64_t> s_;
};

// Calls f on every subset of `pool` with at most k elements, by size then
// lexicographically.
template <typename F>
void for_each_small_subset(const std::vector<int>& pool, int k, F&& f) {
  std::vector<int> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int size) {
    if (static_cast<int>(cur.size()) == size) {
      f(cur);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      rec(i + 1, size);
      cur.pop_back();
    }
  };
  for (int size = 0; size <= k; ++size) rec(0, size);
}

}  // namespace

HensonReport henson_window_check(std::span<const std::uint64_t> s, int k, int m, std::uint64_t bound) {
  if (k > 3) throw SizeLimit("extension set size", 3);
  if (m > 64) throw SizeLimit("Henson window", 64);
  const DifferenceSet diff(s);
  std::vector<int> window(static_cast<std::size_t>(std::max(0, m)));
  for (int i = 0; i < m; ++i) window[static_cast<std::size_t>(i)] = i;
  HensonReport report;
  for_each_small_subset(window, k, [&](const std::vector<int>& u) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (diff.adjacent(static_cast<std::uint64_t>(u[i]), static_cast<std::uint64_t>(u[j]))) return;
      }
    }
    // Candidates adjacent to the first vertex of U, in increasing order.
    std::vector<std::uint64_t> cands;
    if (!u.empty()) {
      const auto u0 = static_cast<std::uint64_t>(u[0]);
      for (std::uint64_t d : diff.elements()) {
        if (d <= u0) cands.push_back(u0 - d);
        if (u0 + d <= bound && u0 + d >= u0) cands.push_back(u0 + d);
      }
      std::sort(cands.begin(), cands.end());
      cands.erase(std::remove_if(cands.begin(), cands.end(),
                                 [&](std::uint64_t z) {
                                   if (z > bound) return true;
                                   for (int x : u) {
                                     if (!diff.adjacent(z, static_cast<std::uint64_t>(x))) return true;
                                   }
                                   return false;
                                 }),
                  cands.end());
    }
    std::vector<int> rest;
    for (int x : window) {
      if (std::find(u.begin(), u.end(), x) == u.end()) rest.push_back(x);
    }
    for_each_small_subset(rest, k, [&](const std::vector<int>& v) {
      ++report.queries;
      auto good = [&](std::uint64_t z) {
        for (int x : v) {
          if (z == static_cast<std::uint64_t>(x) || diff.adjacent(z, static_cast<std::uint64_t>(x))) return false;
        }
        return true;
      };
      bool found = false;
      if (u.empty()) {
        for (std::uint64_t z = 0; z <= bound && !found; ++z) {
          found = good(z);
          if (z == bound) break;
        }
      } else {
        found = std::any_of(cands.begin(), cands.end(), good);
      }
      if (found) {
        ++report.satisfied;
        return;
      }
      report.passed = false;
      ++report.failure_count;
      if (report.failures.size() < 1000) report.failures.push_back({u, v});
    });
  });
  return report;
}

namespace {

struct GapResult {
  SumFreeSet set;
  std::vector<std::uint64_t> witnesses;
};

GapResult build_gap_set(const GapConstruction& p) {
  if (p.window < 1 || p.window > 64) throw SizeLimit("gap construction window", 64);
  if (p.max_u < 0 || p.max_u > 3) throw SizeLimit("gap construction demand size", 3);
  if (p.gap_step < 0) throw Error("gap step must be non-negative");
  const auto w = static_cast<std::uint64_t>(p.window);
  std::vector<int> window(static_cast<std::size_t>(p.window));
  for (int i = 0; i < p.window; ++i) window[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<int>> demands;
  for_each_small_subset(window, p.max_u, [&](const std::vector<int>& u) { demands.push_back(u); });

  std::set<std::uint64_t> s;
  GapResult out;
  std::uint64_t previous = w;  // every element ends up larger than the window
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const auto& u = demands[i];
    for (std::uint64_t z = previous + w + static_cast<std::uint64_t>(p.gap_step) * i;; ++z) {
      std::vector<std::uint64_t> fresh;
      for (int x : u) {
        if (!s.count(z - static_cast<std::uint64_t>(x))) fresh.push_back(z - static_cast<std::uint64_t>(x));
      }
      std::set<std::uint64_t> t = s;
      t.insert(fresh.begin(), fresh.end());
      bool ok = true;
      // Sums involving a new element.
      for (std::uint64_t d : fresh) {
        for (std::uint64_t e : t) {
          if (t.count(d + e) || (e < d && t.count(d - e)) || (e > d && t.count(e - d))) {
            ok = false;
            break;
          }
        }
        if (!ok || t.count(2 * d) || (d % 2 == 0 && t.count(d / 2))) {
          ok = false;
          break;
        }
      }
      auto adjacent = [&](std::uint64_t a, std::uint64_t b) { return a != b && t.count(a > b ? a - b : b - a) > 0; };
      for (std::uint64_t x = 0; ok && x < w; ++x) {
        const bool in_u = std::find(u.begin(), u.end(), static_cast<int>(x)) != u.end();
        ok = adjacent(z, x) == in_u;
      }
      for (std::size_t j = 0; ok && j < out.witnesses.size(); ++j) {
        for (std::uint64_t x = 0; ok && x < w; ++x) {
          const bool in_u = std::find(demands[j].begin(), demands[j].end(), static_cast<int>(x)) != demands[j].end();
          ok = adjacent(out.witnesses[j], x) == in_u;
        }
      }
      if (!ok) continue;
      s = std::move(t);
      out.witnesses.push_back(z);
      previous = z;
      break;
    }
  }
  out.set.elements.assign(s.begin(), s.end());
  out.set.horizon = out.set.elements.empty() ? 0 : out.set.elements.back();
  return out;
}

}  // namespace

SumFreeSet greedy_gap_set(const GapConstruction& params) { return build_gap_set(params).set; }

std::vector<std::uint64_t> greedy_gap_witnesses(const GapConstruction& params) {
  return build_gap_set(params).witnesses;
}

std::vector<std::uint64_t> parse_set(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::size_t a = pos;
    std::size_t b = end;
    while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + a, text.data() + b, v);
    if (a == b || ec != std::errc{} || ptr != text.data() + b) {
      throw ParseError("expected a positive integer in set list", 1, a + 1);
    }
    out.push_back(v);
    pos = end + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace homlab::sumfree
