#include <cmath>

#include "homlab/errors.hpp"
#include "homlab/rado.hpp"
#include "homlab/sumfree.hpp"
#include "report.hpp"

namespace homlab::cli {

namespace {

std::unique_ptr<rado::GraphOracle> make_oracle(const std::string& name, const std::string& set) {
  if (name == "bit") return std::make_unique<rado::BitOracle>();
  if (name == "prime") return std::make_unique<rado::PrimeOracle>();
  if (name == "circulant") {
    if (set.empty()) throw CLI::ValidationError("--set", "the circulant oracle needs --set");
    return std::make_unique<rado::CirculantOracle>(sumfree::parse_set(set));
  }
  throw ParseError("unknown oracle '" + name + "' (bit, prime, circulant)", 1, 1);
}

json optional_vertex(const std::optional<rado::Vertex>& v) { return v ? json(*v) : json(nullptr); }

void add_rado(CLI::App& root, Registry& registry) {
  auto* cmd = root.add_subcommand("rado", "computable Rado graph oracles");
  struct Options {
    std::string oracle = "bit";
    std::string set;
    std::string check = "extension";
    int max_uv = 10;
    rado::Vertex bound = 1'000'000;
    std::vector<std::string> back_and_forth;
    int steps = 100;
    int s = 3;
    int m = 8;
    rado::Vertex limit = 10'000;
  };
  auto o = std::make_shared<Options>();
  cmd->add_option("--oracle", o->oracle, "bit, prime or circulant")->capture_default_str();
  cmd->add_option("--set", o->set, "differences of the circulant oracle, e.g. 1,4");
  cmd->add_option("--check", o->check, "extension, common-neighbour or symmetry")
      ->capture_default_str()
      ->check(CLI::IsMember({"extension", "common-neighbour", "symmetry"}));
  cmd->add_option("--max-uv", o->max_uv, "extension queries use the first this many vertices")
      ->capture_default_str()
      ->check(CLI::Range(1, 12));
  cmd->add_option("--bound", o->bound, "largest witness searched")->capture_default_str();
  cmd->add_option("--back-and-forth", o->back_and_forth, "build a partial isomorphism between two oracles")
      ->expected(2);
  cmd->add_option("--steps", o->steps, "back-and-forth rounds")->capture_default_str()->check(CLI::Range(1, 100000));
  cmd->add_option("--s", o->s, "largest subset for the common-neighbour check")
      ->capture_default_str()
      ->check(CLI::Range(1, 5));
  cmd->add_option("--m", o->m, "window of the common-neighbour check")->capture_default_str()->check(CLI::Range(1, 16));
  cmd->add_option("--limit", o->limit, "symmetry check over primes below this")
      ->capture_default_str()
      ->check(CLI::Range(rado::Vertex{2}, rado::Vertex{1'000'000}));
  registry.add(cmd, [=](const Globals&) {
    Report report;
    if (!o->back_and_forth.empty()) {
      const auto a = make_oracle(o->back_and_forth[0], o->set);
      const auto b = make_oracle(o->back_and_forth[1], o->set);
      const auto r = rado::try_back_and_forth(*a, *b, o->steps, o->bound);
      Table table{{"a", "b"}, {}};
      json pairs = json::array();
      for (const auto& [x, y] : r.map.pairs) {
        pairs.push_back({x, y});
        table.rows.push_back({x, y});
      }
      report.result = {{"a", a->tag()},
                       {"b", b->tag()},
                       {"steps", o->steps},
                       {"bound", o->bound},
                       {"rounds_completed", r.rounds_completed},
                       {"complete", r.complete},
                       {"domain_size", r.map.pairs.size()},
                       {"valid", r.map.is_valid(*a, *b)},
                       {"stuck_vertex", optional_vertex(r.stuck_vertex)},
                       {"stuck_side", r.stuck_vertex ? json(r.stuck_forward ? a->tag() : b->tag()) : json(nullptr)},
                       {"map", pairs}};
      report.table = std::move(table);
      return report;
    }
    const auto oracle = make_oracle(o->oracle, o->set);
    report.result = {{"oracle", oracle->tag()}, {"check", o->check}, {"bound", o->bound}};
    if (o->check == "extension") {
      std::vector<rado::Vertex> window;
      for (auto x = oracle->next_vertex(0); x && static_cast<int>(window.size()) < o->max_uv;
           x = oracle->next_vertex(*x + 1)) {
        window.push_back(*x);
      }
      Table table{{"u", "v", "witness"}, {}};
      std::size_t patterns = 0;
      std::size_t found = 0;
      rado::Vertex largest = 0;
      json failures = json::array();
      std::vector<int> state(window.size(), 0);  // 0 outside, 1 in U, 2 in V
      while (true) {
        std::vector<rado::Vertex> u;
        std::vector<rado::Vertex> v;
        for (std::size_t i = 0; i < window.size(); ++i) {
          if (state[i] == 1) u.push_back(window[i]);
          if (state[i] == 2) v.push_back(window[i]);
        }
        const auto z = rado::extension_witness(*oracle, u, v, o->bound);
        ++patterns;
        if (z) {
          ++found;
          largest = std::max(largest, *z);
        } else if (failures.size() < 20) {
          failures.push_back({{"u", u}, {"v", v}});
        }
        table.rows.push_back({json(u).dump(), json(v).dump(), optional_vertex(z)});
        std::size_t i = 0;
        while (i < state.size() && state[i] == 2) state[i++] = 0;
        if (i == state.size()) break;
        ++state[i];
      }
      report.result["window"] = window;
      report.result["patterns"] = patterns;
      report.result["found"] = found;
      report.result["all_found"] = found == patterns;
      report.result["largest_witness"] = largest;
      report.result["failures"] = failures;
      report.table = std::move(table);
    } else if (o->check == "common-neighbour") {
      const auto r = rado::common_neighbour_check(*oracle, o->s, o->m, o->bound);
      Table table{{"set", "witness"}, {}};
      for (const auto& e : r.entries) table.rows.push_back({json(e.set).dump(), optional_vertex(e.witness)});
      report.result["s"] = o->s;
      report.result["m"] = o->m;
      report.result["subsets"] = r.entries.size();
      report.result["found"] = r.found;
      report.result["all_found"] = r.all_found;
      report.table = std::move(table);
    } else {
      if (o->oracle != "prime") throw CLI::ValidationError("--check", "the symmetry check needs --oracle prime");
      std::vector<rado::Vertex> primes;
      for (auto p = oracle->next_vertex(0); p && *p < o->limit; p = oracle->next_vertex(*p + 1)) primes.push_back(*p);
      std::size_t pairs = 0;
      std::size_t edges = 0;
      json asymmetric = json::array();
      for (std::size_t i = 0; i < primes.size(); ++i) {
        for (std::size_t j = i + 1; j < primes.size(); ++j) {
          const bool forward = rado::prime_graph_adjacent(primes[i], primes[j]);
          const bool backward = rado::prime_graph_adjacent(primes[j], primes[i]);
          ++pairs;
          edges += forward;
          if (forward != backward && asymmetric.size() < 20) asymmetric.push_back({primes[i], primes[j]});
        }
      }
      report.result["limit"] = o->limit;
      report.result["primes"] = primes.size();
      report.result["pairs"] = pairs;
      report.result["edges"] = edges;
      report.result["symmetric"] = asymmetric.empty();
      report.result["asymmetric_pairs"] = asymmetric;
    }
    return report;
  });
}

json census_json(const sumfree::SumFreeCensus& c) {
  std::string exact = std::to_string(c.ratio_numerator) + "/2^" + std::to_string(c.ratio_denominator_log2);
  if (c.ratio_over_sqrt2) exact += "/sqrt2";
  return {{"n", c.n},       {"total", c.total}, {"odd_type", c.odd_type}, {"top_type", c.top_type},
          {"both_types", c.both_types}, {"other", c.other}, {"ratio", c.ratio},       {"ratio_exact", exact}};
}

std::vector<json> census_row(const sumfree::SumFreeCensus& c) {
  return {c.n, c.total, c.odd_type, c.top_type, c.both_types, c.other, c.ratio};
}

json failures_json(const std::vector<sumfree::ExtensionFailure>& failures, std::size_t keep) {
  json out = json::array();
  for (std::size_t i = 0; i < failures.size() && i < keep; ++i) out.push_back({{"u", failures[i].u}, {"v", failures[i].v}});
  return out;
}

void add_sumfree(CLI::App& root, Registry& registry) {
  auto* cmd = root.add_subcommand("sumfree", "sum-free sets and their Cayley graphs");
  cmd->require_subcommand(1);

  {
    auto* sub = cmd->add_subcommand("census", "exact count of sum-free subsets of {1..n}");
    auto n = std::make_shared<int>(36);
    auto from = std::make_shared<int>(0);
    sub->add_option("--n", *n, "upper end of the range")->capture_default_str()->check(CLI::Range(0, 42));
    sub->add_option("--from", *from, "sweep every n from this value up to --n")->check(CLI::Range(0, 42));
    registry.add(sub, [=](const Globals&) {
      Report report;
      Table table{{"n", "total", "odd_type", "top_type", "both_types", "other", "ratio"}, {}};
      if (*from > 0) {
        if (*from > *n) throw CLI::ValidationError("--from", "--from exceeds --n");
        json rows = json::array();
        for (int k = *from; k <= *n; ++k) {
          const auto c = sumfree::census(k);
          rows.push_back(census_json(c));
          table.rows.push_back(census_row(c));
        }
        report.result = {{"from", *from}, {"to", *n}, {"censuses", rows}};
      } else {
        const auto c = sumfree::census(*n);
        report.result = census_json(c);
        table.rows.push_back(census_row(c));
      }
      report.table = std::move(table);
      return report;
    });
  }

  {
    auto* sub = cmd->add_subcommand("random", "densities of coin-toss sum-free sets");
    auto trials = std::make_shared<std::uint64_t>(100'000);
    auto n_max = std::make_shared<std::uint64_t>(2000);
    auto bin = std::make_shared<double>(0.01);
    sub->add_option("--trials", *trials, "independent sets")->capture_default_str();
    sub->add_option("--N", *n_max, "each set is built inside {1..N}")->capture_default_str();
    sub->add_option("--bin-width", *bin, "histogram bin width")->capture_default_str()->check(CLI::Range(1e-6, 1.0));
    registry.add(sub, [=](const Globals& globals) {
      const auto r = sumfree::density_experiment(*trials, *n_max, globals.seed, *bin, globals.workers);
      Report report;
      Table table{{"bin_low", "bin_high", "count"}, {}};
      for (const auto& b : r.histogram) table.rows.push_back({b.low, b.high, b.count});
      report.result = {{"trials", r.trials},
                       {"N", r.n_max},
                       {"seed", globals.seed},
                       {"no_even_trials", r.no_even_trials},
                       {"no_even_fraction", r.no_even_fraction},
                       {"mean_density_no_even", r.mean_density_no_even},
                       {"mean_density", r.mean_density},
                       {"below_one_sixth", r.below_one_sixth},
                       {"bins", r.histogram.size()}};
      report.table = std::move(table);
      return report;
    });
  }

  {
    auto* sub = cmd->add_subcommand("gamma", "window of the circulant graph of a set");
    auto set = std::make_shared<std::string>();
    auto window = std::make_shared<int>(64);
    sub->add_option("--set", *set, "differences, e.g. 1,3,8")->required();
    sub->add_option("--window", *window, "vertices 0..window-1")->capture_default_str()->check(CLI::Range(1, 10000));
    registry.add(sub, [=](const Globals&) {
      const auto s = sumfree::parse_set(*set);
      const FiniteGraph g = sumfree::circulant_window(s, *window);
      Report report;
      report.result = {{"set", s},
                       {"window", *window},
                       {"edges", g.edge_count()},
                       {"sum_free", sumfree::is_sum_free(s).holds}};
      Table table{{"u", "v"}, {}};
      for (const auto& [u, v] : g.edges()) table.rows.push_back({u, v});
      report.table = std::move(table);
      report.graphs.push_back(g);
      return report;
    });
  }

  {
    auto* sub = cmd->add_subcommand("henson", "extension queries on a window of the circulant graph");
    struct Options {
      std::string set;
      bool gap = false;
      int k = 2;
      int m = 32;
      std::uint64_t bound = 0;
      int gap_window = 32;
      int max_u = 2;
      int gap_step = 1;
    };
    auto o = std::make_shared<Options>();
    sub->add_option("--set", o->set, "differences, e.g. 1,3,8");
    sub->add_flag("--gap", o->gap, "use the greedy gap set instead of --set");
    sub->add_option("--k", o->k, "largest |U| and |V|")->capture_default_str()->check(CLI::Range(0, 3));
    sub->add_option("--m", o->m, "queries use vertices 0..m-1")->capture_default_str()->check(CLI::Range(1, 64));
    sub->add_option("--bound", o->bound, "largest witness searched (default: twice the largest element plus m)");
    sub->add_option("--gap-window", o->gap_window, "window of the gap construction")->capture_default_str();
    sub->add_option("--max-u", o->max_u, "largest demand of the gap construction")->capture_default_str();
    sub->add_option("--gap-step", o->gap_step, "gap growth of the gap construction")->capture_default_str();
    registry.add(sub, [=](const Globals&) {
      std::vector<std::uint64_t> s;
      if (o->gap) {
        s = sumfree::greedy_gap_set({o->gap_window, o->max_u, o->gap_step}).elements;
      } else if (!o->set.empty()) {
        s = sumfree::parse_set(o->set);
      } else {
        throw CLI::ValidationError("henson", "give --set or --gap");
      }
      const std::uint64_t largest = s.empty() ? 0 : s.back();
      const std::uint64_t bound = o->bound > 0 ? o->bound : 2 * largest + static_cast<std::uint64_t>(o->m);
      const auto r = sumfree::henson_window_check(s, o->k, o->m, bound);
      Report report;
      report.result = {{"elements", s.size()},
                       {"largest", largest},
                       {"sum_free", sumfree::is_sum_free(s).holds},
                       {"k", o->k},
                       {"m", o->m},
                       {"bound", bound},
                       {"queries", r.queries},
                       {"satisfied", r.satisfied},
                       {"failure_count", r.failure_count},
                       {"passed", r.passed},
                       {"failures", failures_json(r.failures, 20)}};
      Table table{{"u", "v"}, {}};
      for (const auto& f : r.failures) table.rows.push_back({json(f.u).dump(), json(f.v).dump()});
      report.table = std::move(table);
      return report;
    });
  }

  {
    auto* sub = cmd->add_subcommand("check", "test a set for sum-freeness");
    auto set = std::make_shared<std::string>();
    sub->add_option("--set", *set, "elements, e.g. 1,3,8")->required();
    registry.add(sub, [=](const Globals&) {
      const auto s = sumfree::parse_set(*set);
      const auto r = sumfree::is_sum_free(s);
      Report report;
      report.result = {{"set", s}, {"sum_free", r.holds}, {"witness", nullptr}};
      if (r.witness) {
        const auto& [x, y, z] = *r.witness;
        report.result["witness"] = {x, y, z};
      }
      return report;
    });
  }

  {
    auto* sub = cmd->add_subcommand("gap", "the greedy gap construction");
    auto params = std::make_shared<sumfree::GapConstruction>();
    sub->add_option("--window", params->window, "demands are subsets of 0..window-1")
        ->capture_default_str()
        ->check(CLI::Range(1, 64));
    sub->add_option("--max-u", params->max_u, "largest demand")->capture_default_str()->check(CLI::Range(0, 3));
    sub->add_option("--gap-step", params->gap_step, "gap growth per block")->capture_default_str()->check(CLI::Range(0, 1000));
    registry.add(sub, [=](const Globals&) {
      const auto set = sumfree::greedy_gap_set(*params);
      const auto witnesses = sumfree::greedy_gap_witnesses(*params);
      Report report;
      report.result = {{"elements", set.elements},
                       {"size", set.elements.size()},
                       {"horizon", set.horizon},
                       {"witnesses", witnesses},
                       {"sum_free", sumfree::is_sum_free(set.elements).holds}};
      Table table{{"element"}, {}};
      for (auto x : set.elements) table.rows.push_back({x});
      report.table = std::move(table);
      return report;
    });
  }
}

}  // namespace

void register_number_commands(CLI::App& root, Registry& registry) {
  add_rado(root, registry);
  add_sumfree(root, registry);
}

}  // namespace homlab::cli
