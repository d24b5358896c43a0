#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "homlab/errors.hpp"
#include "homlab/homogeneity.hpp"
#include "homlab/io.hpp"
#include "homlab/reducts.hpp"
#include "report.hpp"

namespace homlab::cli {

namespace {

json regularity_json(const homog::RegularityReport& r) {
  json j{{"t", r.t}, {"holds", r.holds}, {"witness", nullptr}};
  if (r.witness) {
    j["witness"] = {{"tuples", {r.witness->first, r.witness->second}},
                    {"common_neighbours", {r.counts.first, r.counts.second}}};
  }
  return j;
}

json witness_json(const std::optional<PartialIsomorphism>& w) { return w ? to_json(*w) : json(nullptr); }

// Name of a 4-vertex graph given as a 6-bit edge mask (pairs 01,02,03,12,13,23).
std::string four_vertex_name(int mask) {
  static constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  int degree[4] = {0, 0, 0, 0};
  int edges = 0;
  for (int p = 0; p < 6; ++p) {
    if ((mask >> p) & 1) {
      ++edges;
      ++degree[kPairs[p][0]];
      ++degree[kPairs[p][1]];
    }
  }
  const int max_degree = *std::max_element(degree, degree + 4);
  const int isolated = static_cast<int>(std::count(degree, degree + 4, 0));
  switch (edges) {
    case 0:
      return "4K1";
    case 1:
      return "K2+2K1";
    case 2:
      return max_degree == 1 ? "2K2" : "P3+K1";
    case 3:
      return max_degree == 3 ? "K1,3" : isolated == 1 ? "K3+K1" : "P4";
    case 4:
      return max_degree == 2 ? "C4" : "paw";
    case 5:
      return "K4-e";
    default:
      return "K4";
  }
}

void add_homog(CLI::App& root, Registry& registry) {
  auto* cmd = root.add_subcommand("homog", "homogeneity and t-tuple regularity of a graph");
  auto input = std::make_shared<std::string>();
  auto t = std::make_shared<int>(0);
  cmd->add_option("--input", *input, "graph6, edge list or structure JSON")->required();
  cmd->add_option("--t", *t, "also test t-homogeneity (t <= 4) and t-tuple regularity (t <= 5)")->check(CLI::Range(1, 5));
  registry.add(cmd, [=](const Globals&) {
    const FiniteGraph g = load_graph(*input);
    const auto h = homog::is_homogeneous(g);
    Report report;
    report.result = {{"order", g.order()},
                     {"edges", g.edge_count()},
                     {"homogeneous", h.holds},
                     {"failing_size", h.failing_size},
                     {"witness", witness_json(h.witness)}};
    if (*t > 0) {
      report.result["t"] = *t;
      if (*t <= 4) {
        const auto th = homog::is_t_homogeneous(g, *t);
        report.result["t_homogeneous"] = {{"holds", th.holds}, {"witness", witness_json(th.witness)}};
      }
      report.result["t_tuple_regular"] = regularity_json(homog::is_t_tuple_regular(g, *t));
    }
    report.graphs.push_back(g);
    return report;
  });
}

void add_gardiner(CLI::App& root, Registry& registry) {
  auto* cmd = root.add_subcommand("gardiner", "match a graph against the finite homogeneous families");
  auto input = std::make_shared<std::string>();
  cmd->add_option("--input", *input, "graph6, edge list or structure JSON")->required();
  registry.add(cmd, [=](const Globals&) {
    const FiniteGraph g = load_graph(*input);
    const auto r = homog::gardiner_classify(g);
    Report report;
    report.result = {{"order", g.order()},
                     {"family", homog::to_string(r.family)},
                     {"homogeneous", r.family != homog::GardinerFamily::NotHomogeneous},
                     {"m", r.m},
                     {"k", r.k},
                     {"witness", witness_json(r.witness)}};
    report.graphs.push_back(g);
    return report;
  });
}

void add_schlafli(CLI::App& root, Registry& registry) {
  auto* cmd = root.add_subcommand("schlafli", "4-vertex analysis of the Schlafli graph");
  auto use_complement = std::make_shared<bool>(false);
  cmd->add_flag("--complement", *use_complement, "use the degree-16 complement instead");
  registry.add(cmd, [=](const Globals&) {
    const FiniteGraph base = homog::schlafli_graph();
    const FiniteGraph g = *use_complement ? complement(base) : base;
    const auto census = homog::four_vertex_census(g);
    // Orbits of Aut(G) on injective 4-tuples, grouped by labelled type.
    const TupleOrbits orbits = orbits_on_ktuples(g, 4);
    std::map<int, int> orbits_per_type;
    for (const auto& rep : orbits.representatives()) ++orbits_per_type[static_cast<int>(homog::labelled_type(g, rep))];
    const bool single_orbit =
        std::all_of(orbits_per_type.begin(), orbits_per_type.end(), [](const auto& kv) { return kv.second == 1; });
    std::map<std::string, int> missing_names;
    for (int mask : census.missing) ++missing_names[four_vertex_name(mask)];
    json missing = json::array();
    for (const auto& [name, count] : missing_names) missing.push_back({{"graph", name}, {"labelled_types", count}});
    std::set<int> degrees;
    for (int v = 0; v < g.order(); ++v) degrees.insert(g.degree(v));

    Report report;
    report.result = {{"order", g.order()},
                     {"degrees", degrees},
                     {"edges", g.edge_count()},
                     {"realized_types", census.realized.size()},
                     {"missing_types", census.missing.size()},
                     {"missing", missing},
                     {"tuple_orbits", orbits.count()},
                     {"one_orbit_per_type", single_orbit},
                     {"four_homogeneous", homog::is_t_homogeneous(g, 4).holds}};
    Table table{{"mask", "graph", "realized", "orbits"}, {}};
    for (int mask = 0; mask < 64; ++mask) {
      const bool realized = std::binary_search(census.realized.begin(), census.realized.end(), mask);
      table.rows.push_back({mask, four_vertex_name(mask), realized, realized ? orbits_per_type[mask] : 0});
    }
    report.table = std::move(table);
    report.graphs.push_back(g);
    return report;
  });
}

void add_spectrum(CLI::App& root, Registry& registry) {
  auto* cmd = root.add_subcommand("spectrum", "characteristic polynomials and cospectral regularity");
  auto input = std::make_shared<std::string>();
  auto max_n = std::make_shared<int>(6);
  auto t = std::make_shared<int>(0);
  cmd->add_option("--input", *input, "report the polynomial of one graph");
  cmd->add_option("--max-n", *max_n, "cospectral census over graphs on at most this many vertices")
      ->capture_default_str()
      ->check(CLI::Range(1, 8));
  cmd->add_option("--t", *t, "also list cospectral groups that disagree on t-tuple regularity (exploratory)")
      ->check(CLI::Range(1, 5));
  registry.add(cmd, [=](const Globals&) {
    Report report;
    if (!input->empty()) {
      const FiniteGraph g = load_graph(*input);
      const auto sig = homog::spectral_signature(g);
      json coefficients = json::array();
      for (const BigInt& c : sig.coefficients) coefficients.push_back(to_json(c));
      report.result = {{"order", g.order()}, {"polynomial", homog::to_string(sig)}, {"coefficients", coefficients}};
      report.graphs.push_back(g);
      return report;
    }
    const auto census = homog::cospectral_regularity(*max_n);
    Table table{{"group", "order", "polynomial", "graph6", "regular1", "regular2"}, {}};
    if (*t > 0) table.columns.push_back("regular" + std::to_string(*t));
    json disagreeing = json::array();
    for (std::size_t i = 0; i < census.shared.size(); ++i) {
      const auto& group = census.shared[i];
      const std::string poly = homog::to_string(group.signature);
      std::vector<bool> regular_t;
      for (std::size_t j = 0; j < group.graphs.size(); ++j) {
        const FiniteGraph& g = group.graphs[j];
        std::vector<json> row{i, g.order(), poly, io::to_graph6(g), static_cast<bool>(group.regular1[j]),
                              static_cast<bool>(group.regular2[j])};
        if (*t > 0) {
          regular_t.push_back(g.order() >= *t && homog::is_t_tuple_regular(g, *t).holds);
          row.push_back(static_cast<bool>(regular_t.back()));
        }
        table.rows.push_back(std::move(row));
        report.graphs.push_back(g);
      }
      if (*t > 0 && std::adjacent_find(regular_t.begin(), regular_t.end(), std::not_equal_to<>()) != regular_t.end()) {
        json members = json::array();
        for (const FiniteGraph& g : group.graphs) members.push_back(io::to_graph6(g));
        disagreeing.push_back({{"polynomial", poly}, {"graphs", members}});
      }
    }
    report.result = {{"max_n", census.max_n},
                     {"graphs", census.graphs},
                     {"signatures", census.groups},
                     {"cospectral_groups", census.shared.size()},
                     {"violations", census.violations}};
    if (*t > 0) {
      report.result["t"] = *t;
      report.result["t_disagreements"] = disagreeing;
    }
    report.table = std::move(table);
    return report;
  });
}

void add_switch(CLI::App& root, Registry& registry) {
  auto* cmd = root.add_subcommand("switch", "Seidel switching of a graph");
  auto input = std::make_shared<std::string>();
  auto set = std::make_shared<std::string>();
  auto target = std::make_shared<std::string>();
  auto perm = std::make_shared<std::string>();
  cmd->add_option("--input", *input, "graph to switch")->required();
  cmd->add_option("--set", *set, "switching set, e.g. 0,3,4");
  cmd->add_option("--target", *target, "find a switching set taking the input to this graph");
  cmd->add_option("--perm", *perm, "test whether this permutation is a switching automorphism");
  registry.add(cmd, [=](const Globals&) {
    const FiniteGraph g = load_graph(*input);
    Report report;
    report.result = {{"order", g.order()}};
    auto optional_set = [](const std::optional<std::vector<int>>& y) { return y ? json(*y) : json(nullptr); };
    if (!set->empty()) {
      const FiniteGraph h = reducts::switch_graph(g, parse_int_list(*set));
      report.result["switched"] = io::to_graph6(h);
      report.result["edges"] = h.edge_count();
      report.graphs.push_back(h);
    }
    if (!target->empty()) {
      const auto y = reducts::switching_witness(g, load_graph(*target));
      report.result["equivalent"] = y.has_value();
      report.result["witness"] = optional_set(y);
    }
    if (!perm->empty()) {
      const auto y = reducts::switching_automorphism_witness(g, parse_int_list(*perm));
      report.result["switching_automorphism"] = y.has_value();
      report.result["automorphism_witness"] = optional_set(y);
    }
    if (report.graphs.empty()) report.graphs.push_back(g);
    return report;
  });
}

void add_reducts(CLI::App& root, Registry& registry) {
  auto* cmd = root.add_subcommand("reducts", "automorphism groups of the reducts of a finite order");
  auto n = std::make_shared<int>(5);
  auto kind = std::make_shared<std::string>();
  cmd->add_option("--n", *n, "domain size")->capture_default_str()->check(CLI::Range(4, kGroupLimit));
  cmd->add_option("--kind", *kind, "order, betweenness, circular, separation or pure-set");
  registry.add(cmd, [=](const Globals&) {
    Report report;
    if (!kind->empty()) {
      const auto k = reducts::parse_reduct(*kind);
      const RelationalStructure rel = reducts::reduct_relation(*n, k);
      report.result = {{"n", *n},
                       {"kind", reducts::to_string(k)},
                       {"arity", reducts::arity(k)},
                       {"automorphisms", to_json(automorphisms(rel).order)},
                       {"tuples", rel.signature().empty() ? 0 : rel.tuple_count(0)}};
      return report;
    }
    const auto lattice = reducts::reduct_lattice(*n);
    json orders = json::object();
    json contains = json::object();
    Table table{{"reduct", "automorphisms"}, {}};
    for (std::size_t i = 0; i < reducts::kAllReducts.size(); ++i) {
      const std::string name = reducts::to_string(reducts::kAllReducts[i]);
      orders[name] = to_json(lattice.orders[i]);
      table.columns.push_back("inside_" + name);
      json row = json::array();
      std::vector<json> cells{name, to_json(lattice.orders[i])};
      for (std::size_t j = 0; j < reducts::kAllReducts.size(); ++j) {
        if (lattice.contains[i][j]) row.push_back(reducts::to_string(reducts::kAllReducts[j]));
        cells.push_back(static_cast<bool>(lattice.contains[i][j]));
      }
      contains[name] = row;
      table.rows.push_back(std::move(cells));
    }
    report.result = {{"n", *n}, {"orders", orders}, {"subgroup_of", contains}, {"chain", lattice.chain}};
    report.table = std::move(table);
    return report;
  });
}

}  // namespace

void register_graph_commands(CLI::App& root, Registry& registry) {
  add_homog(root, registry);
  add_gardiner(root, registry);
  add_schlafli(root, registry);
  add_spectrum(root, registry);
  add_switch(root, registry);
  add_reducts(root, registry);
}

}  // namespace homlab::cli
