#include <filesystem>
#include <numeric>

#include "homlab/enumerate.hpp"
#include "homlab/errors.hpp"
#include "homlab/fraisse.hpp"
#include "homlab/io.hpp"
#include "homlab/rigid.hpp"
#include "report.hpp"

namespace homlab::cli {

namespace {

json instance_json(const fraisse::AmalgamationInstance& inst) {
  return {{"a", to_json(inst.a)}, {"b1", to_json(inst.b1)}, {"b2", to_json(inst.b2)}, {"f1", inst.f1}, {"f2", inst.f2}};
}

json amalgamation_json(const fraisse::AmalgamationReport& r) {
  return {{"verdict", fraisse::to_string(r.verdict)},
          {"holds", r.verdict == fraisse::Verdict::Holds},
          {"strong", r.strong},
          {"n", r.n},
          {"instances", r.instances},
          {"host_bound", r.host_bound},
          {"witness", r.witness ? instance_json(*r.witness) : json(nullptr)}};
}

std::optional<FiniteGraph> as_graph(const RelationalStructure& s) {
  try {
    return graph_from_structure(s);
  } catch (const SignatureMismatch&) {
    return std::nullopt;
  }
}

void add_fraisse(CLI::App& root, Registry& registry) {
  auto* cmd = root.add_subcommand("fraisse", "amalgamation checks and limit approximation for a class");
  struct Options {
    std::string klass;
    std::string check = "ap";
    int n = fraisse::kAmalgamationLimit;
    bool strong = false;
    int stages = 100;
    std::string input;
    int k = 3;
  };
  auto o = std::make_shared<Options>();
  cmd->add_option("--class", o->klass, "graphs, k<K>free, tournaments, bipartite, matchings, orders, <m>orders, crel, "
                                       "even-edges, or A*B")
      ->required();
  cmd->add_option("--check", o->check, "ap, jep, hereditary, members, age or limit")
      ->capture_default_str()
      ->check(CLI::IsMember({"ap", "jep", "hereditary", "members", "age", "limit"}));
  cmd->add_option("--n", o->n, "largest member size")->capture_default_str()->check(CLI::Range(1, 7));
  cmd->add_flag("--strong", o->strong, "strong amalgamation (images meet only in A)");
  cmd->add_option("--stages", o->stages, "points added by the limit approximation")
      ->capture_default_str()
      ->check(CLI::Range(0, 200));
  cmd->add_option("--input", o->input, "structure whose age is listed (graph file or structure JSON)");
  cmd->add_option("--k", o->k, "largest substructure size for the age")->capture_default_str()->check(CLI::Range(1, 5));
  registry.add(cmd, [=](const Globals& globals) {
    const fraisse::ClassSpec c = fraisse::ClassSpec::parse(o->klass);
    Report report;
    report.result = {{"class", c.name()}, {"check", o->check}, {"hereditary_kind", c.hereditary()}};
    if (o->check == "ap") {
      report.result.update(amalgamation_json(fraisse::check_ap(c, o->n, o->strong)));
    } else if (o->check == "jep") {
      report.result.update(amalgamation_json(fraisse::check_jep(c, o->n)));
    } else if (o->check == "hereditary") {
      const auto h = fraisse::check_hereditary(c, o->n);
      report.result["n"] = o->n;
      report.result["holds"] = h.holds;
      report.result["member"] = h.member ? to_json(*h.member) : json(nullptr);
      report.result["substructure"] = h.substructure ? to_json(*h.substructure) : json(nullptr);
      report.result["deleted_point"] = h.deleted_point;
    } else if (o->check == "members") {
      Table table{{"size", "members"}, {}};
      json counts = json::array();
      for (int size = 1; size <= o->n; ++size) {
        const std::size_t count = c.members(size).size();
        counts.push_back(count);
        table.rows.push_back({size, count});
      }
      report.result["n"] = o->n;
      report.result["members"] = counts;
      report.table = std::move(table);
    } else if (o->check == "age") {
      if (o->input.empty()) throw CLI::ValidationError("--input", "the age check needs --input");
      const RelationalStructure s = load_structure(o->input);
      Table table{{"size", "count", "structure"}, {}};
      json entries = json::array();
      for (const auto& e : fraisse::age(s, o->k)) {
        entries.push_back({{"size", e.representative.size()}, {"count", e.count}, {"structure", to_json(e.representative)}});
        table.rows.push_back({e.representative.size(), e.count, io::to_structure_json(e.representative)});
        if (auto g = as_graph(e.representative)) report.graphs.push_back(*g);
      }
      report.result["k"] = o->k;
      report.result["in_class"] = c.contains(s);
      report.result["age"] = entries;
      report.table = std::move(table);
    } else {
      const auto limit = fraisse::limit_approximation(c, o->stages, globals.seed);
      report.result["stages"] = o->stages;
      report.result["seed"] = globals.seed;
      report.result["order"] = limit.structure.size();
      report.result["guaranteed_level"] = limit.guaranteed_level;
      report.result["window"] = limit.window;
      report.result["structure"] = to_json(limit.structure);
      if (auto g = as_graph(limit.structure)) report.graphs.push_back(*g);
    }
    return report;
  });
}

std::string text_or_file(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return io::read_text_file(arg);
  return arg;
}

RelationalStructure load_tournament(const std::string& path) {
  if (std::filesystem::path(path).extension() == ".json") {
    const RelationalStructure s = io::read_structure_file(path);
    if (s.signature().size() != 1 || s.signature()[0].arity != 2) {
      throw SignatureMismatch("a tournament needs exactly one binary relation");
    }
    RelationalStructure t(tournament_signature(), s.size());
    for (const Tuple& tuple : s.tuples(0)) t.set(0, tuple);
    if (!rigid::is_tournament(t)) throw ParseError("'" + path + "' is not a tournament", 0, 0);
    return t;
  }
  return rigid::parse_tournament(io::read_text_file(path));
}

RelationalStructure load_c_relation(const std::string& arg) {
  if (std::filesystem::path(arg).extension() == ".json") return io::read_structure_file(arg);
  return rigid::c_relation_of_tree(rigid::RootedBinaryTree::parse(text_or_file(arg)));
}

bool power_of_two(const BigInt& x) { return x > 0 && (x & (x - 1)) == 0; }

json ramsey_json(const rigid::RamseyFailureReport& r) {
  json triples = json::array();
  for (const auto& t : r.cyclic_triples) triples.push_back({{"points", t.points}, {"red", t.red}, {"blue", t.blue}});
  std::size_t red = 0;
  for (const auto& arc : r.colouring) red += arc.red;
  return {{"certified", r.certified},
          {"arcs", r.colouring.size()},
          {"red_arcs", red},
          {"blue_arcs", r.colouring.size() - red},
          {"cyclic_triples", triples}};
}

Table colouring_table(const rigid::RamseyFailureReport& r) {
  Table table{{"from", "to", "colour"}, {}};
  for (const auto& arc : r.colouring) table.rows.push_back({arc.from, arc.to, arc.red ? "red" : "blue"});
  return table;
}

std::vector<int> order_or_identity(const std::string& text, int n) {
  if (!text.empty()) return parse_int_list(text);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  return order;
}

void add_rigid(CLI::App& root, Registry& registry) {
  auto* cmd = root.add_subcommand("rigid", "tournaments, C-relations, superpositions and the Ramsey failure");
  struct Options {
    std::vector<std::string> superpose;
    std::string check = "rigid";
    std::string ramsey;
    std::string order;
    std::string tree;
    std::string tournament;
    int census = 0;
    std::string pattern;
    std::string in;
  };
  auto o = std::make_shared<Options>();
  cmd->add_option("--superpose", o->superpose, "tournament file and tree (text or file)")->expected(2);
  cmd->add_option("--check", o->check, "rigid or ramsey, for --superpose")
      ->capture_default_str()
      ->check(CLI::IsMember({"rigid", "ramsey"}));
  cmd->add_option("--ramsey-failure", o->ramsey, "superposition structure JSON to colour");
  cmd->add_option("--order", o->order, "total order as a point list, least first (default 0,1,...)");
  cmd->add_option("--tree", o->tree, "binary tree such as ((0,1),2), or a file holding one");
  cmd->add_option("--tournament", o->tournament, "tournament as arc list, 0/1 matrix or structure JSON");
  cmd->add_option("--census", o->census, "automorphism orders of all tournaments on 1..n points")
      ->check(CLI::Range(1, 7));
  cmd->add_option("--pattern", o->pattern, "permutation pattern, one-line notation such as 1,3,2");
  cmd->add_option("--in", o->in, "permutation searched by --pattern");
  registry.add(cmd, [=](const Globals&) {
    const int modes = !o->superpose.empty() + !o->ramsey.empty() + !o->tree.empty() + !o->tournament.empty() +
                      (o->census > 0) + !o->pattern.empty();
    if (modes != 1) {
      throw CLI::ValidationError("rigid",
                                 "give exactly one of --superpose, --ramsey-failure, --tree, --tournament, --census, "
                                 "--pattern");
    }
    Report report;
    if (!o->superpose.empty()) {
      const RelationalStructure t = load_tournament(o->superpose[0]);
      const RelationalStructure gamma = load_c_relation(o->superpose[1]);
      const RelationalStructure s = rigid::superpose(t, gamma);
      report.result = {{"order", s.size()}, {"check", o->check}, {"structure", to_json(s)}};
      if (o->check == "rigid") {
        const BigInt aut = automorphisms(s).order;
        report.result["tournament_automorphisms"] = to_json(rigid::tournament_aut_order(t));
        report.result["c_automorphisms"] = to_json(rigid::c_aut_order(gamma));
        report.result["automorphisms"] = to_json(aut);
        report.result["rigid"] = aut == 1;
      } else {
        const auto r = rigid::ramsey_failure_colouring(s, order_or_identity(o->order, s.size()));
        report.result.update(ramsey_json(r));
        report.table = colouring_table(r);
      }
    } else if (!o->ramsey.empty()) {
      const RelationalStructure s = io::read_structure_file(o->ramsey);
      const auto r = rigid::ramsey_failure_colouring(s, order_or_identity(o->order, s.size()));
      report.result = ramsey_json(r);
      report.result["order"] = s.size();
      report.table = colouring_table(r);
    } else if (!o->tree.empty()) {
      const auto tree = rigid::RootedBinaryTree::parse(text_or_file(o->tree));
      const RelationalStructure gamma = rigid::c_relation_of_tree(tree);
      const BigInt aut = rigid::c_aut_order(gamma);
      const auto back = rigid::tree_of_c_relation(gamma);
      report.result = {{"tree", tree.canonical_string()},
                       {"leaves", tree.leaf_count()},
                       {"triples", gamma.tuple_count(0)},
                       {"automorphisms", to_json(aut)},
                       {"power_of_two", power_of_two(aut)},
                       {"reconstructed", back.canonical_string()},
                       {"round_trip", back.canonical_string() == tree.canonical_string()}};
    } else if (!o->tournament.empty()) {
      const RelationalStructure t = load_tournament(o->tournament);
      const BigInt aut = rigid::tournament_aut_order(t);
      report.result = {{"order", t.size()}, {"automorphisms", to_json(aut)}, {"odd", (aut & 1) == 1}};
    } else if (o->census > 0) {
      Table table{{"n", "index", "automorphisms"}, {}};
      json counts = json::array();
      bool all_odd = true;
      std::size_t total = 0;
      for (int n = 1; n <= o->census; ++n) {
        const auto classes = tournaments_up_to_isomorphism(n);
        counts.push_back(classes.size());
        total += classes.size();
        for (std::size_t i = 0; i < classes.size(); ++i) {
          const BigInt aut = rigid::tournament_aut_order(classes[i]);
          all_odd = all_odd && (aut & 1) == 1;
          table.rows.push_back({n, i, to_json(aut)});
        }
      }
      report.result = {{"max_n", o->census}, {"counts", counts}, {"total", total}, {"all_odd", all_odd}};
      report.table = std::move(table);
    } else {
      if (o->in.empty()) throw CLI::ValidationError("--pattern", "--pattern needs --in");
      const auto p = parse_int_list(o->pattern);
      const auto q = parse_int_list(o->in);
      const auto m = rigid::pattern_contains(p, q);
      report.result = {{"pattern", p}, {"permutation", q}, {"contains", m.found}, {"positions", m.positions}};
    }
    return report;
  });
}

}  // namespace

void register_structure_commands(CLI::App& root, Registry& registry) {
  add_fraisse(root, registry);
  add_rigid(root, registry);
}

}  // namespace homlab::cli
