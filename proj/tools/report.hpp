#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "homlab/graph.hpp"
#include "homlab/isomorphism.hpp"
#include "homlab/structure.hpp"

namespace homlab::cli {

using nlohmann::json;

/// Seed used by stochastic commands when --seed is not given.
inline constexpr std::uint64_t kDefaultSeed = 7;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

/// What a command hands back to the runner. `table` feeds --format csv and
/// `graphs` feeds --format g6.
struct Report {
  json result = json::object();
  std::optional<Table> table;
  std::vector<FiniteGraph> graphs;
};

struct Globals {
  std::string emit;
  std::string format;
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;
};

using Action = std::function<Report(const Globals&)>;

/// Subcommands register themselves here; the runner executes the deepest
/// parsed one.
class Registry {
 public:
  void add(CLI::App* app, Action action) { entries_.push_back({app, std::move(action)}); }

  struct Entry {
    CLI::App* app;
    Action action;
  };
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

void register_graph_commands(CLI::App& root, Registry& registry);
void register_structure_commands(CLI::App& root, Registry& registry);
void register_number_commands(CLI::App& root, Registry& registry);

// Shared helpers for the command files.
FiniteGraph load_graph(const std::string& path);
RelationalStructure load_structure(const std::string& path);
/// Comma separated integers, e.g. "0,3,4". Throws ParseError.
std::vector<int> parse_int_list(const std::string& text);
json to_json(const BigInt& value);
json to_json(const RelationalStructure& s);
json to_json(const PartialIsomorphism& p);
/// Key/value rows from the scalar members of an object.
Table scalar_table(const json& object);

}  // namespace homlab::cli
