#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "homlab/errors.hpp"
#include "homlab/io.hpp"
#include "report.hpp"

#ifndef HOMLAB_VERSION
#define HOMLAB_VERSION "unknown"
#endif

namespace homlab::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string lower_extension(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

std::string csv_cell(const json& value) {
  if (value.is_string()) {
    const std::string& s = value.get_ref<const std::string&>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  if (value.is_null()) return "";
  return value.dump();
}

std::string render_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
  return out.str();
}

// Every option of the invoked command chain with its effective value.
json echo_options(const std::vector<const CLI::App*>& chain) {
  json config = json::object();
  for (const CLI::App* app : chain) {
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty()) continue;
      const std::string& name = opt->get_lnames().front();
      if (name == "help" || name == "config" || name == "version") continue;
      if (opt->count() > 0) {
        const auto results = opt->reduced_results();
        if (opt->get_expected_max() == 0) {
          config[name] = opt->as<bool>();
        } else if (results.size() == 1) {
          config[name] = results.front();
        } else {
          config[name] = results;
        }
      } else if (opt->get_expected_max() == 0) {
        config[name] = false;
      } else if (!opt->get_default_str().empty()) {
        config[name] = opt->get_default_str();
      } else {
        config[name] = nullptr;
      }
    }
  }
  return config;
}

// Turns a TOML config into command-line arguments: "command" names the
// subcommand path, every other key becomes an option.
std::vector<std::string> config_arguments(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw ParseError("cannot read config file '" + path + "'", 0, 0);
  std::ifstream in(path);
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_config(in);
  } catch (const CLI::Error& e) {
    throw ParseError(std::string("config file '") + path + "': " + e.what(), 0, 0);
  }
  std::vector<std::string> command;
  std::vector<std::string> options;
  for (const CLI::ConfigItem& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    if (item.name == "command") {
      for (const std::string& input : item.inputs) {
        std::istringstream words(input);
        for (std::string w; words >> w;) command.push_back(w);
      }
      continue;
    }
    if (item.inputs.size() == 1) {
      options.push_back("--" + item.name + "=" + item.inputs.front());
    } else {
      options.push_back("--" + item.name);
      options.insert(options.end(), item.inputs.begin(), item.inputs.end());
    }
  }
  if (command.empty()) throw ParseError("config file '" + path + "' has no 'command' key", 0, 0);
  command.insert(command.end(), options.begin(), options.end());
  return command;
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path + "'");
  file << text;
  if (!file) throw Error("cannot write '" + path + "'");
}

// Index of a leading "run" token, skipping global options and their values.
std::optional<std::size_t> run_position(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "run") return i;
    if (a.rfind("--", 0) != 0) return std::nullopt;
    if (a.find('=') == std::string::npos) ++i;
  }
  return std::nullopt;
}

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const std::string& config_file) {
  CLI::App app{"Finite experiments on homogeneous structures", "homlab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", HOMLAB_VERSION);

  Globals globals;
  app.add_option("--emit", globals.emit, "json, csv, g6, or an output path (format from its extension)");
  app.add_option("--format", globals.format, "json, csv or g6")->check(CLI::IsMember({"json", "csv", "g6"}));
  app.add_option("--seed", globals.seed, "seed for stochastic commands")->capture_default_str();
  app.add_option("--workers", globals.workers, "worker threads")->capture_default_str()->check(CLI::Range(1, 256));

  Registry registry;
  register_graph_commands(app, registry);
  register_structure_commands(app, registry);
  register_number_commands(app, registry);

  CLI::App* run_cmd = app.add_subcommand("run", "run the command described by a TOML config file");
  std::string config_path;
  run_cmd->add_option("--config", config_path, "config file")->required();

  // "run" is expanded by hand so that options after it can override the
  // config file instead of being rejected as extras.
  if (const auto at = run_position(args)) {
    if (!config_file.empty()) throw UsageError("nested run commands are not supported");
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i == *at) continue;
      if (args[i] == "--config" && i + 1 < args.size()) {
        config_path = args[++i];
        continue;
      }
      if (args[i].rfind("--config=", 0) == 0) {
        config_path = args[i].substr(9);
        continue;
      }
      rest.push_back(args[i]);
    }
    const bool help = std::find(args.begin(), args.end(), "--help") != args.end() ||
                      std::find(args.begin(), args.end(), "-h") != args.end();
    if (config_path.empty() || help) {
      // Let the parser print help or report the missing --config.
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      try {
        app.parse(reversed);
      } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
      }
      throw UsageError("run needs --config");
    }
    // Flags given on the command line come last, so they override the file.
    std::vector<std::string> expanded = config_arguments(config_path);
    expanded.insert(expanded.end(), rest.begin(), rest.end());
    return execute(expanded, out, err, config_path);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  const Registry::Entry* chosen = nullptr;
  std::vector<const CLI::App*> chain{&app};
  for (const auto& entry : registry.entries()) {
    if (entry.app->parsed()) chosen = &entry;  // registered parents before children
  }
  if (chosen == nullptr) throw UsageError("no command given");
  {
    std::vector<const CLI::App*> parents;
    for (const CLI::App* a = chosen->app; a != &app; a = a->get_parent()) parents.push_back(a);
    chain.insert(chain.end(), parents.rbegin(), parents.rend());
  }
  std::string command;
  for (std::size_t i = 1; i < chain.size(); ++i) command += (i > 1 ? " " : "") + chain[i]->get_name();

  std::string format = globals.format.empty() ? "json" : globals.format;
  std::string path;
  if (globals.emit == "json" || globals.emit == "csv" || globals.emit == "g6") {
    format = globals.emit;
  } else if (!globals.emit.empty()) {
    path = globals.emit;
    const std::string ext = lower_extension(path);
    if (globals.format.empty()) format = ext == ".csv" ? "csv" : ext == ".g6" ? "g6" : "json";
  }

  const auto start = std::chrono::steady_clock::now();
  Report report = chosen->action(globals);
  const auto stop = std::chrono::steady_clock::now();

  std::string text;
  if (format == "csv") {
    text = render_csv(report.table ? *report.table : scalar_table(report.result));
  } else if (format == "g6") {
    if (report.graphs.empty()) throw UsageError("command '" + command + "' produces no graph for g6 output");
    for (const FiniteGraph& g : report.graphs) text += io::to_graph6(g) + "\n";
  } else {
    json doc = json::object();
    doc["command"] = command;
    doc["config"] = echo_options(chain);
    if (!config_file.empty()) doc["config_file"] = config_file;
    doc["result"] = std::move(report.result);
    doc["version"] = HOMLAB_VERSION;
    doc["timing_ms"] = std::chrono::duration<double, std::milli>(stop - start).count();
    text = doc.dump(2) + "\n";
  }
  write_output(text, path, out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return execute(args, out, err, "");
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

std::string strip_timing(const std::string& report) {
  json doc = json::parse(report);
  doc.erase("timing_ms");
  return doc.dump(2);
}

FiniteGraph load_graph(const std::string& path) {
  if (lower_extension(path) == ".json") return graph_from_structure(io::read_structure_file(path));
  return io::read_graph_file(path);
}

RelationalStructure load_structure(const std::string& path) {
  if (lower_extension(path) == ".json") return io::read_structure_file(path);
  return to_structure(io::read_graph_file(path));
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::size_t column = 1;
  std::istringstream in(text);
  for (std::string token; std::getline(in, token, ',');) {
    const auto first = token.find_first_not_of(" \t");
    const auto last = token.find_last_not_of(" \t");
    if (first == std::string::npos) throw ParseError("empty list entry", 1, column);
    const std::string trimmed = token.substr(first, last - first + 1);
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(trimmed, &used);
    } catch (const std::exception&) {
      throw ParseError("expected an integer, got '" + trimmed + "'", 1, column + first);
    }
    if (used != trimmed.size()) throw ParseError("expected an integer, got '" + trimmed + "'", 1, column + first);
    values.push_back(value);
    column += token.size() + 1;
  }
  return values;
}

json to_json(const BigInt& value) {
  if (value <= BigInt(std::numeric_limits<std::int64_t>::max())) return value.convert_to<std::int64_t>();
  return value.str();
}

json to_json(const RelationalStructure& s) { return json::parse(io::to_structure_json(s)); }

json to_json(const PartialIsomorphism& p) {
  json pairs = json::array();
  for (const auto& [a, b] : p.pairs) pairs.push_back({a, b});
  return pairs;
}

Table scalar_table(const json& object) {
  Table table{{"key", "value"}, {}};
  for (const auto& [key, value] : object.items()) {
    if (value.is_primitive()) table.rows.push_back({key, value});
  }
  return table;
}

}  // namespace homlab::cli
