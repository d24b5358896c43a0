#include "homlab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "homlab/errors.hpp"

namespace homlab::io {

namespace {

constexpr std::string_view kGraph6Header = ">>graph6<<";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

// Maps a byte offset in `text` to a 1-based line/column pair.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

FiniteGraph parse_graph6(std::string_view text) {
  std::size_t offset = 0;
  std::string_view s = text;
  // Skip leading whitespace so the reported column still refers to `text`.
  while (offset < s.size() && (s[offset] == ' ' || s[offset] == '\t')) ++offset;
  if (s.substr(offset).starts_with(kGraph6Header)) offset += kGraph6Header.size();
  std::size_t end = s.size();
  while (end > offset && (s[end - 1] == '\n' || s[end - 1] == '\r' || s[end - 1] == ' ' || s[end - 1] == '\t')) --end;

  std::size_t pos = offset;
  auto next = [&]() -> int {
    if (pos >= end) throw ParseError("graph6 string truncated", 1, pos + 1);
    const auto c = static_cast<unsigned char>(s[pos]);
    if (c < 63 || c > 126) throw ParseError("byte outside graph6 range", 1, pos + 1);
    ++pos;
    return c - 63;
  };

  std::uint64_t n = 0;
  const int first = next();
  if (first < 63) {
    n = static_cast<std::uint64_t>(first);
  } else if (pos < end && s[pos] == '~') {
    ++pos;
    for (int i = 0; i < 6; ++i) n = (n << 6) | static_cast<std::uint64_t>(next());
  } else {
    for (int i = 0; i < 3; ++i) n = (n << 6) | static_cast<std::uint64_t>(next());
  }
  if (n > 100000) throw SizeLimit("graph6 vertex count", 100000);

  FiniteGraph g(static_cast<int>(n));
  int bits_left = 0;
  int current = 0;
  for (int j = 1; j < static_cast<int>(n); ++j) {
    for (int i = 0; i < j; ++i) {
      if (bits_left == 0) {
        current = next();
        bits_left = 6;
      }
      --bits_left;
      if ((current >> bits_left) & 1) g.add_edge(i, j);
    }
  }
  if (pos != end) throw ParseError("trailing bytes after graph6 data", 1, pos + 1);
  return g;
}

std::string to_graph6(const FiniteGraph& g) {
  std::string out;
  const auto n = static_cast<std::uint64_t>(g.order());
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  } else {
    out += "~~";
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  }
  int bits = 0;
  int current = 0;
  for (int j = 1; j < g.order(); ++j) {
    for (int i = 0; i < j; ++i) {
      current = (current << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++bits == 6) {
        out.push_back(static_cast<char>(63 + current));
        bits = 0;
        current = 0;
      }
    }
  }
  if (bits > 0) out.push_back(static_cast<char>(63 + (current << (6 - bits))));
  return out;
}

namespace {

struct LineReader {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line_no = 0;

  // Next non-blank, non-comment line; false at end of input.
  bool next(std::string_view& line, std::size_t& start) {
    while (pos <= text.size()) {
      if (pos == text.size()) return false;
      const std::size_t nl = text.find('\n', pos);
      const std::size_t stop = nl == std::string_view::npos ? text.size() : nl;
      start = pos;
      line = text.substr(pos, stop - pos);
      pos = stop == text.size() ? text.size() : stop + 1;
      ++line_no;
      const auto t = trim(line);
      if (!t.empty() && t.front() != '#') return true;
    }
    return false;
  }
};

std::vector<long long> parse_ints(std::string_view line, std::size_t line_no, std::size_t expected) {
  std::vector<long long> values;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    long long v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
    if (ec != std::errc() || (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t' && *ptr != '\r')) {
      throw ParseError("expected an integer", line_no, i + 1);
    }
    values.push_back(v);
    i = static_cast<std::size_t>(ptr - line.data());
  }
  if (values.size() != expected) {
    throw ParseError("expected " + std::to_string(expected) + " integers, found " + std::to_string(values.size()), line_no, 1);
  }
  return values;
}

}  // namespace

FiniteGraph parse_edge_list(std::string_view text) {
  LineReader reader{text};
  std::string_view line;
  std::size_t start = 0;
  if (!reader.next(line, start)) throw ParseError("missing 'n m' header", 1, 1);
  const auto header = parse_ints(line, reader.line_no, 2);
  if (header[0] < 0 || header[1] < 0) throw ParseError("negative count in header", reader.line_no, 1);
  if (header[0] > 100000) throw SizeLimit("edge list vertex count", 100000);
  FiniteGraph g(static_cast<int>(header[0]));
  for (long long e = 0; e < header[1]; ++e) {
    if (!reader.next(line, start)) throw ParseError("expected " + std::to_string(header[1]) + " edges", reader.line_no + 1, 1);
    const auto uv = parse_ints(line, reader.line_no, 2);
    for (auto x : uv) {
      if (x < 0 || x >= header[0]) throw ParseError("vertex " + std::to_string(x) + " out of range", reader.line_no, 1);
    }
    if (uv[0] == uv[1]) throw ParseError("self-loop", reader.line_no, 1);
    g.add_edge(static_cast<int>(uv[0]), static_cast<int>(uv[1]));
  }
  if (reader.next(line, start)) throw ParseError("unexpected trailing line", reader.line_no, 1);
  return g;
}

std::string to_edge_list(const FiniteGraph& g) {
  std::ostringstream out;
  const auto e = g.edges();
  out << g.order() << ' ' << e.size() << '\n';
  for (auto [u, v] : e) out << u << ' ' << v << '\n';
  return out.str();
}

FiniteGraph parse_graph(std::string_view text) {
  const auto t = trim(text);
  if (t.starts_with(kGraph6Header)) return parse_graph6(t);
  // An edge list starts with a digit and has a space in its first line;
  // graph6 never contains a space.
  const auto first_line = t.substr(0, t.find('\n'));
  if (first_line.find(' ') != std::string_view::npos || first_line.find('\t') != std::string_view::npos ||
      (!first_line.empty() && first_line.front() == '#')) {
    return parse_edge_list(text);
  }
  return parse_graph6(t);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

FiniteGraph read_graph_file(const std::string& path) { return parse_graph(read_text_file(path)); }

RelationalStructure parse_structure_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(e.what(), line, column);
  }
  try {
    std::vector<RelationSymbol> symbols;
    for (const auto& rel : doc.at("signature")) {
      symbols.push_back({rel.at("name").get<std::string>(), rel.at("arity").get<int>()});
    }
    RelationalStructure s(Signature(std::move(symbols)), doc.at("n").get<int>());
    const auto& tables = doc.contains("tables") ? doc.at("tables") : nlohmann::json::object();
    for (auto it = tables.begin(); it != tables.end(); ++it) {
      const std::size_t r = s.signature().index_of(it.key());
      for (const auto& tup : it.value()) {
        auto t = tup.get<std::vector<int>>();
        s.set(r, t);
      }
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed structure document: ") + e.what(), 0, 0);
  }
}

std::string to_structure_json(const RelationalStructure& s) {
  nlohmann::ordered_json doc;
  doc["signature"] = nlohmann::ordered_json::array();
  for (const auto& sym : s.signature()) doc["signature"].push_back({{"name", sym.name}, {"arity", sym.arity}});
  doc["n"] = s.size();
  doc["tables"] = nlohmann::ordered_json::object();
  for (std::size_t r = 0; r < s.signature().size(); ++r) doc["tables"][s.signature()[r].name] = s.tuples(r);
  return doc.dump();
}

RelationalStructure read_structure_file(const std::string& path) { return parse_structure_json(read_text_file(path)); }

}  // namespace homlab::io
