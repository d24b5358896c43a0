#include "homlab/errors.hpp"
#include "homlab/homogeneity.hpp"

namespace homlab::homog {

namespace {

struct Line {
  char kind;  // 'a', 'b' or 'c'
  int i;      // 1-based
  int j;      // second index of c_ij, else 0
};

std::vector<Line> schlafli_lines() {
  std::vector<Line> lines;
  for (int i = 1; i <= 6; ++i) lines.push_back({'a', i, 0});
  for (int i = 1; i <= 6; ++i) lines.push_back({'b', i, 0});
  for (int i = 1; i <= 6; ++i) {
    for (int j = i + 1; j <= 6; ++j) lines.push_back({'c', i, j});
  }
  return lines;
}

// Two of the 27 lines of a cubic surface meet in the double-six labelling.
bool meet(const Line& x, const Line& y) {
  if (x.kind > y.kind) return meet(y, x);
  auto in = [](int i, const Line& c) { return i == c.i || i == c.j; };
  if (x.kind == 'a' && y.kind == 'a') return false;
  if (x.kind == 'b' && y.kind == 'b') return false;
  if (x.kind == 'a' && y.kind == 'b') return x.i != y.i;
  if (y.kind == 'c' && x.kind != 'c') return in(x.i, y);
  return !in(x.i, y) && !in(x.j, y);  // two c lines meet iff disjoint indices
}

}  // namespace

FiniteGraph schlafli_graph() {
  const auto lines = schlafli_lines();
  FiniteGraph g(27);
  for (int u = 0; u < 27; ++u) {
    for (int v = u + 1; v < 27; ++v) {
      if (meet(lines[static_cast<std::size_t>(u)], lines[static_cast<std::size_t>(v)])) g.add_edge(u, v);
    }
  }
  return g;
}

std::string schlafli_label(int v) {
  if (v < 0 || v >= 27) throw InvalidVertex("Schlafli vertex " + std::to_string(v));
  const Line l = schlafli_lines()[static_cast<std::size_t>(v)];
  std::string s(1, l.kind);
  s += std::to_string(l.i);
  if (l.kind == 'c') s += std::to_string(l.j);
  return s;
}

}  // namespace homlab::homog
