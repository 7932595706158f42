#include "toursid/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "toursid/error.hpp"

namespace toursid {

Orientation parse_orientation(std::string_view text) {
  if (text.empty()) throw Error("EmptyInput", "orientation string is empty");
  Orientation o;
  o.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '>' || c == 'R') {
      o.push_back(Dir::Forward);
    } else if (c == '<' || c == 'L') {
      o.push_back(Dir::Backward);
    } else {
      throw Error("InvalidCharacter",
                  "invalid orientation character at position " + std::to_string(i),
                  static_cast<long long>(i));
    }
  }
  return o;
}

std::string format_orientation(const Orientation& o) {
  std::string s;
  s.reserve(o.size());
  for (Dir d : o) s.push_back(d == Dir::Forward ? '>' : '<');
  return s;
}

Orientation reversed_arrows(const Orientation& o) {
  Orientation r(o);
  for (auto& d : r) d = flip(d);
  return r;
}

int count_backward(const Orientation& o) {
  return static_cast<int>(std::count(o.begin(), o.end(), Dir::Backward));
}

OrientedCycle make_cycle(Orientation o) {
  if (o.size() < 3) throw Error("TooShort", "a cycle needs at least 3 edges");
  return OrientedCycle{std::move(o)};
}

OrientedCycle directed_cycle(std::size_t length) {
  return make_cycle(Orientation(length, Dir::Forward));
}

OrientedCycle alternating_cycle(std::size_t two_ell) {
  if (two_ell % 2 != 0) throw Error("OddLength", "alternating cycle needs even length");
  if (two_ell < 4) throw Error("TooShort", "alternating cycle needs length at least 4");
  Orientation o(two_ell);
  for (std::size_t i = 0; i < two_ell; ++i) o[i] = (i % 2 == 0) ? Dir::Forward : Dir::Backward;
  return OrientedCycle{std::move(o)};
}

Digraph::Digraph(int v, std::vector<Arc> arcs) : v_(v), arcs_(std::move(arcs)) {
  if (v < 0) throw Error("InvalidDigraph", "negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : arcs_) {
    if (a < 0 || b < 0 || a >= v || b >= v) throw Error("InvalidDigraph", "arc endpoint out of range");
    if (a == b) throw Error("InvalidDigraph", "self-loop");
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) {
      throw Error("InvalidDigraph", "duplicate arc or digon between " + std::to_string(a) +
                                        " and " + std::to_string(b));
    }
  }
}

std::vector<std::vector<int>> Digraph::components() const {
  std::vector<int> parent(v_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : arcs_) parent[find(a)] = find(b);
  std::vector<std::vector<int>> out;
  std::vector<int> index(v_, -1);
  for (int x = 0; x < v_; ++x) {
    int r = find(x);
    if (index[r] < 0) {
      index[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[index[r]].push_back(x);
  }
  return out;
}

Digraph path_digraph(const Orientation& o) {
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < o.size(); ++i) {
    int a = static_cast<int>(i), b = static_cast<int>(i + 1);
    arcs.push_back(o[i] == Dir::Forward ? Arc{a, b} : Arc{b, a});
  }
  return Digraph(static_cast<int>(o.size()) + 1, std::move(arcs));
}

Digraph cycle_digraph(const OrientedCycle& c) {
  const int len = static_cast<int>(c.length());
  std::vector<Arc> arcs;
  for (int i = 0; i < len; ++i) {
    int a = i, b = (i + 1) % len;
    arcs.push_back(c.orientation[i] == Dir::Forward ? Arc{a, b} : Arc{b, a});
  }
  return Digraph(len, std::move(arcs));
}

Digraph directed_path_pattern(int edges) {
  return path_digraph(Orientation(static_cast<std::size_t>(edges), Dir::Forward));
}

Digraph subdivide(const Digraph& d, int k) {
  if (k < 1) throw Error("InvalidArgument", "subdivision factor must be at least 1");
  int next = d.v();
  std::vector<Arc> arcs;
  for (auto [a, b] : d.arcs()) {
    int prev = a;
    for (int step = 1; step < k; ++step) {
      arcs.push_back({prev, next});
      prev = next++;
    }
    arcs.push_back({prev, b});
  }
  return Digraph(next, std::move(arcs));
}

OrientedCycle subdivide(const OrientedCycle& c, int k) {
  if (k < 1) throw Error("InvalidArgument", "subdivision factor must be at least 1");
  Orientation o;
  for (Dir d : c.orientation) o.insert(o.end(), static_cast<std::size_t>(k), d);
  return OrientedCycle{std::move(o)};
}

Digraph disjoint_union(const Digraph& a, const Digraph& b) {
  std::vector<Arc> arcs = a.arcs();
  for (auto [x, y] : b.arcs()) arcs.push_back({x + a.v(), y + a.v()});
  return Digraph(a.v() + b.v(), std::move(arcs));
}

Tree::Tree(int v, std::vector<std::pair<int, int>> edges)
    : v_(v), edges_(std::move(edges)), adj_(static_cast<std::size_t>(std::max(v, 0))) {
  if (v < 1) throw Error("InvalidTree", "a tree needs at least one vertex");
  if (static_cast<int>(edges_.size()) != v - 1) throw Error("InvalidTree", "a tree on v vertices has v-1 edges");
  for (auto [a, b] : edges_) {
    if (a < 0 || b < 0 || a >= v || b >= v || a == b) throw Error("InvalidTree", "bad edge endpoint");
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  std::vector<char> seen(v, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj_[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
  }
  if (reached != v) throw Error("InvalidTree", "tree is not connected");
}

Tree path_tree(int v) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < v; ++i) edges.push_back({i, i + 1});
  return Tree(v, std::move(edges));
}

Tree star_tree(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return Tree(leaves + 1, std::move(edges));
}

namespace {

struct ParsedEdges {
  int v = 0;
  std::vector<std::pair<int, int>> pairs;
};

ParsedEdges parse_edge_list(std::string_view text, const std::string& keyword) {
  std::istringstream in{std::string(text)};
  std::string line;
  ParsedEdges out;
  bool header = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!header) {
      std::string field;
      ls >> field;
      if (first != keyword || field.rfind("v=", 0) != 0) {
        throw Error("ParseError", "expected header '" + keyword + " v=<n>'", line_no);
      }
      try {
        out.v = std::stoi(field.substr(2));
      } catch (const std::exception&) {
        throw Error("ParseError", "bad vertex count in header", line_no);
      }
      header = true;
      continue;
    }
    std::string second, extra;
    if (!(ls >> second) || (ls >> extra)) throw Error("ParseError", "expected 'u w'", line_no);
    try {
      out.pairs.push_back({std::stoi(first), std::stoi(second)});
    } catch (const std::exception&) {
      throw Error("ParseError", "expected integer endpoints", line_no);
    }
  }
  if (!header) throw Error("ParseError", "missing header line");
  return out;
}

}  // namespace

Digraph parse_digraph(std::string_view text) {
  auto parsed = parse_edge_list(text, "digraph");
  return Digraph(parsed.v, std::move(parsed.pairs));
}

Tree parse_tree(std::string_view text) {
  auto parsed = parse_edge_list(text, "tree");
  return Tree(parsed.v, std::move(parsed.pairs));
}

std::string format_digraph(const Digraph& d) {
  std::string s = "digraph v=" + std::to_string(d.v()) + "\n";
  for (auto [a, b] : d.arcs()) s += std::to_string(a) + " " + std::to_string(b) + "\n";
  return s;
}

std::string format_tree(const Tree& t) {
  std::string s = "tree v=" + std::to_string(t.v()) + "\n";
  for (auto [a, b] : t.edges()) s += std::to_string(a) + " " + std::to_string(b) + "\n";
  return s;
}

}  // namespace toursid
