#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace toursid {

enum class Dir : unsigned char { Forward, Backward };

inline Dir flip(Dir d) { return d == Dir::Forward ? Dir::Backward : Dir::Forward; }

using Orientation = std::vector<Dir>;

// '>' / 'R' forward, '<' / 'L' backward.
Orientation parse_orientation(std::string_view text);
std::string format_orientation(const Orientation& o);
Orientation reversed_arrows(const Orientation& o);
int count_backward(const Orientation& o);

struct OrientedCycle {
  // Edge i joins vertex i and i+1 mod length; Forward means i -> i+1.
  Orientation orientation;

  std::size_t length() const { return orientation.size(); }
  int flips() const { return count_backward(orientation); }
};

OrientedCycle make_cycle(Orientation o);
OrientedCycle directed_cycle(std::size_t length);
OrientedCycle alternating_cycle(std::size_t two_ell);

using Arc = std::pair<int, int>;

// Oriented graph: no loops, no duplicate arcs, no digons.
class Digraph {
 public:
  Digraph() = default;
  Digraph(int v, std::vector<Arc> arcs);

  int v() const { return v_; }
  int e() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }

  // Connected components of the underlying graph, as vertex lists.
  std::vector<std::vector<int>> components() const;

 private:
  int v_ = 0;
  std::vector<Arc> arcs_;
};

Digraph path_digraph(const Orientation& o);
Digraph cycle_digraph(const OrientedCycle& c);
Digraph subdivide(const Digraph& d, int k);
Digraph disjoint_union(const Digraph& a, const Digraph& b);
Digraph directed_path_pattern(int edges);

// Cyclic subdivision keeps the edge order of the cycle, so the result is
// again an OrientedCycle.
OrientedCycle subdivide(const OrientedCycle& c, int k);

class Tree {
 public:
  Tree() = default;
  Tree(int v, std::vector<std::pair<int, int>> edges);

  int v() const { return v_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& adjacency() const { return adj_; }
  int degree(int x) const { return static_cast<int>(adj_[x].size()); }

 private:
  int v_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

Tree path_tree(int v);
Tree star_tree(int leaves);

// Text format: header "digraph v=<n>" or "tree v=<n>", then "u w" lines.
Digraph parse_digraph(std::string_view text);
Tree parse_tree(std::string_view text);
std::string format_digraph(const Digraph& d);
std::string format_tree(const Tree& t);

}  // namespace toursid
