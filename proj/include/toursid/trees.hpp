#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toursid/core.hpp"
#include "toursid/tournament.hpp"

namespace toursid {

enum class Provenance { CaterpillarRule, IsoPairRecursion, Trivial, Unknown };
std::string to_string(Provenance p);

struct TreeOrientation {
  Tree tree;
  // One direction per entry of tree.edges(): Forward means first -> second.
  std::vector<Dir> arc_dirs;
  Provenance provenance = Provenance::Unknown;

  std::vector<Arc> arcs() const;
  Digraph digraph() const { return Digraph(tree.v(), arcs()); }
};

struct CaterpillarInfo {
  bool is_caterpillar = false;
  std::vector<int> spine;  // non-leaf vertices in path order
};

CaterpillarInfo is_caterpillar(const Tree& t);

// Lexicographically smallest vertex sequence among all longest paths.
std::vector<int> canonical_longest_path(const Tree& t);

TreeOrientation orient_caterpillar(const Tree& t);

struct IsoPair {
  std::vector<int> h1, h2;
  int v = -1;
  int w = -1;
  std::map<int, int> phi;  // h1 -> h2
};

std::optional<IsoPair> find_isomorphic_pair(const Tree& t);

// Independent check of the cut condition and of phi being an isomorphism.
bool verify_isomorphic_pair(const Tree& t, const IsoPair& p);

TreeOrientation orient_tree_tas(const Tree& t);

struct StrongTasReport {
  bool pass = true;
  int n_checked = 0;
  // First failure, if any.
  std::optional<int> fail_n;
  std::optional<std::uint64_t> fail_tournament;
  std::vector<int> fail_embedding;
  long long fail_count = 0;
  std::string fail_bound;
};

constexpr int kMaxStrongTasN = 5;

// Labeled copies of d extending each embedding of i_set, against
// 2^{-e} n^{v - |I|}, over all tournaments on n <= n_max vertices.
StrongTasReport strong_tas_check(const Digraph& d, const std::vector<int>& i_set, int n_max);

// Labeled copies (injective homomorphisms) with some vertices pinned.
long long count_labeled_copies(const Digraph& d, const Tournament& t, const std::map<int, int>& pinned);

struct AmgmReport {
  bool pass = true;
  int n_checked = 0;
  std::optional<int> fail_n;
  std::optional<std::uint64_t> fail_tournament;
  std::optional<int> fail_vertex;
};

// Builds D = H + H' + v with arcs (w, v), (v, w') and checks
// 4 N(D, T | v -> t) <= N(H, T)^2.
AmgmReport amgm_check(const Digraph& h, int w, int n_max);
Digraph amgm_digraph(const Digraph& h, int w, int* v_out = nullptr);

}  // namespace toursid
