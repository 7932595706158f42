#pragma once

// Independent reference implementations used only by tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "toursid/core.hpp"
#include "toursid/matrix.hpp"
#include "toursid/rational.hpp"
#include "toursid/tournament.hpp"

namespace oracle {

using toursid::Digraph;
using toursid::Dir;
using toursid::Matrix;
using toursid::Orientation;
using toursid::Rational;

inline Rational q(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Uniform labeled tree on v vertices from a Pruefer sequence.
inline toursid::Tree random_tree(int v, std::mt19937_64& gen) {
  std::vector<std::pair<int, int>> edges;
  if (v == 2) edges.push_back({0, 1});
  if (v > 2) {
    std::uniform_int_distribution<int> dist(0, v - 1);
    std::vector<int> seq(v - 2);
    for (auto& x : seq) x = dist(gen);
    std::vector<int> deg(v, 1);
    for (int x : seq) ++deg[x];
    for (int x : seq)
      for (int leaf = 0; leaf < v; ++leaf)
        if (deg[leaf] == 1) {
          edges.push_back({leaf, x});
          --deg[leaf];
          --deg[x];
          break;
        }
    int a = -1;
    for (int u = 0; u < v; ++u)
      if (deg[u] == 1) {
        if (a < 0) {
          a = u;
        } else {
          edges.push_back({a, u});
          break;
        }
      }
  }
  return toursid::Tree(v, edges);
}

// Orientation whose i-th edge is Backward when bit i of mask is set.
inline Orientation orientation_from_mask(int e, std::uint64_t mask) {
  Orientation o(e);
  for (int i = 0; i < e; ++i) o[i] = (mask >> i) & 1 ? Dir::Backward : Dir::Forward;
  return o;
}

// Odometer over all n^v maps.
template <class T>
T brute_hom(const Digraph& d, const Matrix<T>& m) {
  const int v = d.v();
  const int n = static_cast<int>(m.size());
  std::vector<int> phi(v, 0);
  T total(0);
  while (true) {
    T prod(1);
    for (auto [a, b] : d.arcs()) prod *= m(phi[a], phi[b]);
    total += prod;
    int k = 0;
    while (k < v && ++phi[k] == n) phi[k++] = 0;
    if (k == v) break;
  }
  return total;
}

// Skew matrix with entries uniform in [-scale, scale] on a rational grid.
inline Matrix<Rational> random_rational_skew(int n, std::mt19937_64& gen, int den = 8, int scale_num = 1,
                                             int scale_den = 2) {
  Matrix<Rational> b(n);
  std::uniform_int_distribution<int> dist(-den, den);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rational x(dist(gen), den);
      x *= Rational(scale_num, scale_den);
      x.canonicalize();
      b(i, j) = x;
      b(j, i) = -x;
    }
  return b;
}

inline Matrix<double> random_double_skew(int n, std::mt19937_64& gen, double scale = 0.5) {
  Matrix<double> b(n);
  std::uniform_real_distribution<double> dist(-scale, scale);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      b(i, j) = dist(gen);
      b(j, i) = -b(i, j);
    }
  return b;
}

struct TableRow {
  const char* path;
  const char* klass;
};

// Classification of all oriented paths with at most 5 edges, up to symmetry.
inline const std::vector<TableRow>& table_one() {
  static const std::vector<TableRow> rows = {
      {">", "Impartial"}, {"><", "TS"},     {">>", "TAS"},    {">>>", "TAS"},   {"<>>", "Impartial"},
      {"<><", "TS"},      {">>>>", "TAS"},  {">>><", "TAS"},  {">><>", "TS"},   {">><<", "TAS"},
      {"><><", "TS"},     {"><<>", "TS"},   {">>>>>", "TAS"}, {">>>><", "TAS"}, {">>><>", "TAS"},
      {">><>>", "TAS"},   {">>><<", "TAS"}, {">><><", "TS"},  {"><>><", "TS"},  {"<>>><", "TAS"},
      {">><<>", "TS"},    {"><><>", "TS"},
  };
  return rows;
}

// Printed expansions of 1^T A^a (A^T)^b 1 in X variables, as
// (power of n, X indices, coefficient).
struct XTerm {
  int n_power;
  std::vector<int> xs;
  long num;
  long den;
};

struct PrintedExpansion {
  const char* path;
  std::vector<XTerm> terms;
};

inline const std::vector<PrintedExpansion>& printed_expansions() {
  static const std::vector<PrintedExpansion> rows = {
      {"><", {{3, {}, 1, 4}, {0, {2}, 1, 1}}},
      {"><<<", {{5, {}, 1, 16}, {2, {2}, -1, 4}, {0, {4}, -1, 1}}},
      {">><<", {{5, {}, 1, 16}, {2, {2}, -1, 4}, {0, {4}, 1, 1}}},
      {"><<<<", {{6, {}, 1, 32}, {3, {2}, -2, 8}, {0, {2, 2}, -1, 1}}},
      {">><<<", {{6, {}, 1, 32}, {3, {2}, -2, 8}, {0, {2, 2}, 1, 2}}},
      {"><<<<<", {{7, {}, 1, 64}, {4, {2}, -3, 16}, {1, {2, 2}, -1, 4}, {2, {4}, 1, 4}, {0, {6}, 1, 1}}},
      {">><<<<", {{7, {}, 1, 64}, {4, {2}, -3, 16}, {1, {2, 2}, 1, 4}, {2, {4}, 1, 4}, {0, {6}, -1, 1}}},
      {">>><<<", {{7, {}, 1, 64}, {4, {2}, -3, 16}, {1, {2, 2}, 3, 4}, {2, {4}, -1, 4}, {0, {6}, 1, 1}}},
      {"><<<<<<", {{8, {}, 1, 128}, {5, {2}, -4, 32}, {3, {4}, 2, 8}, {0, {2, 4}, 1, 1}}},
      {">><<<<<", {{8, {}, 1, 128}, {5, {2}, -4, 32}, {2, {2, 2}, 2, 8}, {3, {4}, 2, 8}, {0, {2, 4}, -1, 1}}},
      {">>><<<<", {{8, {}, 1, 128}, {5, {2}, -4, 32}, {2, {2, 2}, 4, 8}}},
      {"><<<<<<<",
       {{9, {}, 1, 256}, {6, {2}, -5, 64}, {3, {2, 2}, 2, 16}, {4, {4}, 3, 16}, {0, {2, 2, 2}, 1, 4},
        {1, {2, 4}, 2, 4}, {2, {6}, -1, 4}, {0, {8}, -1, 1}}},
  };
  return rows;
}

}  // namespace oracle
