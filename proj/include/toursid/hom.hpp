#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "toursid/core.hpp"
#include "toursid/error.hpp"
#include "toursid/matrix.hpp"
#include "toursid/rational.hpp"
#include "toursid/tournament.hpp"

namespace toursid {

template <class T>
struct HomCount {
  T raw;
  T density;
};

constexpr double kMaxGenericMaps = 1e9;

namespace detail {

// Backtracking over vertices in BFS order of the underlying graph, so every
// arc factor is applied as soon as both endpoints are placed and zero partial
// products are pruned.
template <class T>
class MapEnumerator {
 public:
  MapEnumerator(const Digraph& d, const Matrix<T>& m) : d_(d), m_(m), n_(m.size()) {
    const int v = d.v();
    std::vector<std::vector<int>> nb(v);
    for (auto [a, b] : d.arcs()) {
      nb[a].push_back(b);
      nb[b].push_back(a);
    }
    std::vector<char> seen(v, 0);
    for (int s = 0; s < v; ++s) {
      if (seen[s]) continue;
      std::vector<int> queue{s};
      seen[s] = 1;
      for (std::size_t q = 0; q < queue.size(); ++q) {
        order_.push_back(queue[q]);
        for (int y : nb[queue[q]])
          if (!seen[y]) {
            seen[y] = 1;
            queue.push_back(y);
          }
      }
    }
    std::vector<int> pos(v);
    for (int i = 0; i < v; ++i) pos[order_[i]] = i;
    back_arcs_.assign(v, {});
    for (auto [a, b] : d.arcs()) {
      int later = std::max(pos[a], pos[b]);
      back_arcs_[later].push_back({a, b});
    }
    phi_.assign(v, 0);
  }

  T total() {
    if (d_.v() == 0) return T(1);
    if (n_ == 0) return T(0);
    T acc(0);
    recurse(0, T(1), acc);
    return acc;
  }

 private:
  void recurse(int depth, const T& partial, T& acc) {
    if (depth == d_.v()) {
      acc += partial;
      return;
    }
    const int x = order_[depth];
    for (std::size_t i = 0; i < n_; ++i) {
      phi_[x] = static_cast<int>(i);
      T p = partial;
      for (auto [a, b] : back_arcs_[depth]) {
        p *= m_(phi_[a], phi_[b]);
        if (p == 0) break;
      }
      if (p == 0) continue;
      recurse(depth + 1, p, acc);
    }
  }

  const Digraph& d_;
  const Matrix<T>& m_;
  std::size_t n_;
  std::vector<int> order_;
  std::vector<std::vector<Arc>> back_arcs_;
  std::vector<int> phi_;
};

}  // namespace detail

// Sum over all maps V(D) -> [n] of the product of arc weights.
template <class T>
T hom_generic_raw(const Digraph& d, const Matrix<T>& m) {
  if (std::pow(static_cast<double>(m.size()), d.v()) > kMaxGenericMaps)
    throw Error("CapExceeded", "n^v exceeds the 1e9 map budget of the generic evaluator");
  return detail::MapEnumerator<T>(d, m).total();
}

template <class T>
T normalize(const T& raw, std::size_t n, int v) {
  return T(raw / ipow(T(static_cast<long>(n)), static_cast<unsigned>(v)));
}

template <class T>
HomCount<T> hom_generic(const Digraph& d, const WeightedTournament<T>& a) {
  T raw = hom_generic_raw(d, a.matrix());
  return {raw, normalize(raw, a.n(), d.v())};
}

template <class T>
HomCount<T> hom_generic(const Digraph& d, const SkewMatrix<T>& b) {
  T raw = hom_generic_raw(d, b.matrix());
  return {raw, normalize(raw, b.n(), d.v())};
}

// 1^T M_1 ... M_e 1 with M_i = A (forward) or A^T (backward).
template <class T>
T hom_path_raw(const Orientation& o, const Matrix<T>& m) {
  std::vector<T> x(m.size(), T(1));
  for (Dir dir : o) {
    x = dir == Dir::Forward ? m.left_mul(x) : m.right_mul(x);
  }
  return sum_all(x);
}

template <class T>
HomCount<T> hom_path(const Orientation& o, const WeightedTournament<T>& a) {
  T raw = hom_path_raw(o, a.matrix());
  return {raw, normalize(raw, a.n(), static_cast<int>(o.size()) + 1)};
}

template <class T>
T hom_cycle_raw(const OrientedCycle& c, const Matrix<T>& m) {
  Matrix<T> mt = m.transpose();
  Matrix<T> prod = Matrix<T>::identity(m.size());
  for (Dir dir : c.orientation) prod = prod * (dir == Dir::Forward ? m : mt);
  return prod.trace();
}

template <class T>
HomCount<T> hom_cycle(const OrientedCycle& c, const WeightedTournament<T>& a) {
  T raw = hom_cycle_raw(c, a.matrix());
  return {raw, normalize(raw, a.n(), static_cast<int>(c.length()))};
}

namespace detail {

// Tree DP on one component given by its vertex list; returns the raw count.
template <class T>
T hom_tree_component(const Digraph& d, const std::vector<int>& comp, const Matrix<T>& m) {
  const std::size_t n = m.size();
  const int root = comp.front();
  // Adjacency with direction: +1 for x -> y, -1 for y -> x.
  std::vector<std::vector<std::pair<int, int>>> nb(d.v());
  for (auto [a, b] : d.arcs()) {
    nb[a].push_back({b, +1});
    nb[b].push_back({a, -1});
  }
  std::vector<int> order{root}, parent(d.v(), -1), parent_sign(d.v(), 0);
  parent[root] = root;
  for (std::size_t q = 0; q < order.size(); ++q) {
    int x = order[q];
    for (auto [y, s] : nb[x])
      if (parent[y] < 0) {
        parent[y] = x;
        parent_sign[y] = s;
        order.push_back(y);
      }
  }
  std::vector<std::vector<T>> f(d.v());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int x = *it;
    if (f[x].empty()) f[x].assign(n, T(1));
    if (x == root) break;
    int p = parent[x];
    if (f[p].empty()) f[p].assign(n, T(1));
    // Message to the parent: g[i] = sum_j w(i,j) f_x[j].
    std::vector<T> g = parent_sign[x] > 0 ? m.right_mul(f[x]) : m.left_mul(f[x]);
    for (std::size_t i = 0; i < n; ++i) f[p][i] *= g[i];
  }
  return sum_all(f[root]);
}

}  // namespace detail

// Product over components; forests use the tree DP, anything with a cycle
// falls back to the generic evaluator on that component.
template <class T>
T hom_raw(const Digraph& d, const Matrix<T>& m) {
  T total(1);
  for (const auto& comp : d.components()) {
    std::vector<int> local(d.v(), -1);
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<int>(i);
    std::vector<Arc> arcs;
    for (auto [a, b] : d.arcs())
      if (local[a] >= 0) arcs.push_back({local[a], local[b]});
    Digraph sub(static_cast<int>(comp.size()), std::move(arcs));
    T part = sub.e() + 1 == sub.v() ? detail::hom_tree_component(sub, {0}, m)
                                    : hom_generic_raw(sub, m);
    total *= part;
    if (total == 0) break;
  }
  return total;
}

template <class T>
HomCount<T> hom(const Digraph& d, const WeightedTournament<T>& a) {
  T raw = hom_raw(d, a.matrix());
  return {raw, normalize(raw, a.n(), d.v())};
}

template <class T>
T hom_density(const Digraph& d, const SkewMatrix<T>& b) {
  return normalize(hom_raw(d, b.matrix()), b.n(), d.v());
}

// 1^T B^{2k} 1 / n^{2k+1}; zero for odd edge counts.
template <class T>
T t_kernel_path(const SkewMatrix<T>& b, int edges) {
  if (edges < 0) throw Error("InvalidArgument", "edge count must be nonnegative");
  if (edges % 2 != 0) return T(0);
  std::vector<T> x(b.n(), T(1));
  for (int i = 0; i < edges; ++i) x = b.matrix().right_mul(x);
  return normalize(sum_all(x), b.n(), edges + 1);
}

// tr(B^len) / n^len.
template <class T>
T t_kernel_cycle(const SkewMatrix<T>& b, int len) {
  if (len < 3) throw Error("TooShort", "cycle length must be at least 3");
  if (len % 2 != 0) return T(0);
  return normalize(matrix_power(b.matrix(), static_cast<unsigned>(len)).trace(), b.n(), len);
}

// Density of the quasirandom host: n^v / 2^e as a raw count.
inline Rational quasirandom_threshold(std::size_t n, int v, int e) {
  Rational q(pow(BigInt(static_cast<long>(n)), static_cast<unsigned>(v)),
             pow(BigInt(2), static_cast<unsigned>(e)));
  q.canonicalize();
  return q;
}

}  // namespace toursid
