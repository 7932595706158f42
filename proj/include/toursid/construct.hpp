#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toursid/core.hpp"
#include "toursid/hom.hpp"
#include "toursid/matrix.hpp"
#include "toursid/rational.hpp"
#include "toursid/tournament.hpp"

namespace toursid {

// Names: "B1", "BPrime", "MBalanced".
SkewMatrix<Rational> named_kernel(const std::string& name);
std::vector<std::string> named_kernel_names();

constexpr std::size_t kMaxTensorSize = 4096;

template <class T>
Matrix<T> kronecker(const Matrix<T>& a, const Matrix<T>& b) {
  const std::size_t n = a.size(), m = b.size();
  Matrix<T> out(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) out(i * m + k, j * m + l) = a(i, j) * b(k, l);
    }
  return out;
}

// m-fold product of kernel values; symmetric (not skew) when m is even.
template <class T>
Matrix<T> kernel_tensor_power(const Matrix<T>& b, int m) {
  if (m < 1) throw Error("InvalidArgument", "tensor power needs m >= 1");
  double size = 1;
  for (int i = 0; i < m; ++i) size *= static_cast<double>(b.size());
  if (size > static_cast<double>(kMaxTensorSize)) throw Error("CapExceeded", "tensor power exceeds 4096 points");
  Matrix<T> out = b;
  for (int i = 1; i < m; ++i) out = kronecker(out, b);
  return out;
}

template <class T>
SkewMatrix<T> tensor_power(const SkewMatrix<T>& b, int m) {
  if (m % 2 == 0) throw Error("NotSkewForEvenPower", "an even tensor power of a skew kernel is symmetric");
  return SkewMatrix<T>(kernel_tensor_power(b.matrix(), m));
}

// Signed density of a pattern in an arbitrary step kernel.
template <class T>
T kernel_density(const Digraph& d, const Matrix<T>& k) {
  return normalize(hom_raw(d, k), k.size(), d.v());
}

// 4x4 kernel with t(P_{2k+1}) = (-1)^k a b^k.
SkewMatrix<double> ab_construction(double a, double b);

enum class Violation { ViolatesTAS, ViolatesTS, None };
std::string to_string(Violation v);

struct Certificate {
  WeightedTournament<Rational> host;
  Orientation pattern;
  Violation direction = Violation::None;
  Rational threshold;
  Rational value;
};

// Direction from the strict comparison of value and threshold.
Violation compare_to_threshold(const Rational& value, const Rational& threshold);

Certificate make_certificate(WeightedTournament<Rational> host, Orientation pattern);
Certificate transitive_triangle_certificate();
Certificate perturbed_cyclic_certificate(const Rational& delta = Rational(1, 100));
WeightedTournament<Rational> perturbed_cyclic_host(const Rational& delta);

std::string certificate_json(const Certificate& c);

template <class T>
WeightedTournament<T> w_eps(const SkewMatrix<T>& b, const T& eps) {
  if (abs_value(T(eps * b.max_abs_entry())) > T(1) / 2)
    throw Error("RangeViolated", "eps * max|B| must be at most 1/2");
  const std::size_t n = b.n();
  Matrix<T> a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = T(T(1) / 2 + eps * b(i, j));
  return WeightedTournament<T>(std::move(a), true);
}

struct SparseGraph {
  int m = 0;  // number of parts
  int k = 0;  // number of vertices
  int e = 0;  // number of edges, binom(m, 2)
  std::vector<int> part_of;
  std::vector<std::pair<int, int>> edges;
  bool violates = false;
};

SparseGraph sparse_non_tas(const std::vector<int>& part_sizes);

// Contracts parts of an oriented sparse graph; edge i is oriented
// first -> second when forward[i]. Returns the m-vertex tournament.
Tournament quotient_tournament(const SparseGraph& g, const std::vector<bool>& forward);

}  // namespace toursid
