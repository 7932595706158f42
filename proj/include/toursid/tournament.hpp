#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "toursid/error.hpp"
#include "toursid/matrix.hpp"
#include "toursid/rational.hpp"

namespace toursid {

class Tournament {
 public:
  Tournament() = default;
  // Every pair must be oriented exactly one way; adj is row-major n*n.
  Tournament(int n, std::vector<unsigned char> adj);

  int n() const { return n_; }
  bool arc(int i, int j) const { return adj_[static_cast<std::size_t>(i) * n_ + j] != 0; }
  int out_degree(int i) const;
  int in_degree(int i) const { return n_ - 1 - out_degree(i); }
  const std::vector<unsigned char>& raw() const { return adj_; }

  bool operator==(const Tournament& o) const { return n_ == o.n_ && adj_ == o.adj_; }

 private:
  int n_ = 0;
  std::vector<unsigned char> adj_;
};

constexpr int kMaxEnumerationN = 7;

std::uint64_t tournament_count(int n);
// Upper-triangle pairs in row-major order; pair (0,1) is the most significant
// bit and a set bit means i -> j.
Tournament tournament_from_index(int n, std::uint64_t index);
void for_each_tournament(int n, const std::function<void(std::uint64_t, const Tournament&)>& fn);

Tournament random_tournament(int n, std::uint64_t seed);
Tournament transitive(int n);
Tournament cyclic_triangle();
int count_cyclic_triangles(const Tournament& t);

enum class InnerRule { Transitive, SeededRandom };
Tournament blowup(const Tournament& t, const std::vector<int>& part_sizes, InnerRule inner,
                  std::uint64_t seed = 0);

template <class T>
inline T float_tolerance() {
  if constexpr (is_exact_v<T>) {
    return T(0);
  } else {
    return T(1e-12);
  }
}

template <class T>
class WeightedTournament {
 public:
  WeightedTournament() = default;
  WeightedTournament(Matrix<T> a, bool loops_half) : a_(std::move(a)), loops_half_(loops_half) {
    const std::size_t n = a_.size();
    const T tol = float_tolerance<T>();
    for (std::size_t i = 0; i < n; ++i) {
      if (loops_half_) {
        if (abs_value(T(a_(i, i) - T(1) / 2)) > tol)
          throw Error("InvalidHost", "diagonal entries must be 1/2 when loops_half is set");
      } else {
        a_(i, i) = T(0);
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (a_(i, j) < -tol || a_(i, j) > T(1) + tol)
          throw Error("InvalidHost", "entries must lie in [0,1]");
        if (j > i && abs_value(T(a_(i, j) + a_(j, i) - T(1))) > tol)
          throw Error("InvalidHost", "A(i,j) + A(j,i) must equal 1");
      }
    }
  }

  std::size_t n() const { return a_.size(); }
  const Matrix<T>& matrix() const { return a_; }
  bool loops_half() const { return loops_half_; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_(i, j); }

 private:
  Matrix<T> a_;
  bool loops_half_ = true;
};

template <class T>
class SkewMatrix {
 public:
  SkewMatrix() = default;
  explicit SkewMatrix(Matrix<T> b) : b_(std::move(b)) {
    const std::size_t n = b_.size();
    const T tol = float_tolerance<T>();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        if (abs_value(T(b_(i, j) + b_(j, i))) > tol) throw Error("NotSkew", "B must satisfy B = -B^T");
        if (abs_value(b_(i, j)) > T(1) + tol) throw Error("EntryRangeViolated", "skew entries must lie in [-1,1]");
      }
  }

  std::size_t n() const { return b_.size(); }
  const Matrix<T>& matrix() const { return b_; }
  const T& operator()(std::size_t i, std::size_t j) const { return b_(i, j); }

  T max_abs_entry() const {
    T m(0);
    for (const auto& x : b_.data())
      if (abs_value(x) > m) m = abs_value(x);
    return m;
  }

 private:
  Matrix<T> b_;
};

WeightedTournament<Rational> with_half_loops(const Tournament& t);
WeightedTournament<Rational> all_half(std::size_t n);

template <class T>
SkewMatrix<T> skew_decompose(const WeightedTournament<T>& w) {
  if (!w.loops_half()) throw Error("MissingHalfLoops", "skew decomposition needs half loops");
  const std::size_t n = w.n();
  Matrix<T> b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = i == j ? T(0) : T(w(i, j) - T(1) / 2);
  return SkewMatrix<T>(std::move(b));
}

// A = J/2 + B with half loops. B entries must lie in [-1/2, 1/2].
template <class T>
WeightedTournament<T> compose(const SkewMatrix<T>& b) {
  const std::size_t n = b.n();
  Matrix<T> a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = T(T(1) / 2 + b(i, j));
  return WeightedTournament<T>(std::move(a), true);
}

template <class To, class From>
WeightedTournament<To> convert(const WeightedTournament<From>& w) {
  return WeightedTournament<To>(convert<To>(w.matrix()), w.loops_half());
}

template <class To, class From>
SkewMatrix<To> convert(const SkewMatrix<From>& b) {
  return SkewMatrix<To>(convert<To>(b.matrix()));
}

// max over X, Y of |sum_{x in X, y in Y} B(x,y)| / n^2. For fixed X the best
// Y takes all positive (or all negative) column sums.
template <class T>
T cutnorm_bruteforce(const SkewMatrix<T>& b) {
  const std::size_t n = b.n();
  if (n > 16) throw Error("CapExceeded", "cut norm brute force is limited to n <= 16");
  if (n == 0) return T(0);
  T best(0);
  std::vector<T> col(n);
  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
    for (std::size_t j = 0; j < n; ++j) {
      col[j] = T(0);
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1ULL) col[j] += b(i, j);
    }
    T pos(0), neg(0);
    for (const auto& c : col) {
      if (c > 0) pos += c;
      else neg -= c;
    }
    if (pos > best) best = pos;
    if (neg > best) best = neg;
  }
  return T(best / T(static_cast<long>(n * n)));
}

// File formats: "tournament n=<n>" with 0/1 rows, "wtournament n=<n>" with
// rational or decimal rows.
Tournament parse_tournament(std::string_view text);
WeightedTournament<Rational> parse_weighted(std::string_view text);
std::string format_tournament(const Tournament& t);
std::string format_weighted(const WeightedTournament<Rational>& w);

}  // namespace toursid
