#pragma once

#include <cstddef>
#include <type_traits>
#include <vector>

#include "toursid/error.hpp"

namespace toursid {

// Dense square matrix, row-major. T is either Rational or double.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, const T& fill = T(0)) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  Matrix transpose() const {
    Matrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  Matrix operator*(const Matrix& o) const {
    if (o.n_ != n_) throw Error("SizeMismatch", "matrix product of different sizes");
    Matrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k) {
        const T& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) out(i, j) += a * o(k, j);
      }
    return out;
  }

  Matrix operator+(const Matrix& o) const {
    Matrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
  }

  Matrix operator-(const Matrix& o) const {
    Matrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
    return out;
  }

  Matrix scaled(const T& s) const {
    Matrix out(*this);
    for (auto& x : out.data_) x *= s;
    return out;
  }

  bool operator==(const Matrix& o) const { return n_ == o.n_ && data_ == o.data_; }

  static Matrix identity(std::size_t n) {
    Matrix out(n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = T(1);
    return out;
  }

  T trace() const {
    T s(0);
    for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
  }

  // Row vector times matrix: (x^T M)^T.
  std::vector<T> left_mul(const std::vector<T>& x) const {
    std::vector<T> out(n_, T(0));
    for (std::size_t i = 0; i < n_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) out[j] += x[i] * (*this)(i, j);
    }
    return out;
  }

  std::vector<T> right_mul(const std::vector<T>& x) const {
    std::vector<T> out(n_, T(0));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i] += (*this)(i, j) * x[j];
    return out;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

template <class T>
T sum_all(const std::vector<T>& v) {
  T s(0);
  for (const auto& x : v) s += x;
  return s;
}

template <class T>
Matrix<T> matrix_power(const Matrix<T>& m, unsigned k) {
  Matrix<T> result = Matrix<T>::identity(m.size());
  Matrix<T> base = m;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

// Converts between scalar backends (Rational -> double is the common case).
template <class To, class From>
Matrix<To> convert(const Matrix<From>& m) {
  Matrix<To> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      if constexpr (std::is_same_v<To, double> && !std::is_same_v<From, double>) {
        out(i, j) = m(i, j).get_d();
      } else {
        out(i, j) = To(m(i, j));
      }
    }
  return out;
}

}  // namespace toursid
