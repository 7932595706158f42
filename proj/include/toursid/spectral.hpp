#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "toursid/core.hpp"
#include "toursid/error.hpp"
#include "toursid/hom.hpp"
#include "toursid/rational.hpp"
#include "toursid/tournament.hpp"

namespace toursid {

struct Spectrum {
  // Moduli of the eigenvalue pairs +-i*lambda, descending, ceil(n/2) entries.
  std::vector<double> lambdas;
  double lmax = 0.0;
};

Spectrum eigenvalues(const SkewMatrix<double>& b);

// 1^T B^k 1, signed.
template <class T>
T quadratic_moment(const SkewMatrix<T>& b, int k) {
  std::vector<T> x(b.n(), T(1));
  for (int i = 0; i < k; ++i) x = b.matrix().right_mul(x);
  return sum_all(x);
}

// S_{2t} = 1^T B^{2t} 1.
template <class T>
T s_moment(const SkewMatrix<T>& b, int t) {
  return quadratic_moment(b, 2 * t);
}

// X_{2t} = |1^T B^{2t} 1|, with the convention X_0 = n.
template <class T>
T x_moment(const SkewMatrix<T>& b, int t) {
  if (t < 0) throw Error("InvalidArgument", "moment index must be nonnegative");
  if (t == 0) return T(static_cast<long>(b.n()));
  return abs_value(s_moment(b, t));
}

struct XLemmaReport {
  bool odd_vanish = true;   // (i)
  bool sign_rule = true;    // (ii)
  bool radius_bound = true; // (iii)
  bool cauchy_schwarz = true; // (iv)
  // rhs - lhs for (iii) and (iv), as doubles for display.
  double margin_iii = 0.0;
  double margin_iv = 0.0;
  bool pass() const { return odd_vanish && sign_rule && radius_bound && cauchy_schwarz; }
};

// Checks the four clauses of the moment lemma for the pair (s, t). Float
// inputs are compared with relative tolerance rel_tol.
template <class T>
XLemmaReport check_x_lemma(const SkewMatrix<T>& b, int s, int t, double rel_tol = 1e-9) {
  if (t < 0 || s < t) throw Error("InvalidArgument", "need s >= t >= 0");
  if (b.max_abs_entry() > T(1) / 2) throw Error("EntryRangeViolated", "entries must lie in [-1/2, 1/2]");
  const std::size_t n = b.n();
  XLemmaReport r;
  const int top = 2 * (s + t) + 1;
  std::vector<T> moments;
  {
    std::vector<T> x(n, T(1));
    moments.push_back(sum_all(x));
    for (int k = 1; k <= top; ++k) {
      x = b.matrix().right_mul(x);
      moments.push_back(sum_all(x));
    }
  }
  // Scale for tolerances: magnitude of the even moments involved.
  auto tol_for = [&](const T& scale) -> T {
    if constexpr (is_exact_v<T>) {
      (void)scale;
      return T(0);
    } else {
      return T(rel_tol * std::max(1.0, static_cast<double>(abs_value(scale))));
    }
  };
  T scale_all(0);
  for (const auto& m : moments)
    if (abs_value(m) > scale_all) scale_all = abs_value(m);
  for (int k = 1; k <= top; k += 2)
    if (abs_value(moments[k]) > tol_for(scale_all)) r.odd_vanish = false;
  for (int k = 2; k <= top; k += 2) {
    const bool should_be_negative = k % 4 == 2;
    if (should_be_negative && moments[k] > tol_for(scale_all)) r.sign_rule = false;
    if (!should_be_negative && moments[k] < -tol_for(scale_all)) r.sign_rule = false;
  }
  auto X = [&](int idx) -> T { return idx == 0 ? T(static_cast<long>(n)) : abs_value(moments[2 * idx]); };
  T half_n = T(static_cast<long>(n)) / T(2);
  T rhs3 = X(t) * ipow(half_n, static_cast<unsigned>(2 * (s - t)));
  T lhs3 = X(s);
  r.radius_bound = lhs3 <= rhs3 + tol_for(rhs3);
  T lhs4 = X(s) * X(s);
  T rhs4 = X(s - t) * X(s + t);
  r.cauchy_schwarz = lhs4 <= rhs4 + tol_for(rhs4);
  r.margin_iii = to_double(T(rhs3 - lhs3));
  r.margin_iv = to_double(T(rhs4 - lhs4));
  return r;
}

// Polynomial in n and S_{2t} = 1^T B^{2t} 1 with exact coefficients.
struct Monomial {
  int n_power = 0;
  // Even indices 2t (t >= 1), sorted ascending.
  std::vector<int> s_indices;
  bool operator<(const Monomial& o) const {
    if (n_power != o.n_power) return n_power > o.n_power;
    return s_indices < o.s_indices;
  }
  bool operator==(const Monomial& o) const { return n_power == o.n_power && s_indices == o.s_indices; }
};

struct SPolynomial {
  int v = 0;
  int e = 0;
  std::map<Monomial, Rational> terms;
};

constexpr int kMaxExpansionEdges = 24;

SPolynomial expand_path(const Orientation& o);

// "(p/q)*n^k*S2^a*S4^b + ..." with every S variable up to the largest index.
std::string format_spoly(const SPolynomial& p);
// Same polynomial in X variables (S_{2t} = (-1)^t X_{2t}).
std::string format_xpoly(const SPolynomial& p);
// Coefficient of a monomial in X form, e.g. x_coefficient(p, 2, {2}) for n^2 X_2.
Rational x_coefficient(const SPolynomial& p, int n_power, std::vector<int> x_indices);

template <class T>
T eval_spoly(const SPolynomial& p, const SkewMatrix<T>& b) {
  std::map<int, T> s_cache;
  T n(static_cast<long>(b.n()));
  T total(0);
  for (const auto& [mono, coef] : p.terms) {
    T term = from_rational<T>(coef) * ipow(n, static_cast<unsigned>(mono.n_power));
    for (int idx : mono.s_indices) {
      auto it = s_cache.find(idx);
      if (it == s_cache.end()) it = s_cache.emplace(idx, quadratic_moment(b, idx)).first;
      term *= it->second;
    }
    total += term;
  }
  return total;
}

enum class SignCertificate { CertifiedTAS, CertifiedTS, Unknown };
std::string to_string(SignCertificate c);

struct SignProof {
  SignCertificate result = SignCertificate::Unknown;
  std::vector<std::string> trace;
};

// Tries to show p - n^v/2^e <= 0 (TAS) or >= 0 (TS) with the moment lemma's
// rules (iii) and (iv), cancelling positive terms against negative ones.
SignProof certify_sign(const SPolynomial& p);

}  // namespace toursid
