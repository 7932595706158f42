#include "toursid/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <set>

namespace toursid {

Spectrum eigenvalues(const SkewMatrix<double>& b) {
  const std::size_t n = b.n();
  if (n == 0) throw Error("InvalidArgument", "empty matrix");
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = b(i, j);
  // B^2 is real symmetric with eigenvalues -lambda^2, each pair doubled.
  Eigen::MatrixXd sq = m * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sq);
  if (solver.info() != Eigen::Success) throw Error("ConvergenceFailure", "symmetric eigensolver failed");
  const double scale = std::max(1.0, sq.norm());
  Eigen::MatrixXd residual = sq * solver.eigenvectors() - solver.eigenvectors() * solver.eigenvalues().asDiagonal();
  if (residual.norm() > 1e-9 * scale) throw Error("ConvergenceFailure", "eigen decomposition residual too large");
  std::vector<double> all;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
    all.push_back(std::sqrt(std::max(0.0, -solver.eigenvalues()(k))));
  std::sort(all.begin(), all.end(), std::greater<>());
  Spectrum s;
  for (std::size_t k = 0; k < all.size(); k += 2) s.lambdas.push_back(all[k]);
  s.lmax = s.lambdas.front();
  return s;
}

SPolynomial expand_path(const Orientation& o) {
  const int e = static_cast<int>(o.size());
  if (e > kMaxExpansionEdges) throw Error("CapExceeded", "expansion is limited to 24 edges");
  // State: finished segments (zero-length ones counted as powers of n) plus
  // the length of the open run of B factors.
  struct Key {
    Monomial mono;
    int run;
    bool operator<(const Key& k) const {
      if (run != k.run) return run < k.run;
      if (mono == k.mono) return false;
      return mono < k.mono;
    }
  };
  auto close = [](Monomial m, int run, bool& alive) {
    alive = true;
    if (run == 0) {
      ++m.n_power;
    } else if (run % 2 == 1) {
      alive = false;
    } else {
      m.s_indices.insert(std::upper_bound(m.s_indices.begin(), m.s_indices.end(), run), run);
    }
    return m;
  };
  std::map<Key, Rational> states;
  states[Key{Monomial{}, 0}] = 1;
  for (Dir d : o) {
    std::map<Key, Rational> next;
    const Rational sign = d == Dir::Forward ? 1 : -1;
    for (const auto& [key, coef] : states) {
      // B factor: A = J/2 + B, A^T = J/2 - B.
      next[Key{key.mono, key.run + 1}] += coef * sign;
      bool alive;
      Monomial closed = close(key.mono, key.run, alive);
      if (alive) next[Key{closed, 0}] += coef / 2;
    }
    states.clear();
    for (auto& [k, c] : next)
      if (c != 0) states.emplace(k, c);
  }
  SPolynomial p;
  p.e = e;
  p.v = e + 1;
  for (const auto& [key, coef] : states) {
    bool alive;
    Monomial closed = close(key.mono, key.run, alive);
    if (alive) p.terms[closed] += coef;
  }
  for (auto it = p.terms.begin(); it != p.terms.end();)
    it = it->second == 0 ? p.terms.erase(it) : std::next(it);
  return p;
}

namespace {

int max_s_index(const SPolynomial& p) {
  int top = 0;
  for (const auto& [m, c] : p.terms)
    for (int i : m.s_indices) top = std::max(top, i);
  return top;
}

int x_sign(const std::vector<int>& indices) {
  int sign = 1;
  for (int i : indices)
    if ((i / 2) % 2 == 1) sign = -sign;
  return sign;
}

std::string format_poly(const SPolynomial& p, char var, bool x_form) {
  if (p.terms.empty()) return "0";
  const int top = max_s_index(p);
  std::string out;
  for (const auto& [m, c] : p.terms) {
    Rational coef = x_form ? Rational(c * x_sign(m.s_indices)) : c;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(coef) + ")*n^" + std::to_string(m.n_power);
    for (int idx = 2; idx <= top; idx += 2) {
      int count = static_cast<int>(std::count(m.s_indices.begin(), m.s_indices.end(), idx));
      out += "*";
      out += var;
      out += std::to_string(idx) + "^" + std::to_string(count);
    }
  }
  return out;
}

}  // namespace

std::string format_spoly(const SPolynomial& p) { return format_poly(p, 'S', false); }
std::string format_xpoly(const SPolynomial& p) { return format_poly(p, 'X', true); }

Rational x_coefficient(const SPolynomial& p, int n_power, std::vector<int> x_indices) {
  std::sort(x_indices.begin(), x_indices.end());
  auto it = p.terms.find(Monomial{n_power, x_indices});
  if (it == p.terms.end()) return 0;
  return it->second * x_sign(x_indices);
}

std::string to_string(SignCertificate c) {
  switch (c) {
    case SignCertificate::CertifiedTAS: return "CertifiedTAS";
    case SignCertificate::CertifiedTS: return "CertifiedTS";
    case SignCertificate::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

// Monomial in n and X_{2t}; X_0 is identified with n.
struct XMono {
  int n_power = 0;
  std::vector<int> xs;  // ascending, all >= 2
  bool operator<(const XMono& o) const {
    if (n_power != o.n_power) return n_power > o.n_power;
    return xs < o.xs;
  }
  bool operator==(const XMono& o) const { return n_power == o.n_power && xs == o.xs; }
  int max_index() const { return xs.empty() ? 0 : xs.back(); }
};

std::string show(const XMono& m) {
  std::string s = "n^" + std::to_string(m.n_power);
  for (int x : m.xs) s += "*X" + std::to_string(x);
  return s;
}

XMono with_index(XMono m, int idx) {
  if (idx == 0) {
    ++m.n_power;
  } else {
    m.xs.insert(std::upper_bound(m.xs.begin(), m.xs.end(), idx), idx);
  }
  return m;
}

XMono without_one(XMono m, int idx) {
  m.xs.erase(std::find(m.xs.begin(), m.xs.end(), idx));
  return m;
}

struct Step {
  XMono to;
  Rational factor;
  std::string rule;
};

std::vector<Step> rewrites(const XMono& m) {
  std::vector<Step> out;
  std::set<int> distinct(m.xs.begin(), m.xs.end());
  for (int two_s : distinct) {
    const int s = two_s / 2;
    // (iii) X_{2s} <= (n/2)^{2(s-t)} X_{2t}
    for (int t = 0; t < s; ++t) {
      XMono to = with_index(without_one(m, two_s), 2 * t);
      to.n_power += 2 * (s - t);
      out.push_back({to, pow(Rational(1, 4), static_cast<unsigned>(s - t)),
                     "(iii) X" + std::to_string(two_s) + "->X" + std::to_string(2 * t)});
    }
    // (iv) X_{2s}^2 <= X_{2(s-t)} X_{2(s+t)}
    if (std::count(m.xs.begin(), m.xs.end(), two_s) >= 2) {
      for (int t = 1; t <= s; ++t) {
        XMono to = without_one(without_one(m, two_s), two_s);
        to = with_index(with_index(to, 2 * (s - t)), 2 * (s + t));
        out.push_back({to, Rational(1), "(iv) X" + std::to_string(two_s) + "^2->X" + std::to_string(2 * (s - t)) +
                                             "*X" + std::to_string(2 * (s + t))});
      }
    }
  }
  return out;
}

struct Reach {
  Rational factor;
  std::string path;
};

// Minimal constant K with m <= K * target for every reachable target. The
// rewrite graph is acyclic: (iii) lowers the index sum and (iv) keeps it
// while spreading the indices.
class ReachTable {
 public:
  const std::map<XMono, Reach>& of(const XMono& m) {
    auto it = memo_.find(m);
    if (it != memo_.end()) return it->second;
    std::map<XMono, Reach> best;
    best[m] = Reach{Rational(1), ""};
    for (const auto& step : rewrites(m)) {
      const auto& sub = of(step.to);
      for (const auto& [target, r] : sub) {
        Rational k = step.factor * r.factor;
        auto found = best.find(target);
        if (found == best.end() || k < found->second.factor) {
          best[target] = Reach{k, step.rule + (r.path.empty() ? "" : ", " + r.path)};
        }
      }
    }
    return memo_.emplace(m, std::move(best)).first->second;
  }

 private:
  std::map<XMono, std::map<XMono, Reach>> memo_;
};

// Shows sum of terms <= 0 by charging each positive term against negative
// ones. Terms are (monomial, coefficient).
bool cancel_positive(const std::map<XMono, Rational>& terms, std::vector<std::string>& trace) {
  std::vector<std::pair<XMono, Rational>> positive;
  std::map<XMono, Rational> budget;
  for (const auto& [m, c] : terms) {
    if (c > 0) positive.push_back({m, c});
    else if (c < 0) budget[m] = -c;
  }
  std::stable_sort(positive.begin(), positive.end(), [](const auto& a, const auto& b) {
    return a.first.max_index() > b.first.max_index();
  });
  ReachTable reach;
  for (const auto& [m, c] : positive) {
    Rational remaining = c;
    const auto& table = reach.of(m);
    std::vector<std::pair<XMono, Reach>> targets;
    for (const auto& [target, r] : table)
      if (budget.count(target) && budget[target] > 0) targets.push_back({target, r});
    std::stable_sort(targets.begin(), targets.end(), [](const auto& a, const auto& b) {
      if (a.first.max_index() != b.first.max_index()) return a.first.max_index() > b.first.max_index();
      return a.second.factor < b.second.factor;
    });
    for (const auto& [target, r] : targets) {
      if (remaining == 0) break;
      Rational& left = budget[target];
      if (left == 0) continue;
      Rational take = std::min(remaining, Rational(left / r.factor));
      left -= take * r.factor;
      remaining -= take;
      trace.push_back("(" + to_string(take) + ")*" + show(m) + " <= (" + to_string(Rational(take * r.factor)) +
                      ")*" + show(target) + " by " + r.path);
    }
    if (remaining > 0) {
      trace.push_back("no cover for (" + to_string(remaining) + ")*" + show(m));
      return false;
    }
  }
  return true;
}

}  // namespace

SignProof certify_sign(const SPolynomial& p) {
  SignProof proof;
  // D = p - n^v / 2^e in X variables.
  std::map<XMono, Rational> d;
  for (const auto& [m, c] : p.terms) {
    XMono x{m.n_power, m.s_indices};
    d[x] += c * x_sign(m.s_indices);
  }
  d[XMono{p.v, {}}] -= Rational(1, 1) / pow(Rational(2), static_cast<unsigned>(p.e));
  for (auto it = d.begin(); it != d.end();)
    it = it->second == 0 ? d.erase(it) : std::next(it);

  std::string shown;
  for (const auto& [m, c] : d) shown += (shown.empty() ? "" : " + ") + ("(" + to_string(c) + ")*" + show(m));
  proof.trace.push_back("h - n^" + std::to_string(p.v) + "/2^" + std::to_string(p.e) + " = " +
                        (shown.empty() ? "0" : shown));
  if (d.empty()) {
    proof.result = SignCertificate::CertifiedTAS;
    proof.trace.push_back("difference vanishes identically; the path is also TS");
    return proof;
  }
  std::vector<std::string> tas_trace;
  if (cancel_positive(d, tas_trace)) {
    proof.result = SignCertificate::CertifiedTAS;
    proof.trace.push_back("TAS: show difference <= 0");
    proof.trace.insert(proof.trace.end(), tas_trace.begin(), tas_trace.end());
    return proof;
  }
  std::map<XMono, Rational> neg;
  for (const auto& [m, c] : d) neg[m] = -c;
  std::vector<std::string> ts_trace;
  if (cancel_positive(neg, ts_trace)) {
    proof.result = SignCertificate::CertifiedTS;
    proof.trace.push_back("TS: show difference >= 0");
    proof.trace.insert(proof.trace.end(), ts_trace.begin(), ts_trace.end());
    return proof;
  }
  proof.trace.push_back("TAS attempt failed:");
  proof.trace.insert(proof.trace.end(), tas_trace.begin(), tas_trace.end());
  proof.trace.push_back("TS attempt failed:");
  proof.trace.insert(proof.trace.end(), ts_trace.begin(), ts_trace.end());
  return proof;
}

}  // namespace toursid
