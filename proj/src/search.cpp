#include "toursid/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "json.hpp"
#include "toursid/error.hpp"
#include "toursid/hom.hpp"
#include "toursid/rng.hpp"

namespace toursid {

std::string to_string(SidorenkoMode m) { return m == SidorenkoMode::TAS ? "tas" : "ts"; }

SidorenkoMode parse_mode(const std::string& text) {
  if (text == "tas" || text == "TAS") return SidorenkoMode::TAS;
  if (text == "ts" || text == "TS") return SidorenkoMode::TS;
  throw Error("InvalidArgument", "mode must be 'tas' or 'ts'");
}

namespace {

// Forward-mode derivative in a single direction.
struct Dual {
  double v = 0.0, d = 0.0;
  Dual() = default;
  Dual(int x) : v(x) {}
  Dual(long x) : v(static_cast<double>(x)) {}
  Dual(double x) : v(x) {}
  Dual(double x, double dx) : v(x), d(dx) {}
  Dual& operator+=(const Dual& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    d -= o.d;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    d = d * o.v + v * o.d;
    v *= o.v;
    return *this;
  }
  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend bool operator==(const Dual& a, int z) { return a.v == z && a.d == 0.0; }
  friend bool operator!=(const Dual& a, int z) { return !(a == z); }
};

std::optional<Violation> strict_violation(const Rational& value, const Rational& threshold, SidorenkoMode mode) {
  if (mode == SidorenkoMode::TAS && value > threshold) return Violation::ViolatesTAS;
  if (mode == SidorenkoMode::TS && value < threshold) return Violation::ViolatesTS;
  return std::nullopt;
}

double margin_of(const Rational& value, const Rational& threshold, SidorenkoMode mode) {
  const Rational diff = mode == SidorenkoMode::TAS ? threshold - value : value - threshold;
  return to_double(Rational(diff / threshold));
}

double margin_of(double value, double threshold, SidorenkoMode mode) {
  return (mode == SidorenkoMode::TAS ? threshold - value : value - threshold) / threshold;
}

}  // namespace

std::optional<SearchCertificate> certify(const Digraph& d, const WeightedTournament<Rational>& host,
                                         SidorenkoMode mode) {
  const Rational value = hom_raw(d, host.matrix());
  const Rational threshold = quasirandom_threshold(host.n(), d.v(), d.e());
  auto dir = strict_violation(value, threshold, mode);
  if (!dir) return std::nullopt;
  if (std::pow(static_cast<double>(host.n()), d.v()) <= kMaxGenericMaps) {
    if (hom_generic_raw(d, host.matrix()) != value)
      throw Error("InternalAssertionFailed", "evaluators disagree on a certificate");
  }
  SearchCertificate c;
  c.pattern = d;
  c.host = host;
  c.direction = *dir;
  c.value = value;
  c.threshold = threshold;
  return c;
}

WeightedTournament<Rational> rationalize_host(const Matrix<double>& host, std::int64_t max_den) {
  const std::size_t n = host.size();
  Matrix<Rational> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(host(i, i) - 0.5) > 1e-9) throw Error("InvalidHost", "diagonal must be 1/2");
    a(i, i) = Rational(1, 2);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double x = host(i, j);
      if (!(x >= -1e-9 && x <= 1 + 1e-9) || std::fabs(x + host(j, i) - 1) > 1e-9)
        throw Error("InvalidHost", "entries must lie in [0,1] with A(i,j) + A(j,i) = 1");
      Rational q = rationalize(std::clamp(x, 0.0, 1.0), max_den);
      a(i, j) = q;
      a(j, i) = 1 - q;
    }
  }
  return WeightedTournament<Rational>(std::move(a), true);
}

std::optional<SearchCertificate> certify_float(const Digraph& d, const Matrix<double>& host, SidorenkoMode mode,
                                               std::int64_t max_den) {
  return certify(d, rationalize_host(host, max_den), mode);
}

Matrix<double> density_gradient(const Digraph& d, const Matrix<double>& a) {
  const std::size_t n = a.size();
  Matrix<double> grad(n);
  Matrix<Dual> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Dual(a(i, j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j).d = 1.0;
      m(j, i).d = -1.0;
      grad(i, j) = hom_raw(d, m).d;
      m(i, j).d = 0.0;
      m(j, i).d = 0.0;
    }
  return grad;
}

namespace {

struct Start {
  std::string name;
  Matrix<double> a;
};

Matrix<double> to_float(const WeightedTournament<Rational>& w) { return convert<double>(w.matrix()); }

// Step kernel on n points: point i sits in class floor(i * s / n).
Matrix<double> spread_kernel(const SkewMatrix<Rational>& k, std::size_t n, double eps) {
  const std::size_t s = k.n();
  Matrix<double> a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 + eps * to_double(k(i * s / n, j * s / n));
  return a;
}

std::vector<Start> make_starts(int n, int restarts, std::uint64_t seed) {
  std::vector<Start> starts;
  starts.push_back({"transitive", to_float(with_half_loops(transitive(n)))});
  if (n == 3) starts.push_back({"perturbed-cyclic", to_float(perturbed_cyclic_host(Rational(1, 100)))});
  if (n >= 3) {
    std::vector<int> parts(3, n / 3);
    for (int r = 0; r < n % 3; ++r) ++parts[r];
    starts.push_back({"cyclic-blowup", to_float(with_half_loops(blowup(cyclic_triangle(), parts, InnerRule::Transitive)))});
  }
  for (const auto& name : named_kernel_names()) {
    const auto k = named_kernel(name);
    if (static_cast<int>(k.n()) > n) continue;
    starts.push_back({"w_eps:" + name, spread_kernel(k, static_cast<std::size_t>(n), 0.5)});
  }
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    Matrix<double> a(n, 0.5);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        a(i, j) = rng.uniform01();
        a(j, i) = 1.0 - a(i, j);
      }
    starts.push_back({"random:" + std::to_string(r), std::move(a)});
  }
  return starts;
}

OptimizeResult ascend(const Digraph& d, Matrix<double> a, double sign, int max_iterations) {
  const std::size_t n = a.size();
  OptimizeResult r;
  double f = hom_raw(d, a);
  r.trace.push_back(f);
  double eta = -1.0;
  for (int it = 0; it < max_iterations; ++it) {
    Matrix<double> g = density_gradient(d, a);
    double gmax = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double gij = sign * g(i, j);
        // Drop components that push against an active bound.
        if ((a(i, j) >= 1.0 && gij > 0) || (a(i, j) <= 0.0 && gij < 0)) gij = 0.0;
        g(i, j) = gij;
        gmax = std::max(gmax, std::fabs(gij));
      }
    if (gmax <= 1e-9) break;
    if (eta < 0) eta = 0.1 / gmax;
    bool accepted = false;
    while (eta * gmax > 1e-15) {
      Matrix<double> cand = a;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          cand(i, j) = std::clamp(a(i, j) + eta * g(i, j), 0.0, 1.0);
          cand(j, i) = 1.0 - cand(i, j);
        }
      const double fc = hom_raw(d, cand);
      if (sign * fc > sign * f) {
        a = std::move(cand);
        f = fc;
        r.trace.push_back(f);
        eta *= 2.0;
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    r.iterations = it + 1;
    if (!accepted) break;
  }
  r.host = std::move(a);
  r.value = f;
  return r;
}

}  // namespace

OptimizeResult optimize_density(const Digraph& d, int n, Objective objective, int restarts, std::uint64_t seed,
                                int threads, int max_iterations) {
  if (n < 1 || n > kMaxOptimizeN) throw Error("CapExceeded", "optimizer limited to n <= 12");
  if (restarts < 0) throw Error("InvalidArgument", "restarts must be nonnegative");
  const double sign = objective == Objective::Maximize ? 1.0 : -1.0;
  auto starts = make_starts(n, restarts, seed);
  std::vector<OptimizeResult> results(starts.size());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(starts.size())));
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t s = w; s < starts.size(); s += threads) results[s] = ascend(d, starts[s].a, sign, max_iterations);
    });
  for (auto& th : pool) th.join();
  std::size_t best = 0;
  for (std::size_t s = 1; s < results.size(); ++s)
    if (sign * results[s].value > sign * results[best].value) best = s;
  OptimizeResult out = std::move(results[best]);
  out.restart = static_cast<int>(best);
  out.start = starts[best].name;
  return out;
}

RefutationReport refute(const Digraph& d, SidorenkoMode mode, int n_max, int budget, std::uint64_t seed,
                        int threads) {
  if (n_max < 1) throw Error("InvalidArgument", "n_max must be positive");
  if (n_max > kMaxRefuteN) throw Error("CapExceeded", "exhaustive stage limited to n <= 6");
  RefutationReport rep;
  rep.pattern = d;
  rep.mode = mode;
  rep.margin_min = std::numeric_limits<double>::infinity();
  threads = std::max(1, threads);

  for (int n = 1; n <= n_max; ++n) {
    const std::uint64_t count = tournament_count(n);
    // h(2A) is an integer; compare it with n^v.
    const BigInt target = pow(BigInt(n), static_cast<unsigned>(d.v()));
    const Rational threshold = quasirandom_threshold(static_cast<std::size_t>(n), d.v(), d.e());
    const Rational scale(BigInt(1), pow(BigInt(2), static_cast<unsigned>(d.e())));
    std::vector<std::uint64_t> first_bad(threads, count);
    std::vector<double> margins(threads, std::numeric_limits<double>::infinity());
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::uint64_t idx = w; idx < count; idx += threads) {
          const Tournament t = tournament_from_index(n, idx);
          Matrix<BigInt> m(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = i == j ? 1 : (t.arc(i, j) ? 2 : 0);
          const BigInt h2 = hom_raw(d, m);
          const Rational value = Rational(h2) * scale;
          margins[w] = std::min(margins[w], margin_of(value, threshold, mode));
          const bool bad = mode == SidorenkoMode::TAS ? h2 > target : h2 < target;
          if (bad) {
            first_bad[w] = idx;
            break;
          }
        }
      });
    for (auto& th : pool) th.join();
    const std::uint64_t bad = *std::min_element(first_bad.begin(), first_bad.end());
    if (bad < count) {
      const Tournament t = tournament_from_index(n, bad);
      auto cert = certify(d, with_half_loops(t), mode);
      if (!cert) throw Error("InternalAssertionFailed", "exhaustive violation did not certify");
      cert->tournament_index = bad;
      rep.violation = std::move(cert);
      rep.n_checked = n;
      rep.hosts_checked += static_cast<long long>(bad) + 1;
      rep.margin_min = margin_of(rep.violation->value, rep.violation->threshold, mode);
      return rep;
    }
    for (double m : margins) rep.margin_min = std::min(rep.margin_min, m);
    rep.hosts_checked += static_cast<long long>(count);
    rep.n_checked = n;
  }

  if (budget > 0) {
    const Objective obj = mode == SidorenkoMode::TAS ? Objective::Maximize : Objective::Minimize;
    for (int n = 2; n <= std::min(n_max, kMaxOptimizeN); ++n) {
      auto best = optimize_density(d, n, obj, budget, derive_seed(seed, static_cast<std::uint64_t>(n)), threads);
      rep.samples += budget;
      const double thr = to_double(quasirandom_threshold(static_cast<std::size_t>(n), d.v(), d.e()));
      rep.margin_min = std::min(rep.margin_min, margin_of(best.value, thr, mode));
      auto cert = certify_float(d, best.host, mode);
      if (cert) {
        rep.violation = std::move(cert);
        return rep;
      }
    }
  }
  return rep;
}

RefutationReport refute(const Orientation& o, SidorenkoMode mode, int n_max, int budget, std::uint64_t seed,
                        int threads) {
  return refute(path_digraph(o), mode, n_max, budget, seed, threads);
}

std::string refutation_json(const RefutationReport& r) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json pattern;
  pattern["v"] = r.pattern.v();
  pattern["arcs"] = nlohmann::ordered_json::array();
  for (auto [a, b] : r.pattern.arcs()) pattern["arcs"].push_back({a, b});
  j["pattern"] = pattern;
  j["mode"] = to_string(r.mode);
  j["n_checked"] = r.n_checked;
  j["hosts_checked"] = r.hosts_checked;
  j["samples"] = r.samples;
  j["margin_min"] = r.margin_min;
  if (r.violation) {
    const auto& c = *r.violation;
    nlohmann::ordered_json v;
    v["direction"] = to_string(c.direction);
    v["value"] = to_string(c.value);
    v["threshold"] = to_string(c.threshold);
    v["tournament_index"] = c.tournament_index ? nlohmann::ordered_json(*c.tournament_index) : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json host = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < c.host.n(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (std::size_t k = 0; k < c.host.n(); ++k) row.push_back(to_string(c.host(i, k)));
      host.push_back(row);
    }
    v["host"] = host;
    j["violation"] = v;
  } else {
    j["violation"] = nullptr;
  }
  return j.dump();
}

}  // namespace toursid
