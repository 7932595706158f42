#include "toursid/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <thread>

#include "json.hpp"
#include "toursid/classify.hpp"
#include "toursid/error.hpp"
#include "toursid/rng.hpp"

namespace toursid {

bool balanced_at(const Orientation& o, int i) {
  if (i == 0) return true;
  if (i < 0 || i >= static_cast<int>(o.size())) throw Error("InvalidArgument", "vertex index out of range");
  return o[i - 1] == o[i];
}

FGState fg_step(const FGState& s, bool balanced) {
  FGState out;
  const Rational half(1, 2);
  if (balanced) {
    out.f = s.f * half + s.g;
    out.g = s.g * half;
  } else {
    out.f = s.g * half + s.f;
    out.g = s.f * half;
  }
  out.step = s.step + 1;
  return out;
}

std::vector<FGState> fg_trajectory(const Orientation& o) {
  std::vector<FGState> traj{FGState{}};
  for (int i = 1; i <= static_cast<int>(o.size()); ++i) traj.push_back(fg_step(traj.back(), balanced_at(o, i - 1)));
  return traj;
}

FGState fg_process(const Orientation& o) { return fg_trajectory(o).back(); }

WeightedTournament<Rational> k_host() {
  Matrix<Rational> a(2);
  a(0, 0) = Rational(1, 2);
  a(0, 1) = 1;
  a(1, 0) = 0;
  a(1, 1) = Rational(1, 2);
  return WeightedTournament<Rational>(std::move(a), true);
}

namespace {

// Float (f, g) chain with periodic renormalization; log_scale holds the
// removed factor so that f + g = exp(log_scale) * (f_ + g_).
struct FloatFG {
  double f = 1.0, g = 1.0, log_scale = 0.0;
  void step(bool balanced) {
    if (balanced) {
      f = 0.5 * f + g;
      g = 0.5 * g;
    } else {
      const double nf = 0.5 * g + f;
      g = 0.5 * f;
      f = nf;
    }
  }
  void renormalize() {
    const double s = f + g;
    f /= s;
    g /= s;
    log_scale += std::log(s);
  }
  double log_sum() const { return log_scale + std::log(f + g); }
};

struct TrialResult {
  double sum = 0.0;
  double log_rate = 0.0;
  bool above = false;
};

TrialResult run_trial(int steps, std::uint64_t seed, double log_threshold) {
  Rng rng(seed);
  FloatFG s;
  bool prev = rng.coin();
  for (int i = 1; i <= steps; ++i) {
    // Edge i-1 was drawn; vertex i-1 balance needs edge i-1 and edge i-2.
    bool balanced = true;
    if (i >= 2) {
      const bool cur = rng.coin();
      balanced = cur == prev;
      prev = cur;
    }
    s.step(balanced);
    if (i % 64 == 0) s.renormalize();
  }
  TrialResult r;
  const double log_sum = s.log_sum();
  const double log_x = log_sum - std::log(2.0);
  r.sum = std::exp(log_sum);
  r.log_rate = steps > 0 ? log_x / steps : 0.0;
  r.above = log_x >= log_threshold;
  return r;
}

}  // namespace

FGSample sample_fg(int steps, int trials, std::uint64_t seed, double threshold, int threads) {
  if (trials < 1) throw Error("InvalidArgument", "trials must be at least 1");
  if (steps < 0) throw Error("InvalidArgument", "steps must be nonnegative");
  if (threshold <= 0) throw Error("InvalidArgument", "threshold must be positive");
  std::vector<TrialResult> results(trials);
  const double log_threshold = std::log(threshold);
  threads = std::max(1, std::min(threads, trials));
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (int t = w; t < trials; t += threads) results[t] = run_trial(steps, derive_seed(seed, t), log_threshold);
    });
  for (auto& th : pool) th.join();

  FGSample out;
  out.steps = steps;
  out.trials = trials;
  double sum = 0.0, sum_sq = 0.0;
  std::vector<double> rates;
  int above = 0;
  for (const auto& r : results) {
    sum += r.sum;
    sum_sq += r.sum * r.sum;
    rates.push_back(r.log_rate);
    above += r.above ? 1 : 0;
  }
  out.mean_sum = sum / trials;
  const double var = trials > 1 ? (sum_sq - trials * out.mean_sum * out.mean_sum) / (trials - 1) : 0.0;
  out.stderr_sum = std::sqrt(std::max(0.0, var) / trials);
  std::sort(rates.begin(), rates.end());
  out.median_log_rate = trials % 2 ? rates[trials / 2] : 0.5 * (rates[trials / 2 - 1] + rates[trials / 2]);
  out.fraction_above = static_cast<double>(above) / trials;
  return out;
}

Rational exhaustive_fg_mean(int steps) {
  if (steps < 0) throw Error("InvalidArgument", "steps must be nonnegative");
  if (steps > kMaxExhaustiveSteps) throw Error("CapExceeded", "exhaustive mode limited to 20 steps");
  if (steps == 0) return Rational(2);
  // Each balance pattern of vertices 1..steps-1 comes from exactly two
  // orientations, so averaging over patterns is the orientation average.
  Rational total(0);
  std::function<void(const FGState&, int)> rec = [&](const FGState& s, int i) {
    if (i > steps) {
      total += s.f + s.g;
      return;
    }
    if (i == 1) {
      rec(fg_step(s, true), 2);
      return;
    }
    rec(fg_step(s, true), i + 1);
    rec(fg_step(s, false), i + 1);
  };
  rec(FGState{}, 1);
  return total / Rational(pow(BigInt(2), static_cast<unsigned>(steps - 1)));
}

namespace {

void check_beta(const Rational& beta) {
  if (beta < 0) throw Error("InvalidArgument", "beta must be nonnegative");
  if (1 - 4 * beta < 0) throw Error("DiscriminantNegative", "need 1 - 4 beta >= 0");
}

}  // namespace

RatioSupport ratio_support(const Rational& beta) {
  check_beta(beta);
  RatioSupport s;
  const double b = to_double(beta);
  s.low = (1.0 + std::sqrt(1.0 - 4.0 * b)) / 2.0;
  s.high = 1.0 + b / s.low;
  return s;
}

RatioSummary ratio_chain(const Rational& beta, long long steps, std::uint64_t seed) {
  if (steps < 0) throw Error("InvalidArgument", "steps must be nonnegative");
  RatioSummary out;
  out.support = ratio_support(beta);
  out.steps = steps;
  const double b = to_double(beta);
  const double tol = 1e-12;
  Rng rng(seed);
  double r = 1.0, log_total = 0.0;
  for (long long n = 1; n <= steps; ++n) {
    r = rng.coin() ? 1.0 + b / r : 1.0 - b / r;
    out.min_r = std::min(out.min_r, r);
    out.max_r = std::max(out.max_r, r);
    if (out.all_inside && (r < out.support.low - tol || r > out.support.high + tol)) {
      out.all_inside = false;
      out.first_outside = n;
    }
    log_total += std::log(r);
  }
  out.mean_log_r = steps > 0 ? log_total / static_cast<double>(steps) : 0.0;
  return out;
}

LyapunovEstimate lyapunov_estimate(LyapunovMode mode, const Rational& beta, long long steps, std::uint64_t seed,
                                   int batches) {
  if (steps < kMinLyapunovSteps) throw Error("InvalidArgument", "need at least 10000 steps");
  if (batches < 2 || batches > steps) throw Error("InvalidArgument", "bad batch count");
  LyapunovEstimate est;
  est.mode = mode;
  est.beta = beta;
  est.steps = steps;
  est.seed = seed;
  Rng rng(seed);
  const long long per_batch = steps / batches;

  if (mode == LyapunovMode::Recurrence) {
    check_beta(beta);
    const double b = to_double(beta);
    // prev = x_{n-1}, prev2 = x_{n-2}; both scaled by exp(-log_scale).
    double prev = 1.0, prev2 = 1.0, log_scale = 0.0;
    double batch_start = 0.0;
    for (int k = 0; k < batches; ++k) {
      const long long len = k + 1 == batches ? steps - per_batch * (batches - 1) : per_batch;
      for (long long i = 0; i < len; ++i) {
        const double x = rng.coin() ? prev + b * prev2 : prev - b * prev2;
        prev2 = prev;
        prev = x;
        if ((i & 63) == 63) {
          const double s = std::fabs(prev);
          prev /= s;
          prev2 /= s;
          log_scale += std::log(s);
        }
      }
      const double now = log_scale + std::log(std::fabs(prev));
      est.batch_lambdas.push_back((now - batch_start) / static_cast<double>(len));
      batch_start = now;
    }
    est.lambda_hat = batch_start / static_cast<double>(steps);
  } else {
    FloatFG s;
    bool prev_edge = rng.coin();
    long long i = 0;
    double batch_start = std::log(2.0);
    for (int k = 0; k < batches; ++k) {
      const long long len = k + 1 == batches ? steps - per_batch * (batches - 1) : per_batch;
      for (long long j = 0; j < len; ++j) {
        ++i;
        bool balanced = true;
        if (i >= 2) {
          const bool cur = rng.coin();
          balanced = cur == prev_edge;
          prev_edge = cur;
        }
        s.step(balanced);
        if ((i & 63) == 0) s.renormalize();
      }
      const double now = s.log_sum();
      est.batch_lambdas.push_back((now - batch_start) / static_cast<double>(len));
      batch_start = now;
    }
    est.lambda_hat = (batch_start - std::log(2.0)) / static_cast<double>(steps);
  }

  double mean = 0.0;
  for (double l : est.batch_lambdas) mean += l;
  mean /= batches;
  double var = 0.0;
  for (double l : est.batch_lambdas) var += (l - mean) * (l - mean);
  var /= batches - 1;
  const double half_width = 1.96 * std::sqrt(var / batches);
  est.ci95_low = est.lambda_hat - half_width;
  est.ci95_high = est.lambda_hat + half_width;
  return est;
}

namespace {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string lyapunov_csv(const LyapunovEstimate& est) {
  std::string out = "batch,steps,lambda_hat\n";
  const long long per_batch = est.steps / static_cast<long long>(est.batch_lambdas.size());
  for (std::size_t k = 0; k < est.batch_lambdas.size(); ++k) {
    const long long len =
        k + 1 == est.batch_lambdas.size() ? est.steps - per_batch * static_cast<long long>(k) : per_batch;
    out += std::to_string(k) + "," + std::to_string(len) + "," + fmt_double(est.batch_lambdas[k]) + "\n";
  }
  return out;
}

std::string lyapunov_json(const LyapunovEstimate& est) {
  nlohmann::ordered_json j;
  j["mode"] = est.mode == LyapunovMode::FG ? "fg" : "recurrence";
  j["beta"] = est.mode == LyapunovMode::FG ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(to_string(est.beta));
  j["steps"] = est.steps;
  j["lambda_hat"] = est.lambda_hat;
  j["ci95_low"] = est.ci95_low;
  j["ci95_high"] = est.ci95_high;
  j["seed"] = est.seed;
  return j.dump();
}

Rational lyapunov_bound(const Rational& beta) {
  // (3/sqrt2)^2 = 9/2.
  return -(beta * beta) / (2 * Rational(9, 2));
}

Rational resolve_beta_star(int max_edges) {
  if (max_edges < 2 || max_edges > kMaxExhaustiveSteps) throw Error("InvalidArgument", "max_edges must be in [2, 20]");
  std::set<Rational> seen;
  for (int e = 2; e <= max_edges; ++e)
    for (std::uint64_t mask = 0; mask < (1ULL << e); ++mask) {
      Orientation o(e);
      for (int i = 0; i < e; ++i) o[i] = (mask >> i) & 1 ? Dir::Backward : Dir::Forward;
      auto traj = fg_trajectory(o);
      for (int n = 2; n <= e; ++n) {
        const Rational x = (traj[n].f + traj[n].g) / 2;
        const Rational x1 = (traj[n - 1].f + traj[n - 1].g) / 2;
        const Rational x2 = (traj[n - 2].f + traj[n - 2].g) / 2;
        const Rational ratio = (x - x1) / x2;
        // Positive step exactly when vertex n-1 is imbalanced.
        if ((ratio > 0) == balanced_at(o, n - 1)) throw Error("InternalAssertionFailed", "sign rule broken");
        seen.insert(abs(ratio));
      }
    }
  if (seen.size() != 1) throw Error("InternalAssertionFailed", "no single beta fits the fg process");
  return *seen.begin();
}

LocalwalkStats localwalk(int edges) {
  if (edges < 1) throw Error("InvalidArgument", "need at least one edge");
  if (edges > kMaxLocalwalkEdges) throw Error("CapExceeded", "localwalk limited to 16 edges");
  LocalwalkStats s;
  s.edges = edges;
  s.total = 1ULL << edges;
  for (std::uint64_t mask = 0; mask < s.total; ++mask) {
    Orientation o(edges);
    for (int i = 0; i < edges; ++i) o[i] = (mask >> (edges - 1 - i)) & 1 ? Dir::Backward : Dir::Forward;
    const auto c = classify_path(o, true);
    if (c.counts.c_p3 == 0) ++s.zero_p3;
    switch (c.verdict) {
      case Verdict::LTS: ++s.lts; break;
      case Verdict::LTAS: ++s.ltas; break;
      case Verdict::Neither: ++s.neither; break;
      case Verdict::Impartial: ++s.impartial; break;
      case Verdict::Unknown: ++s.unknown; break;
    }
  }
  const Rational total(static_cast<long>(s.total));
  s.p_zero = Rational(static_cast<long>(s.zero_p3)) / total;
  s.p_lts = Rational(static_cast<long>(s.lts)) / total;
  s.p_ltas = Rational(static_cast<long>(s.ltas)) / total;
  return s;
}

}  // namespace toursid
