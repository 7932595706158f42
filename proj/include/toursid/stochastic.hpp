#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toursid/core.hpp"
#include "toursid/rational.hpp"
#include "toursid/tournament.hpp"

namespace toursid {

struct FGState {
  Rational f{1};
  Rational g{1};
  int step = 0;
};

// Vertex i of the path (1 <= i < e) is balanced when it has one in- and one
// out-arc. I_0 = 1 by convention.
bool balanced_at(const Orientation& o, int i);

FGState fg_step(const FGState& s, bool balanced);
FGState fg_process(const Orientation& o);
// States 0..e.
std::vector<FGState> fg_trajectory(const Orientation& o);

// Two-vertex host: arc a -> b of weight 1 and half loops.
WeightedTournament<Rational> k_host();

struct FGSample {
  double mean_sum = 0.0;         // mean of f_n + g_n
  double stderr_sum = 0.0;
  double median_log_rate = 0.0;  // median of ln(x_n) / n
  double fraction_above = 0.0;   // fraction with x_n >= threshold
  int steps = 0;
  int trials = 0;
};

// x_n = (f_n + g_n) / 2 over i.i.d. fair-coin orientations, one derived seed
// per trial.
FGSample sample_fg(int steps, int trials, std::uint64_t seed, double threshold = 1.0, int threads = 1);

// Exact average of f_n + g_n over all 2^steps orientations.
Rational exhaustive_fg_mean(int steps);

constexpr int kMaxExhaustiveSteps = 20;

struct RatioSupport {
  double low = 1.0;
  double high = 1.0;
};

RatioSupport ratio_support(const Rational& beta);

struct RatioSummary {
  RatioSupport support;
  double min_r = 1.0;
  double max_r = 1.0;
  bool all_inside = true;
  long long first_outside = -1;
  double mean_log_r = 0.0;
  long long steps = 0;
};

// r_n = 1 +- beta / r_{n-1}, r_0 = 1.
RatioSummary ratio_chain(const Rational& beta, long long steps, std::uint64_t seed);

enum class LyapunovMode { FG, Recurrence };

struct LyapunovEstimate {
  LyapunovMode mode = LyapunovMode::Recurrence;
  Rational beta;
  long long steps = 0;
  std::uint64_t seed = 0;
  double lambda_hat = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  std::vector<double> batch_lambdas;
};

constexpr long long kMinLyapunovSteps = 10000;

// Recurrence mode: x_n = x_{n-1} +- beta x_{n-2}, x_0 = x_1 = 1.
// FG mode: the (f, g) process on a random orientation (beta is ignored).
LyapunovEstimate lyapunov_estimate(LyapunovMode mode, const Rational& beta, long long steps, std::uint64_t seed,
                                   int batches = 100);

std::string lyapunov_csv(const LyapunovEstimate& est);
std::string lyapunov_json(const LyapunovEstimate& est);

// -beta^2 / (2 (3/sqrt2)^2), the closed-form bound on the exponent.
Rational lyapunov_bound(const Rational& beta);

// beta* such that x_n - x_{n-1} = +-beta* x_{n-2} along every trajectory of
// every orientation with up to max_edges edges; throws if no single value fits.
Rational resolve_beta_star(int max_edges);

struct LocalwalkStats {
  int edges = 0;
  std::uint64_t total = 0;
  std::uint64_t lts = 0;
  std::uint64_t ltas = 0;
  std::uint64_t neither = 0;
  std::uint64_t unknown = 0;
  std::uint64_t impartial = 0;
  std::uint64_t zero_p3 = 0;
  Rational p_zero, p_lts, p_ltas;
};

constexpr int kMaxLocalwalkEdges = 16;

// Classifies every orientation of the path with the given number of edges.
LocalwalkStats localwalk(int edges);

}  // namespace toursid
