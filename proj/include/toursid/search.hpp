#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toursid/construct.hpp"
#include "toursid/core.hpp"
#include "toursid/matrix.hpp"
#include "toursid/rational.hpp"
#include "toursid/tournament.hpp"

namespace toursid {

// TAS: the random host should maximize, so h > n^v/2^e refutes.
// TS: the random host should minimize, so h < n^v/2^e refutes.
enum class SidorenkoMode { TAS, TS };
std::string to_string(SidorenkoMode m);
SidorenkoMode parse_mode(const std::string& text);

struct SearchCertificate {
  Digraph pattern;
  WeightedTournament<Rational> host;
  Violation direction = Violation::None;
  Rational value;
  Rational threshold;
  std::optional<std::uint64_t> tournament_index;  // exhaustive stage only
};

struct RefutationReport {
  Digraph pattern;
  SidorenkoMode mode = SidorenkoMode::TAS;
  int n_checked = 0;
  long long hosts_checked = 0;
  int samples = 0;
  std::optional<SearchCertificate> violation;
  // Smallest (threshold - h) / threshold for TAS, (h - threshold) / threshold
  // for TS, over every host tried; negative iff a violation was seen.
  double margin_min = 0.0;
};

constexpr int kMaxRefuteN = 6;
constexpr int kMaxOptimizeN = 12;

// Stage 1 exhausts half-loop tournaments on n <= n_max vertices; stage 2
// spends `budget` optimizer restarts per size 2..n_max.
RefutationReport refute(const Digraph& d, SidorenkoMode mode, int n_max, int budget = 0, std::uint64_t seed = 0,
                        int threads = 1);
RefutationReport refute(const Orientation& o, SidorenkoMode mode, int n_max, int budget = 0,
                        std::uint64_t seed = 0, int threads = 1);

enum class Objective { Maximize, Minimize };

struct OptimizeResult {
  Matrix<double> host;  // A = J/2 + B
  double value = 0.0;   // raw h_D(A)
  int restart = -1;     // index of the winning start
  std::string start;    // name of the winning start
  int iterations = 0;
  std::vector<double> trace;  // objective along accepted steps of the winner
};

// Gradient of the raw count with respect to the free entries B(i,j), i < j,
// with B(j,i) = -B(i,j). Entry (i,j) of the result holds the partial, lower
// triangle is zero.
Matrix<double> density_gradient(const Digraph& d, const Matrix<double>& a);

OptimizeResult optimize_density(const Digraph& d, int n, Objective objective, int restarts, std::uint64_t seed,
                                int threads = 1, int max_iterations = 2000);

// Exact check; returns a certificate only for a strict violation, after
// re-verifying the value with the generic evaluator.
std::optional<SearchCertificate> certify(const Digraph& d, const WeightedTournament<Rational>& host,
                                         SidorenkoMode mode);

// Rationalizes the upper triangle with denominators <= max_den, then certifies.
std::optional<SearchCertificate> certify_float(const Digraph& d, const Matrix<double>& host, SidorenkoMode mode,
                                               std::int64_t max_den = 10000);

WeightedTournament<Rational> rationalize_host(const Matrix<double>& host, std::int64_t max_den = 10000);

std::string refutation_json(const RefutationReport& r);

}  // namespace toursid
