#pragma once

#include <optional>
#include <vector>

#include "toursid/core.hpp"
#include "toursid/rational.hpp"

namespace toursid {

struct SignedCounts {
  long long c_p3 = 0;
  long long c_p5 = 0;
  long long c_2p3 = 0;
  // Smallest k >= 3 with C(P_{2k+1}, D) != 0, if any.
  std::optional<int> min_k;
  long long c_min_k = 0;
};

constexpr int kMaxSubsetHostArcs = 40;

// C_even - C_odd over edge subsets of host whose underlying graph is
// isomorphic to q's underlying graph. q must have only even-arc components.
long long signed_count(const Digraph& q, const Digraph& host);

// For every matching subset, the signs obtained under each underlying
// isomorphism (used to check that the sign does not depend on the choice).
std::vector<std::vector<int>> subset_signs(const Digraph& q, const Digraph& host);

// The pattern 2P3: two disjoint directed 2-arc paths.
Digraph two_p3_pattern();

// C(P_{m+1}, D) for an even window length m via window signs.
long long path_window_count(const Orientation& o, int m);
long long cycle_window_count(const OrientedCycle& c, int m);

SignedCounts path_counts(const Orientation& o);
SignedCounts cycle_counts(const OrientedCycle& c);

struct WalkFractions {
  Rational p_zero;
  Rational p_pos;
  Rational p_neg;
};

// Endpoint distribution of an n-step fair +-1 walk started at 0.
WalkFractions walk_fractions(int steps);

}  // namespace toursid
