#include "toursid/construct.hpp"

#include <cmath>

#include "json.hpp"

namespace toursid {

namespace {

SkewMatrix<Rational> from_rows(std::size_t n, std::initializer_list<int> values) {
  Matrix<Rational> m(n);
  std::size_t idx = 0;
  for (int v : values) {
    m(idx / n, idx % n) = v;
    ++idx;
  }
  return SkewMatrix<Rational>(std::move(m));
}

}  // namespace

SkewMatrix<Rational> named_kernel(const std::string& name) {
  if (name == "B1") return from_rows(2, {0, 1, -1, 0});
  if (name == "BPrime") return from_rows(3, {0, 1, -1, -1, 0, 0, 1, 0, 0});
  if (name == "MBalanced") return from_rows(3, {0, 1, -1, -1, 0, 1, 1, -1, 0});
  throw Error("UnknownName", "unknown kernel '" + name + "'");
}

std::vector<std::string> named_kernel_names() { return {"B1", "BPrime", "MBalanced"}; }

SkewMatrix<double> ab_construction(double a, double b) {
  if (a < 0 || a > 1 || b < 0 || b > 1) throw Error("ValidityConditionViolated", "a and b must lie in [0,1]");
  if (2 * std::sqrt(b) * (std::sqrt(a) + std::sqrt(1 - a)) >= 0.5)
    throw Error("ValidityConditionViolated", "need 2 sqrt(b) (sqrt(a) + sqrt(1-a)) < 1/2");
  const double v1[4] = {0.5, 0.5, 0.5, 0.5};
  const double v2[4] = {0.5, 0.5, -0.5, -0.5};
  const double w[4] = {0.5, -0.5, 0.5, -0.5};
  double u[4];
  for (int i = 0; i < 4; ++i) u[i] = std::sqrt(a) * v1[i] + std::sqrt(1 - a) * v2[i];
  const double c = 4 * std::sqrt(b);
  Matrix<double> m(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = c * (u[i] * w[j] - w[i] * u[j]);
  return SkewMatrix<double>(std::move(m));
}

std::string to_string(Violation v) {
  switch (v) {
    case Violation::ViolatesTAS: return "ViolatesTAS";
    case Violation::ViolatesTS: return "ViolatesTS";
    case Violation::None: return "None";
  }
  return "None";
}

Violation compare_to_threshold(const Rational& value, const Rational& threshold) {
  if (value > threshold) return Violation::ViolatesTAS;
  if (value < threshold) return Violation::ViolatesTS;
  return Violation::None;
}

Certificate make_certificate(WeightedTournament<Rational> host, Orientation pattern) {
  Certificate c;
  c.value = hom_path(pattern, host).raw;
  const int e = static_cast<int>(pattern.size());
  c.threshold = quasirandom_threshold(host.n(), e + 1, e);
  c.direction = compare_to_threshold(c.value, c.threshold);
  c.host = std::move(host);
  c.pattern = std::move(pattern);
  return c;
}

Certificate transitive_triangle_certificate() {
  return make_certificate(with_half_loops(transitive(3)), parse_orientation("><>>><"));
}

WeightedTournament<Rational> perturbed_cyclic_host(const Rational& delta) {
  if (delta < 0 || delta > 1) throw Error("InvalidDelta", "delta must lie in [0,1]");
  Matrix<Rational> a(3);
  const Rational half(1, 2);
  a(0, 0) = half; a(0, 1) = 1 - delta; a(0, 2) = 0;
  a(1, 0) = delta; a(1, 1) = half; a(1, 2) = 1;
  a(2, 0) = 1; a(2, 1) = 0; a(2, 2) = half;
  return WeightedTournament<Rational>(std::move(a), true);
}

Certificate perturbed_cyclic_certificate(const Rational& delta) {
  return make_certificate(perturbed_cyclic_host(delta), parse_orientation("><>>><"));
}

std::string certificate_json(const Certificate& c) {
  nlohmann::ordered_json j;
  j["pattern"] = format_orientation(c.pattern);
  j["direction"] = to_string(c.direction);
  j["value"] = to_string(c.value);
  j["threshold"] = to_string(c.threshold);
  return j.dump();
}

SparseGraph sparse_non_tas(const std::vector<int>& part_sizes) {
  SparseGraph g;
  g.m = static_cast<int>(part_sizes.size());
  if (g.m < 2) throw Error("InvalidArgument", "need at least two parts");
  std::vector<int> first;
  for (int p = 0; p < g.m; ++p) {
    if (part_sizes[p] < 1) throw Error("InvalidArgument", "part sizes must be positive");
    first.push_back(g.k);
    for (int i = 0; i < part_sizes[p]; ++i) g.part_of.push_back(p);
    g.k += part_sizes[p];
  }
  for (int p = 0; p < g.m; ++p)
    for (int q = p + 1; q < g.m; ++q) g.edges.push_back({first[p], first[q]});
  g.e = static_cast<int>(g.edges.size());
  // Every orientation has hom density at least m^{-k} via the quotient map.
  g.violates = g.k * std::log2(static_cast<double>(g.m)) < static_cast<double>(g.e);
  return g;
}

Tournament quotient_tournament(const SparseGraph& g, const std::vector<bool>& forward) {
  if (forward.size() != g.edges.size()) throw Error("SizeMismatch", "one direction per edge required");
  std::vector<unsigned char> adj(static_cast<std::size_t>(g.m) * g.m, 0);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    auto [a, b] = g.edges[i];
    if (!forward[i]) std::swap(a, b);
    int pa = g.part_of[a], pb = g.part_of[b];
    if (pa == pb) throw Error("InvalidGraph", "edge inside a part");
    if (adj[static_cast<std::size_t>(pa) * g.m + pb] || adj[static_cast<std::size_t>(pb) * g.m + pa])
      throw Error("InvalidGraph", "two edges between the same parts");
    adj[static_cast<std::size_t>(pa) * g.m + pb] = 1;
  }
  return Tournament(g.m, std::move(adj));
}

}  // namespace toursid
