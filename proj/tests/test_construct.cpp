#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "toursid/construct.hpp"
#include "toursid/error.hpp"
#include "toursid/hom.hpp"
#include "toursid/signed_count.hpp"

using namespace toursid;

TEST_CASE("named kernels") {
  auto names = named_kernel_names();
  CHECK(names.size() == 3);
  auto b1 = named_kernel("B1");
  CHECK(t_kernel_path(b1, 4) == Rational(1, 16));
  CHECK(hom_density(two_p3_pattern(), b1) == Rational(1, 16));
  auto mb = named_kernel("MBalanced");
  for (std::size_t i = 0; i < mb.n(); ++i) {
    Rational row(0);
    for (std::size_t j = 0; j < mb.n(); ++j) row += mb(i, j);
    CHECK(row == 0);
  }
  // The exact matrix for B' gives 4/243 and 4/729, not the printed 1/8, 1/16.
  auto bp = named_kernel("BPrime");
  CHECK(t_kernel_path(bp, 4) == Rational(4, 243));
  CHECK(hom_density(two_p3_pattern(), bp) == Rational(4, 729));
  CHECK_THROWS_AS(named_kernel("nope"), Error);
}

TEST_CASE("tensor powers") {
  auto b1 = named_kernel("B1");
  CHECK(tensor_power(b1, 1).matrix() == b1.matrix());
  auto t3 = tensor_power(b1, 3);
  CHECK(t3.n() == 8);
  CHECK(t_kernel_path(t3, 2) == pow(Rational(-1, 4), 3));
  auto bp = named_kernel("BPrime");
  CHECK(t_kernel_path(tensor_power(bp, 3), 4) == pow(t_kernel_path(bp, 4), 3));
  CHECK_THROWS_AS(tensor_power(b1, 2), Error);
  CHECK_THROWS_AS(kernel_tensor_power(named_kernel("MBalanced").matrix(), 8), Error);
}

TEST_CASE("tensor multiplicativity") {
  std::mt19937_64 gen(41);
  const std::vector<Digraph> patterns = {directed_path_pattern(2), directed_path_pattern(4), two_p3_pattern(),
                                         cycle_digraph(directed_cycle(4)),
                                         cycle_digraph(make_cycle(parse_orientation("><>>")))};
  for (int trial = 0; trial < 20; ++trial) {
    auto a = oracle::random_rational_skew(2 + trial % 3, gen);
    auto b = oracle::random_rational_skew(2 + (trial / 3) % 3, gen);
    auto ab = kronecker(a, b);
    for (const auto& d : patterns) CHECK(kernel_density(d, ab) == kernel_density(d, a) * kernel_density(d, b));
  }
}

TEST_CASE("ab construction") {
  auto k = ab_construction(1.0, 0.01);
  CHECK(t_kernel_path(k, 2) == doctest::Approx(-0.01).epsilon(1e-12));
  CHECK(t_kernel_path(ab_construction(0.5, 0.01), 4) == doctest::Approx(0.5 * 1e-4).epsilon(1e-10));
  for (double a : {0.25, 0.5, 1.0})
    for (double b : {1.0 / 256, 1.0 / 64}) {
      auto m = ab_construction(a, b);
      for (int kk = 1; kk <= 6; ++kk)
        CHECK(std::abs(t_kernel_path(m, 2 * kk) - std::pow(-1.0, kk) * a * std::pow(b, kk)) <= 1e-10);
    }
  try {
    ab_construction(1.0, 0.25);
    FAIL("expected ValidityConditionViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == "ValidityConditionViolated");
  }
}

TEST_CASE("certificates") {
  const Rational thr(2187, 64);
  auto hi = transitive_triangle_certificate();
  CHECK(hi.direction == Violation::ViolatesTAS);
  CHECK(hi.threshold == thr);
  CHECK(hi.value > thr);
  CHECK(hi.value == Rational(2307, 64));
  auto lo = perturbed_cyclic_certificate();
  CHECK(lo.direction == Violation::ViolatesTS);
  CHECK(lo.value < thr);
  CHECK(std::abs(to_double(lo.value) - 34.17178) <= 1e-4);
  CHECK(lo.value == hom_path(parse_orientation("><>>><"), perturbed_cyclic_host(Rational(1, 100))).raw);
  auto pure = perturbed_cyclic_certificate(Rational(0));
  CHECK(pure.value == hom_path(parse_orientation("><>>><"), with_half_loops(cyclic_triangle())).raw);
  CHECK(compare_to_threshold(thr, thr) == Violation::None);
  auto js = certificate_json(hi);
  CHECK(js.find("\"value\"") != std::string::npos);
  CHECK(js.find("2307/64") != std::string::npos);
}

TEST_CASE("w_eps") {
  auto mb = named_kernel("MBalanced");
  for (const Rational eps : {Rational(1, 2), Rational(1, 3), Rational(1, 10)}) {
    auto w = w_eps(mb, eps);
    for (const char* s : {">>>>", "<>>>", "><><", ">>>>>>", "<>>>>>"}) {
      auto c = make_cycle(parse_orientation(s));
      const int ell = static_cast<int>(c.length());
      const int t = c.flips();
      Rational expect = Rational(1) / pow(Rational(2), ell) + (t % 2 ? -1 : 1) * pow(eps, ell) * t_kernel_cycle(mb, ell);
      CHECK(hom_cycle(c, w).density == expect);
    }
  }
  auto zero = w_eps(named_kernel("B1"), Rational(0));
  CHECK(hom_path(parse_orientation("><<"), zero).density == Rational(1, 8));
  auto quarter = w_eps(named_kernel("B1"), Rational(1, 4));
  std::set<Rational> entries;
  for (const auto& x : quarter.matrix().data()) entries.insert(x);
  CHECK(entries == std::set<Rational>{Rational(1, 4), Rational(1, 2), Rational(3, 4)});
  CHECK_THROWS_AS(w_eps(mb, Rational(1)), Error);
}

TEST_CASE("sparse non-TAS graphs") {
  auto g = sparse_non_tas(std::vector<int>(9, 1));
  CHECK(g.k == 9);
  CHECK(g.e == 36);
  CHECK(g.violates);
  auto g2 = sparse_non_tas(std::vector<int>(4, 2));
  CHECK(g2.k == 8);
  CHECK(g2.e == 6);
  CHECK_FALSE(g2.violates);
  auto g1 = sparse_non_tas({1, 1});
  CHECK(g1.e == 1);
  CHECK_FALSE(g1.violates);
  std::mt19937_64 gen(5);
  for (const auto* graph : {&g, &g2}) {
    std::set<std::pair<int, int>> part_pairs;
    for (auto [a, b] : graph->edges) {
      CHECK(graph->part_of[a] != graph->part_of[b]);
      part_pairs.insert(std::minmax(graph->part_of[a], graph->part_of[b]));
    }
    CHECK(part_pairs.size() == graph->edges.size());
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<bool> forward(graph->edges.size());
      for (std::size_t i = 0; i < forward.size(); ++i) forward[i] = gen() & 1;
      auto q = quotient_tournament(*graph, forward);
      CHECK(q.n() == graph->m);
      for (std::size_t i = 0; i < forward.size(); ++i) {
        auto [a, b] = graph->edges[i];
        if (!forward[i]) std::swap(a, b);
        CHECK(q.arc(graph->part_of[a], graph->part_of[b]));
      }
    }
  }
  CHECK_THROWS_AS(sparse_non_tas({3}), Error);
}
