#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "toursid/error.hpp"
#include "toursid/spectral.hpp"
#include "toursid/tournament.hpp"

using namespace toursid;

TEST_CASE("enumeration") {
  CHECK(tournament_count(1) == 1);
  CHECK(tournament_count(3) == 8);
  CHECK(tournament_count(5) == 1024);
  for (int n = 1; n <= 5; ++n) {
    std::set<std::vector<unsigned char>> seen;
    std::uint64_t calls = 0;
    for_each_tournament(n, [&](std::uint64_t idx, const Tournament& t) {
      CHECK(idx == calls);
      ++calls;
      seen.insert(t.raw());
    });
    CHECK(calls == tournament_count(n));
    CHECK(seen.size() == calls);
  }
  int cyclic = 0;
  for_each_tournament(3, [&](std::uint64_t, const Tournament& t) {
    bool c = (t.arc(0, 1) && t.arc(1, 2) && t.arc(2, 0)) || (t.arc(1, 0) && t.arc(2, 1) && t.arc(0, 2));
    cyclic += c;
    CHECK(count_cyclic_triangles(t) == (c ? 1 : 0));
  });
  CHECK(cyclic == 2);
  // Pair (0,1) is the most significant bit.
  CHECK(tournament_from_index(3, 0b100).arc(0, 1));
  CHECK(tournament_from_index(3, 0b001).arc(1, 2));
  CHECK_THROWS_AS(tournament_count(8), Error);
}

TEST_CASE("random tournaments") {
  CHECK(random_tournament(1, 5).n() == 1);
  CHECK(random_tournament(50, 7) == random_tournament(50, 7));
  CHECK_FALSE(random_tournament(50, 7) == random_tournament(50, 8));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto t = random_tournament(100, seed);
    for (int i = 0; i < 100; ++i) CHECK(std::abs(t.out_degree(i) - 49.5) <= 4 * std::sqrt(100.0));
  }
}

TEST_CASE("transitive and half loops") {
  auto t3 = transitive(3);
  CHECK(t3.arc(0, 1));
  CHECK(t3.arc(0, 2));
  CHECK(t3.arc(1, 2));
  CHECK(count_cyclic_triangles(transitive(4)) == 0);
  auto w = with_half_loops(t3);
  const Rational h(1, 2);
  Matrix<Rational> expect(3);
  expect(0, 0) = h; expect(0, 1) = 1; expect(0, 2) = 1;
  expect(1, 1) = h; expect(1, 2) = 1;
  expect(2, 2) = h;
  CHECK(w.matrix() == expect);
  CHECK(with_half_loops(transitive(1))(0, 0) == h);
  for_each_tournament(4, [&](std::uint64_t, const Tournament& t) {
    auto a = with_half_loops(t);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(a(i, j) + a(j, i) == 1);
  });
}

TEST_CASE("skew decomposition") {
  auto b = skew_decompose(with_half_loops(transitive(2)));
  CHECK(b(0, 1) == Rational(1, 2));
  CHECK(b(1, 0) == Rational(-1, 2));
  CHECK(b(0, 0) == 0);
  auto w = with_half_loops(random_tournament(6, 3));
  auto back = compose(skew_decompose(w));
  CHECK(back.matrix() == w.matrix());
  Matrix<Rational> no_loops(2);
  no_loops(0, 1) = 1;
  try {
    skew_decompose(WeightedTournament<Rational>(no_loops, false));
    FAIL("expected MissingHalfLoops");
  } catch (const Error& e) {
    CHECK(e.kind() == "MissingHalfLoops");
  }
}

TEST_CASE("weighted and skew validation") {
  Matrix<Rational> bad(2);
  bad(0, 1) = Rational(1, 2);
  bad(1, 0) = Rational(1, 3);
  CHECK_THROWS_AS(WeightedTournament<Rational>(bad, false), Error);
  Matrix<Rational> ns(2);
  ns(0, 1) = 1;
  ns(1, 0) = 1;
  try {
    SkewMatrix<Rational>{ns};
    FAIL("expected NotSkew");
  } catch (const Error& e) {
    CHECK(e.kind() == "NotSkew");
  }
  Matrix<Rational> big(2);
  big(0, 1) = 2;
  big(1, 0) = -2;
  try {
    SkewMatrix<Rational>{big};
    FAIL("expected EntryRangeViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == "EntryRangeViolated");
  }
}

TEST_CASE("blowup") {
  CHECK(blowup(transitive(3), {1, 1, 1}, InnerRule::SeededRandom, 4) == transitive(3));
  auto b = blowup(cyclic_triangle(), {2, 2, 2}, InnerRule::Transitive);
  CHECK(b.n() == 6);
  int crossing = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i / 2 != j / 2 && b.arc(i, j)) ++crossing;
  CHECK(crossing == 12);
  CHECK_THROWS_AS(blowup(transitive(3), {1, 1}, InnerRule::Transitive), Error);
}

TEST_CASE("cut norm") {
  CHECK(cutnorm_bruteforce(SkewMatrix<Rational>(Matrix<Rational>(4))) == 0);
  Matrix<Rational> m(2);
  m(0, 1) = Rational(1, 2);
  m(1, 0) = Rational(-1, 2);
  CHECK(cutnorm_bruteforce(SkewMatrix<Rational>(m)) == Rational(1, 8));
  CHECK_THROWS_AS(cutnorm_bruteforce(SkewMatrix<double>(Matrix<double>(17))), Error);
}

TEST_CASE("cut norm sandwich against the spectral radius") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 11;
    SkewMatrix<double> b(oracle::random_double_skew(n, gen));
    const double cut = cutnorm_bruteforce(b);
    const double lmax = eigenvalues(b).lmax;
    CHECK(n * cut <= lmax + 1e-9);
    CHECK(lmax <= n * std::sqrt(2 * cut) + 1e-9);
  }
}

TEST_CASE("tournament file formats") {
  auto t = random_tournament(5, 9);
  CHECK(parse_tournament(format_tournament(t)) == t);
  auto w = with_half_loops(t);
  CHECK(parse_weighted(format_weighted(w)).matrix() == w.matrix());
  auto d = parse_weighted("wtournament n=2\n0.5 0.25\n3/4 1/2\n");
  CHECK(d(0, 1) == Rational(1, 4));
  CHECK(d(1, 0) == Rational(3, 4));
  CHECK_THROWS_AS(parse_tournament("tournament n=2\n01\n01\n"), Error);
}
