#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "toursid/construct.hpp"
#include "toursid/error.hpp"
#include "toursid/spectral.hpp"

using namespace toursid;

namespace {

SkewMatrix<double> to_double_skew(const SkewMatrix<Rational>& b) { return convert<double>(b); }

// X_{2t} from the eigen-decomposition of the Hermitian matrix iB.
double spectral_x(const Matrix<double>& b, int t) {
  const int n = static_cast<int>(b.size());
  Eigen::MatrixXcd h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = std::complex<double>(0, b(i, j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(n);
  double total = 0;
  for (int k = 0; k < n; ++k) {
    const double c2 = std::norm(es.eigenvectors().col(k).dot(ones));
    total += c2 * std::pow(es.eigenvalues()(k), 2 * t);
  }
  return total;
}

}  // namespace

TEST_CASE("eigenvalue fixtures") {
  auto mb = eigenvalues(to_double_skew(named_kernel("MBalanced")));
  REQUIRE(mb.lambdas.size() == 2);
  CHECK(std::abs(mb.lambdas[0] - std::sqrt(3.0)) <= 1e-12);
  CHECK(std::abs(mb.lambdas[1]) <= 1e-12);
  Matrix<double> m(2);
  m(0, 1) = 0.5;
  m(1, 0) = -0.5;
  auto s = eigenvalues(SkewMatrix<double>(m));
  CHECK(s.lmax == doctest::Approx(0.5).epsilon(1e-14));
  auto z = eigenvalues(SkewMatrix<double>(Matrix<double>(4)));
  CHECK(z.lambdas == std::vector<double>{0.0, 0.0});
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 20;
    auto b = oracle::random_double_skew(n, gen);
    auto sp = eigenvalues(SkewMatrix<double>(b));
    CHECK(sp.lambdas.size() == static_cast<std::size_t>((n + 1) / 2));
    CHECK(sp.lmax <= n / 2.0 + 1e-12);
    // Frobenius norm squared equals 2 * sum of lambda^2.
    double fro = 0, lam = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) fro += b(i, j) * b(i, j);
    for (double l : sp.lambdas) lam += 2 * l * l;
    CHECK(lam == doctest::Approx(fro).epsilon(1e-9));
  }
}

TEST_CASE("x moments") {
  CHECK(x_moment(named_kernel("B1"), 1) == 2);
  Matrix<Rational> m(2);
  m(0, 1) = Rational(1, 2);
  m(1, 0) = Rational(-1, 2);
  CHECK(x_moment(SkewMatrix<Rational>(m), 1) == Rational(1, 2));
  CHECK(x_moment(SkewMatrix<Rational>(m), 0) == 2);
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 19;
    auto b = oracle::random_double_skew(n, gen);
    SkewMatrix<double> sb(b);
    for (int t = 1; t <= 4; ++t) {
      const double x = x_moment(sb, t);
      CHECK(x == doctest::Approx(spectral_x(b, t)).epsilon(1e-9).scale(1));
    }
  }
}

TEST_CASE("moment lemma property") {
  std::mt19937_64 gen(2024);
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 20;
    SkewMatrix<double> b(oracle::random_double_skew(n, gen));
    for (int s = 0; s <= 4; ++s)
      for (int t = 0; t <= s; ++t)
        if (!check_x_lemma(b, s, t).pass()) ++failures;
  }
  CHECK(failures == 0);
  auto zero = check_x_lemma(SkewMatrix<Rational>(Matrix<Rational>(3)), 2, 1);
  CHECK(zero.pass());
  CHECK(zero.margin_iv == 0.0);
  Matrix<Rational> half = named_kernel("MBalanced").matrix().scaled(Rational(1, 2));
  SkewMatrix<Rational> hb(half);
  auto r = check_x_lemma(hb, 2, 1);
  CHECK(r.pass());
  const Rational x2 = x_moment(hb, 1), x4 = x_moment(hb, 2), x6 = x_moment(hb, 3);
  CHECK(Rational(r.margin_iv) == Rational(x2 * x6 - x4 * x4));
  CHECK_THROWS_AS(check_x_lemma(named_kernel("B1"), 1, 0), Error);
}

TEST_CASE("expand_path fixtures and degree identity") {
  auto p1 = expand_path(parse_orientation(">"));
  CHECK(p1.terms.size() == 1);
  CHECK(x_coefficient(p1, 2, {}) == Rational(1, 2));
  auto p2 = expand_path(parse_orientation("><"));
  CHECK(format_spoly(p2) == "(1/4)*n^3*S2^0 + (-1/1)*n^0*S2^1");
  auto p4 = expand_path(parse_orientation("><<<"));
  CHECK(x_coefficient(p4, 2, {2}) == Rational(-1, 4));
  CHECK(x_coefficient(p4, 0, {4}) == -1);
  for (int e = 1; e <= 10; ++e)
    for (std::uint64_t mask = 0; mask < (1ULL << e); mask += 3) {
      auto p = expand_path(oracle::orientation_from_mask(e, mask));
      for (const auto& [m, c] : p.terms) {
        int deg = m.n_power;
        for (int idx : m.s_indices) {
          CHECK(idx % 2 == 0);
          deg += idx + 1;
        }
        CHECK(deg == e + 1);
        CHECK(c != 0);
      }
      CHECK(x_coefficient(p, e + 1, {}) == Rational(1, 1) / pow(Rational(2), e));
    }
  CHECK_THROWS_AS(expand_path(Orientation(25, Dir::Forward)), Error);
}

TEST_CASE("printed expansions") {
  int mismatched_rows = 0;
  for (const auto& row : oracle::printed_expansions()) {
    auto p = expand_path(parse_orientation(row.path));
    bool ok = p.terms.size() == row.terms.size();
    for (const auto& t : row.terms)
      ok = ok && x_coefficient(p, t.n_power, t.xs) == oracle::q(t.num, t.den);
    if (!ok) {
      ++mismatched_rows;
      MESSAGE("printed expansion differs for " << std::string(row.path) << ": " << format_xpoly(p));
    }
  }
  // The printed X2^2 coefficient for "><<<<" is -1; a single middle J gives
  // -(1/2) X2^2.
  auto p = expand_path(parse_orientation("><<<<"));
  CHECK(x_coefficient(p, 0, {2, 2}) == Rational(-1, 2));
  CHECK(mismatched_rows == 1);
}

TEST_CASE("eval_spoly agrees with hom_path") {
  for (int n = 1; n <= 4; ++n)
    for_each_tournament(n, [&](std::uint64_t, const Tournament& t) {
      auto w = with_half_loops(t);
      auto b = skew_decompose(w);
      for (int e = 1; e <= 6; ++e)
        for (std::uint64_t mask = 0; mask < (1ULL << e); ++mask) {
          auto o = oracle::orientation_from_mask(e, mask);
          CHECK(eval_spoly(expand_path(o), b) == hom_path(o, w).raw);
        }
    });
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    SkewMatrix<Rational> b(oracle::random_rational_skew(n, gen));
    auto w = compose(b);
    auto o = oracle::orientation_from_mask(1 + trial % 8, gen() & 0xff);
    CHECK(eval_spoly(expand_path(o), b) == hom_path(o, w).raw);
  }
  auto zero = SkewMatrix<Rational>(Matrix<Rational>(5));
  CHECK(eval_spoly(expand_path(parse_orientation(">>><")), zero) == quasirandom_threshold(5, 5, 4));
}

TEST_CASE("sign certifier") {
  CHECK(certify_sign(expand_path(parse_orientation("><"))).result == SignCertificate::CertifiedTS);
  CHECK(certify_sign(expand_path(parse_orientation(">><<"))).result == SignCertificate::CertifiedTAS);
  for (int e = 3; e <= 7; ++e)
    for (int split = 1; split < e; ++split) {
      Orientation o(e, Dir::Forward);
      for (int i = split; i < e; ++i) o[i] = Dir::Backward;
      auto proof = certify_sign(expand_path(o));
      CHECK(proof.result == SignCertificate::CertifiedTAS);
      CHECK_FALSE(proof.trace.empty());
    }
  CHECK(certify_sign(expand_path(parse_orientation("><<<<<<<"))).result == SignCertificate::Unknown);
  for (const auto& row : oracle::table_one()) {
    auto r = certify_sign(expand_path(parse_orientation(row.path))).result;
    const std::string k = row.klass;
    if (k == "TS") CHECK(r != SignCertificate::CertifiedTAS);
    if (k == "TAS") CHECK(r != SignCertificate::CertifiedTS);
  }
}
