#include <functional>

#include "doctest.h"
#include "oracles.hpp"
#include "toursid/classify.hpp"
#include "toursid/error.hpp"

using namespace toursid;

namespace {

std::string kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return "none";
}

}  // namespace

TEST_CASE("path fixtures") {
  auto d1 = classify_path(parse_orientation(">>>>><><>"));
  CHECK(d1.verdict == Verdict::Neither);
  CHECK(d1.rule == "P5-2P3:case(iii)");
  auto p5 = classify_path(parse_orientation(">>>>>"));
  CHECK(p5.verdict == Verdict::LTAS);
  CHECK(p5.rule == "wedges:C(P3)>0");
  auto p2 = classify_path(parse_orientation("><"));
  CHECK(p2.verdict == Verdict::LTS);
  CHECK(p2.rule == "wedges:C(P3)<0");
  CHECK(p2.counts.c_p3 == -1);
  CHECK(classify_path(parse_orientation(">")).verdict == Verdict::Impartial);
  CHECK(kind_of([] { classify_path(parse_orientation(">><>><>")); }) == "PreconditionViolated");
  auto d2 = classify_path(parse_orientation(">><>><>"), true);
  CHECK(d2.verdict == Verdict::LTS);
  CHECK(d2.rule == "wedges:C(P3)<0");
  CHECK_FALSE(d2.preconditions_met);
}

TEST_CASE("neither family") {
  for (int k : {5, 6, 7, 9}) {
    std::string s(k, '>');
    for (int i = 0; i < k - 1; ++i) s += i % 2 == 0 ? '<' : '>';
    auto o = parse_orientation(s);
    const int v = static_cast<int>(o.size()) + 1;
    auto c = classify_path(o, v % 4 == 0);
    if (v % 4 != 0) CHECK(c.verdict == Verdict::Neither);
    CHECK(c.verdict != Verdict::LTS);
    CHECK(c.verdict != Verdict::LTAS);
  }
}

TEST_CASE("cycle fixtures") {
  auto c5 = classify_cycle(directed_cycle(5));
  CHECK(c5.verdict == Verdict::LTAS);
  CHECK(c5.counts.c_p3 == 5);
  CHECK(c5.flips == 0);
  CHECK(classify_cycle(directed_cycle(7)).verdict == Verdict::LTAS);
  auto sub = classify_cycle(subdivide(alternating_cycle(6), 3));
  CHECK(sub.verdict == Verdict::Neither);
  CHECK(sub.flips == 9);
  CHECK(classify_cycle(alternating_cycle(6)).verdict != Verdict::LTAS);
  CHECK(kind_of([] { classify_cycle(directed_cycle(8)); }) == "PreconditionViolated");
  CHECK(kind_of([] { classify_cycle(make_cycle(parse_orientation(">>"))); }) == "TooShort");
  CHECK(classify_cycle(directed_cycle(8), true).verdict != Verdict::Impartial);
}

TEST_CASE("P5 never cancels 2P3 when v is 2 mod 4") {
  for (int e : {5, 9, 13})
    for (std::uint64_t mask = 0; mask < (1ULL << e); ++mask) {
      auto o = oracle::orientation_from_mask(e, mask);
      auto c = classify_path(o);
      CHECK(c.verdict != Verdict::Unknown);
      if (c.counts.c_p3 == 0) CHECK(c.counts.c_p5 != -c.counts.c_2p3);
    }
}

TEST_CASE("reversal symmetry and determinism") {
  for (int e = 1; e <= 12; ++e)
    for (std::uint64_t mask = 0; mask < (1ULL << e); ++mask) {
      auto o = oracle::orientation_from_mask(e, mask);
      auto a = classify_path(o, true);
      auto b = classify_path(reversed_arrows(o), true);
      CHECK(a.verdict == b.verdict);
      auto again = classify_path(o, true);
      CHECK(a.rule == again.rule);
      CHECK(a.verdict == again.verdict);
    }
  for (int len = 3; len <= 11; ++len)
    for (std::uint64_t mask = 0; mask < (1ULL << len); ++mask) {
      auto c = make_cycle(oracle::orientation_from_mask(len, mask));
      auto a = classify_cycle(c, true);
      auto b = classify_cycle(make_cycle(reversed_arrows(c.orientation)), true);
      CHECK(a.verdict == b.verdict);
    }
}

TEST_CASE("half of odd-step paths are LTS") {
  for (int e = 2; e <= 12; e += 2) {
    long long lts = 0, ltas = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << e); ++mask) {
      auto v = classify_path(oracle::orientation_from_mask(e, mask), true).verdict;
      lts += v == Verdict::LTS;
      ltas += v == Verdict::LTAS;
    }
    CHECK(lts == (1LL << (e - 1)));
    CHECK(ltas == (1LL << (e - 1)));
  }
}

TEST_CASE("classifier agrees with Table 1 where it decides") {
  for (const auto& row : oracle::table_one()) {
    auto o = parse_orientation(row.path);
    auto c = classify_path(o, true);
    const std::string k = row.klass;
    if (k == "TS") CHECK(c.verdict != Verdict::LTAS);
    if (k == "TAS") CHECK(c.verdict != Verdict::LTS);
    if (k == "Impartial") CHECK((c.verdict == Verdict::Impartial || c.verdict == Verdict::Unknown));
    CHECK(c.verdict != Verdict::Neither);
  }
}
