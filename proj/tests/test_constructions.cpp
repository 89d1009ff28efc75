#include <doctest.h>

#include <algorithm>
#include <set>
#include <utility>

#include "latinc/constructions.hpp"

using namespace latinc;

TEST_CASE("make_line canonicalization") {
  LatticeLine l = make_line(2, -4, 6);
  CHECK(l == LatticeLine{-1, 2, -3});
  CHECK(make_line(0, -3, 9) == LatticeLine{0, 1, -3});
  CHECK(make_line(-5, 0, 10) == LatticeLine{1, 0, -2});
  CHECK_THROWS_AS(make_line(0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_line(2, 4, 5), std::invalid_argument);
}

TEST_CASE("floor_root") {
  CHECK(floor_root(0, 2) == 0);
  CHECK(floor_root(63, 6) == 1);
  CHECK(floor_root(64, 6) == 2);
  CHECK(floor_root(4096, 6) == 4);
  CHECK(floor_root(4095, 6) == 3);
  CHECK(floor_root((i128)1000000000000000000LL, 3) == 1000000);
  CHECK(floor_root(26, 3) == 2);
  CHECK(floor_root((i128)26 * 26, 3) == 8);  // floor(26^{2/3}) = 8
}

TEST_CASE("erdos_lines on n = 4096") {
  ExplicitLineSet set = erdos_lines(4096);
  CHECK(!set.empty_range);

  // slopes are exactly the reduced fractions a/b with b <= 4
  std::set<std::pair<std::int64_t, std::int64_t>> slopes;
  for (const LatticeLine& l : set.lines) slopes.insert({-l.A, l.B});
  std::set<std::pair<std::int64_t, std::int64_t>> expected{
      {1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}};
  CHECK(slopes == expected);

  // d spans 32..48 (17 values); every (a,b,c,d) tuple is a distinct line,
  // so the set size is (2 + 6 + 8) * 17
  CHECK(set.lines.size() == 272);

  // distinct C values for slope 1/2 come from c in {1,2} x 17 d values
  std::size_t half_slope = 0;
  for (const LatticeLine& l : set.lines)
    if (l.A == -1 && l.B == 2) ++half_slope;
  CHECK(half_slope == 34);
}

TEST_CASE("erdos_lines empty slope range") {
  ExplicitLineSet set = erdos_lines(63);
  CHECK(set.empty_range);
  CHECK(set.lines.empty());
}

TEST_CASE("erdos_lines deterministic") {
  ExplicitLineSet a = erdos_lines(4096), b = erdos_lines(4096);
  CHECK(a.lines == b.lines);
}

TEST_CASE("elekes_lines") {
  ExplicitLineSet set = elekes_lines(64);
  CHECK(set.lines.size() == 64);
  CHECK(std::find(set.lines.begin(), set.lines.end(), LatticeLine{-2, 1, 3}) !=
        set.lines.end());

  CHECK(elekes_lines(8).lines.size() == 8);

  for (std::int64_t n : {8LL, 27LL, 64LL, 100LL, 1000LL}) {
    ExplicitLineSet s = elekes_lines(n);
    std::size_t expect = (std::size_t)floor_root(n, 3) *
                         (std::size_t)floor_root((i128)n * n, 3);
    CHECK(s.lines.size() == expect);
  }
}

TEST_CASE("family_lines_simplified at the endpoints") {
  // alpha = 1/2: a = 0 only, slopes are pure fractions b/c with c <= n^{1/6};
  // the d range is half-open, one value shorter than the Erdos range.
  ExplicitLineSet set = family_lines_simplified(4096, Rat64(1, 2));
  CHECK(!set.empty_range);
  std::set<std::pair<std::int64_t, std::int64_t>> slopes;
  for (const LatticeLine& l : set.lines) {
    CHECK(l.A < 0);  // all slopes positive and fractional (a = 0)
    slopes.insert({-l.A, l.B});
  }
  std::set<std::pair<std::int64_t, std::int64_t>> expected{
      {1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}};
  CHECK(slopes == expected);
  CHECK(set.lines.size() == 256);  // (2 + 3+3 + 4+4) slope-shift pairs x 16 d

  // alpha = 1/3: the inner slope range 1 <= b < c <= 1 is empty
  ExplicitLineSet degenerate = family_lines_simplified(4096, Rat64(1, 3));
  CHECK(degenerate.empty_range);
  CHECK(degenerate.lines.empty());

  CHECK_THROWS_AS(family_lines_simplified(4096, Rat64(1, 4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(family_lines_simplified(4096, Rat64(2, 3)),
                  std::invalid_argument);
}

TEST_CASE("family_params") {
  FamilyParams p = family_params(100, 100, 10);
  CHECK(p.n() == 10000);
  CHECK(p.alpha() == doctest::Approx(0.5));
  CHECK(p.epsilon() == Rat64(1, 10));

  FamilyParams tall = family_params(100, 10000, 10);
  CHECK(tall.alpha() == doctest::Approx(1.0 / 3.0));
  CHECK(tall.epsilon() == Rat64(1, 10));

  // epsilon = n^{-1/5} evaluated at W = H = 1e5 gives T = 1000
  FamilyParams big = family_params(100000, 100000, 1000);
  CHECK(big.epsilon() == Rat64(1, 100));

  CHECK_THROWS_AS(family_params(10, 5, 2), std::invalid_argument);
  CHECK_THROWS_AS(family_params(0, 5, 2), std::invalid_argument);
  CHECK_THROWS_AS(family_params(5, 5, 1), std::invalid_argument);
  CHECK_NOTHROW(family_params(3, 3, 7));  // T > W allowed: empty family
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("1/3") == Rat64(1, 3));
  CHECK(parse_rational("2/5") == Rat64(2, 5));
  CHECK(parse_rational("7") == Rat64(7, 1));
  CHECK(parse_rational("4/8") == Rat64(1, 2));
  CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}
