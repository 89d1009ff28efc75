#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "latinc/constructions.hpp"
#include "latinc/incidence.hpp"

using namespace latinc;

namespace {

// oracle: count k-runs with step (r, -s) by walking every start point
i128 run_counts_brute(std::int64_t W, std::int64_t H, std::int64_t r,
                      std::int64_t s, std::int64_t k) {
  i128 count = 0;
  for (std::int64_t x = 1; x <= W; ++x)
    for (std::int64_t y = 1; y <= H; ++y) {
      bool ok = true;
      for (std::int64_t i = 0; i < k; ++i)
        if (x + i * r > W || y - i * s < 1) { ok = false; break; }
      if (ok) ++count;
    }
  return count;
}

// oracle: points on a line by scanning every grid point
i128 points_on_line_brute(const LatticeLine& l, const PointGrid& g) {
  i128 count = 0;
  for (std::int64_t x = 1; x <= g.W; ++x)
    for (std::int64_t y = 1; y <= g.H; ++y)
      if ((i128)l.A * x + (i128)l.B * y == l.C) ++count;
  return count;
}

}  // namespace

TEST_CASE("run_counts examples and brute-force oracle") {
  CHECK(run_counts(3, 3, 1, 1, 1) == 9);
  CHECK(run_counts(3, 3, 1, 1, 2) == 4);
  CHECK(run_counts(5, 3, 2, 1, 3) == 1);

  for (std::int64_t W : {1, 2, 3, 5, 8})
    for (std::int64_t H : {1, 3, 7, 12})
      for (std::int64_t r : {1, 2, 3})
        for (std::int64_t s : {1, 2, 5}) {
          if (std::gcd(r, s) != 1) continue;
          for (std::int64_t k = 1; k <= 6; ++k)
            CHECK(run_counts(W, H, r, s, k) == run_counts_brute(W, H, r, s, k));
        }
}

TEST_CASE("telescoping: lines with >= k points sum back to A'_T") {
  const std::int64_t W = 9, H = 7, r = 2, s = 1, T = 2;
  i128 total = 0;
  for (std::int64_t k = T; run_counts(W, H, r, s, k) > 0; ++k)
    total += run_counts(W, H, r, s, k) - run_counts(W, H, r, s, k + 1);
  CHECK(total == run_counts(W, H, r, s, T));
}

TEST_CASE("slope_family_stats examples") {
  SlopeFamilyProfile diag = slope_family_stats(3, 3, {1, 1, SlopeSign::negative}, 2);
  CHECK(diag.qualifying_lines == 3);
  CHECK(diag.incidences == 7);
  REQUIRE(diag.line_count_by_points.has_value());
  CHECK(*diag.line_count_by_points == std::vector<i128>{2, 2, 1});

  SlopeFamilyProfile none = slope_family_stats(3, 3, {1, 1, SlopeSign::negative}, 4);
  CHECK(none.qualifying_lines == 0);
  CHECK(none.incidences == 0);

  SlopeFamilyProfile steep = slope_family_stats(3, 3, {1, 2, SlopeSign::negative}, 2);
  CHECK(steep.qualifying_lines == 2);
  CHECK(steep.incidences == 4);
}

TEST_CASE("slope_family_stats is sign-invariant and matches the histogram") {
  for (std::int64_t W : {3, 5, 9})
    for (std::int64_t H : {3, 8, 11})
      for (std::int64_t r : {1, 2, 3})
        for (std::int64_t s : {1, 2, 5}) {
          if (std::gcd(r, s) != 1) continue;
          for (SlopeSign sign : {SlopeSign::negative, SlopeSign::positive}) {
            ReducedSlope slope{r, s, sign};
            std::vector<i128> e = slope_family_histogram(W, H, slope);
            for (std::int64_t T = 1; T <= 4; ++T) {
              SlopeFamilyProfile p = slope_family_stats(W, H, slope, T);
              i128 lines = 0, inc = 0;
              for (std::size_t k = (std::size_t)T; k <= e.size(); ++k) {
                lines += e[k - 1];
                inc += (i128)k * e[k - 1];
              }
              CHECK(p.qualifying_lines == lines);
              CHECK(p.incidences == inc);
              ReducedSlope mirror{r, s,
                                  sign == SlopeSign::negative
                                      ? SlopeSign::positive
                                      : SlopeSign::negative};
              SlopeFamilyProfile m = slope_family_stats(W, H, mirror, T);
              CHECK(m.qualifying_lines == p.qualifying_lines);
              CHECK(m.incidences == p.incidences);
            }
          }
        }
}

TEST_CASE("monotonicity in T") {
  for (std::int64_t T = 1; T <= 9; ++T) {
    SlopeFamilyProfile a = slope_family_stats(9, 9, {2, 1, SlopeSign::negative}, T);
    SlopeFamilyProfile b =
        slope_family_stats(9, 9, {2, 1, SlopeSign::negative}, T + 1);
    CHECK(b.qualifying_lines <= a.qualifying_lines);
    CHECK(b.incidences <= a.incidences);
  }
}

TEST_CASE("enumerate_slopes") {
  FamilyParams p = family_params(3, 3, 2);
  std::vector<ReducedSlope> slopes = enumerate_slopes(p);
  std::vector<ReducedSlope> expected{{1, 2, SlopeSign::negative},
                                     {1, 2, SlopeSign::positive},
                                     {2, 1, SlopeSign::negative},
                                     {2, 1, SlopeSign::positive}};
  CHECK(slopes == expected);

  CHECK(enumerate_slopes(family_params(3, 3, 3)).empty());

  FamilyParams tall = family_params(3, 9, 2);
  std::vector<ReducedSlope> ts = enumerate_slopes(tall);
  auto has = [&](std::int64_t r, std::int64_t s) {
    return std::find(ts.begin(), ts.end(),
                     ReducedSlope{r, s, SlopeSign::negative}) != ts.end();
  };
  CHECK(!has(1, 3));  // the grid diagonal 3/1 is excluded
  CHECK(has(1, 1));
  CHECK(has(1, 2));
  CHECK(has(1, 4));
  CHECK(has(1, 8));
  CHECK(has(2, 1));
  CHECK(has(2, 3));
  CHECK(!has(2, 6));  // not reduced

  tall.exclude_diagonal = false;
  std::vector<ReducedSlope> with_diag = enumerate_slopes(tall);
  CHECK(std::find(with_diag.begin(), with_diag.end(),
                  ReducedSlope{1, 3, SlopeSign::negative}) != with_diag.end());
}

TEST_CASE("quadrant classification") {
  CHECK(quadrant_of({2, 1, SlopeSign::positive}, 3, 3) == 0);  // L1: shallow +
  CHECK(quadrant_of({1, 2, SlopeSign::positive}, 3, 3) == 1);  // L2: steep +
  CHECK(quadrant_of({2, 1, SlopeSign::negative}, 3, 3) == 2);  // L3
  CHECK(quadrant_of({1, 2, SlopeSign::negative}, 3, 3) == 3);  // L4
  CHECK_THROWS_AS(quadrant_of({1, 1, SlopeSign::negative}, 3, 3),
                  std::domain_error);
  CHECK_THROWS_AS(quadrant_of({1, 3, SlopeSign::positive}, 3, 9),
                  std::domain_error);
}

TEST_CASE("count_family 3x3 worked example") {
  IncidenceReport rep = count_family(family_params(3, 3, 2));
  CHECK(rep.total_lines == 8);
  CHECK(rep.total_incidences == 16);
  for (int q = 0; q < 4; ++q) {
    CHECK(rep.quadrants[q].lines == 2);
    CHECK(rep.quadrants[q].incidences == 4);
  }
  CHECK(rep.ratio ==
        doctest::Approx(16.0 / std::pow(72.0, 2.0 / 3.0)).epsilon(1e-12));
  CHECK(rep.ratio == doctest::Approx(0.92448).epsilon(1e-4));

  IncidenceReport empty = count_family(family_params(3, 3, 4));
  CHECK(empty.total_lines == 0);
  CHECK(empty.total_incidences == 0);
  CHECK(empty.ratio == 0.0);
}

TEST_CASE("count_family equals brute force") {
  for (auto [W, H] : std::vector<std::pair<std::int64_t, std::int64_t>>{
           {3, 3}, {4, 4}, {5, 5}, {4, 16}, {6, 9}, {2, 11}, {1, 1}}) {
    for (std::int64_t T : {2, 3}) {
      if (H < W) std::swap(W, H);
      FamilyParams p = family_params(W, H, T);
      IncidenceReport fast = count_family(p);
      IncidenceReport slow = brute_force_report(p);
      CHECK(fast.same_counts(slow));
      CHECK(fast.ratio == slow.ratio);
    }
  }
}

TEST_CASE("brute force honors the cap and the diagonal flag") {
  CHECK_THROWS_AS(brute_force_report(family_params(60, 60, 2)),
                  std::invalid_argument);
  CHECK_NOTHROW(brute_force_report(family_params(60, 60, 2), 3600));

  // with the diagonal admitted, classification must fail loudly
  FamilyParams p = family_params(3, 9, 2);
  p.exclude_diagonal = false;
  CHECK_THROWS_AS(count_family(p), std::domain_error);
  CHECK_THROWS_AS(brute_force_report(p), std::domain_error);
}

TEST_CASE("count_family symmetry invariants") {
  for (auto [W, H] : std::vector<std::pair<std::int64_t, std::int64_t>>{
           {5, 5}, {4, 16}, {3, 27}, {7, 7}, {5, 45}}) {
    for (std::int64_t T : {2, 3, 4}) {
      IncidenceReport rep = count_family(family_params(W, H, T));
      CHECK(rep.quadrants[0] == rep.quadrants[2]);  // L1 == L3
      CHECK(rep.quadrants[1] == rep.quadrants[3]);  // L2 == L4
      if (W == H) {
        CHECK(rep.quadrants[0] == rep.quadrants[1]);
        CHECK(rep.quadrants[0] == rep.quadrants[3]);
      }
    }
  }
}

TEST_CASE("count_family is thread-count invariant") {
  FamilyParams p = family_params(50, 50, 2);
  IncidenceReport a = count_family(p, 1);
  IncidenceReport b = count_family(p, 8);
  CHECK(a.same_counts(b));
  CHECK(a.ratio == b.ratio);
}

TEST_CASE("staircase_check worked examples") {
  CHECK(slope_family_histogram(3, 3, {1, 1, SlopeSign::negative}) ==
        std::vector<i128>{2, 2, 1});

  StaircaseResult a = staircase_check(3, 3, {1, 1, SlopeSign::negative}, 2);
  CHECK(a.pass);
  CHECK(a.detail.empty());

  // maximal count ceil(9/2) = 5 in the shallow regime
  CHECK(slope_family_histogram(9, 9, {2, 1, SlopeSign::negative}).size() == 5);
  CHECK(staircase_check(9, 9, {2, 1, SlopeSign::negative}, 3).pass);

  // steep: slope -4/1 on 3 x 9 has sW = 12 > rH = 9, maximal ceil(9/4) = 3
  CHECK(slope_family_histogram(3, 9, {1, 4, SlopeSign::negative}).size() == 3);
  CHECK(staircase_check(3, 9, {1, 4, SlopeSign::negative}, 2).pass);
}

TEST_CASE("staircase_check random battery") {
  std::mt19937 rng(12345);
  for (int i = 0; i < 50; ++i) {
    std::int64_t W = 2 + (std::int64_t)(rng() % 40);
    std::int64_t H = 2 + (std::int64_t)(rng() % (2500 / W - 1));
    std::int64_t r = 1 + (std::int64_t)(rng() % std::min<std::int64_t>(W - 1, 6));
    std::int64_t s = 1 + (std::int64_t)(rng() % std::min<std::int64_t>(H - 1, 6));
    if (std::gcd(r, s) != 1) continue;
    SlopeSign sign = rng() % 2 ? SlopeSign::positive : SlopeSign::negative;
    std::int64_t T = 2 + (std::int64_t)(rng() % 3);
    StaircaseResult res = staircase_check(W, H, {r, s, sign}, T);
    INFO("W=", W, " H=", H, " r=", r, " s=", s, " detail=", res.detail);
    CHECK(res.pass);
  }
}

TEST_CASE("points_on_line examples") {
  PointGrid g4{4, 4};
  CHECK(points_on_line(make_line(-1, 1, 0), g4) == 4);   // y = x
  CHECK(points_on_line(make_line(1, 1, 100), g4) == 0);  // far away
  CHECK(points_on_line(make_line(1, 0, 3), PointGrid{5, 7}) == 7);  // x = 3
  CHECK(points_on_line(make_line(0, 1, 9), PointGrid{5, 7}) == 0);  // y = 9
}

TEST_CASE("points_on_line equals the membership scan on explicit sets") {
  std::vector<PointGrid> grids{{4, 16}, {8, 8}, {64, 64}, {16, 64}, {3, 40}};
  ExplicitLineSet sets[] = {elekes_lines(64), erdos_lines(4096),
                            family_lines_simplified(4096, Rat64(1, 2))};
  for (const ExplicitLineSet& set : sets)
    for (const PointGrid& g : grids)
      for (const LatticeLine& l : set.lines)
        CHECK(points_on_line(l, g) == points_on_line_brute(l, g));
}

TEST_CASE("explicit_set_incidences: the Elekes fixed point") {
  ExplicitIncidences r =
      explicit_set_incidences(elekes_lines(64), PointGrid{4, 16});
  CHECK(r.lines == 64);
  CHECK(r.incidences == 156);
  CHECK(r.ratio == doctest::Approx(0.609375).epsilon(1e-9));
}

TEST_CASE("section4_formula_report tracks the paper formulas") {
  std::vector<FormulaRow> rows =
      section4_formula_report(family_params(100, 100, 10));
  bool found11 = false, found13 = false;
  for (const FormulaRow& row : rows) {
    if (row.r == 1 && row.s == 1) {
      found11 = true;
      CHECK(row.formula_bottom_lines == doctest::Approx(91.0));
      CHECK(row.exact_bottom_lines == 91);
    }
    if (row.r == 3 && row.s == 1) {
      found13 = true;
      CHECK(row.formula_bottom_lines == doctest::Approx(73.0));
      CHECK(row.exact_bottom_lines == 73);
    }
    // exact columns never go negative, whatever the formulas do
    CHECK(row.exact_bottom_lines >= 0);
    CHECK(row.exact_right_lines >= 0);
  }
  CHECK(found11);
  CHECK(found13);
}
