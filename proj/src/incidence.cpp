#include "latinc/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace latinc {

namespace {

double ratio_of(i128 points, i128 lines, i128 incidences) {
  if (lines == 0) return 0.0;
  return to_double(incidences) /
         std::pow(to_double(points) * to_double(lines), 2.0 / 3.0);
}

// Grid points on the line through (x0, y0) with slope sign*s/r, counted by
// clamping the lattice progression to the box. Exact, O(1).
i128 points_on_anchored(std::int64_t W, std::int64_t H, const ReducedSlope& sl,
                        std::int64_t x0, std::int64_t y0) {
  // steps to the left edge / right edge along x
  i128 left = (x0 - 1) / sl.r;
  i128 right = (W - x0) / sl.r;
  // slope -s/r: y grows toward the left; slope +s/r: y grows to the right
  i128 up, down;
  if (sl.sign == SlopeSign::negative) {
    up = (H - y0) / sl.s;    // steps left
    down = (y0 - 1) / sl.s;  // steps right
    return std::min(left, up) + std::min(right, down) + 1;
  }
  up = (H - y0) / sl.s;    // steps right
  down = (y0 - 1) / sl.s;  // steps left
  return std::min(left, down) + std::min(right, up) + 1;
}

}  // namespace

i128 run_counts(std::int64_t W, std::int64_t H, std::int64_t r, std::int64_t s,
                std::int64_t k) {
  if (W < 1 || H < 1 || r < 1 || s < 1 || k < 1)
    throw std::invalid_argument("run_counts: all arguments must be positive");
  i128 a = (i128)W - checked_mul((i128)(k - 1), r);
  i128 b = (i128)H - checked_mul((i128)(k - 1), s);
  if (a <= 0 || b <= 0) return 0;
  return checked_mul(a, b);
}

SlopeFamilyProfile slope_family_stats(std::int64_t W, std::int64_t H,
                                      ReducedSlope slope, std::int64_t T) {
  if (T < 1) throw std::invalid_argument("slope_family_stats: T must be >= 1");
  if (std::gcd(slope.r, slope.s) != 1)
    throw std::invalid_argument("slope_family_stats: slope not reduced");

  SlopeFamilyProfile p;
  p.slope = slope;
  p.T = T;
  p.ap_T = run_counts(W, H, slope.r, slope.s, T);
  p.ap_T1 = run_counts(W, H, slope.r, slope.s, T + 1);
  p.qualifying_lines = p.ap_T - p.ap_T1;
  p.incidences =
      checked_add(p.ap_T, checked_mul((i128)(T - 1), p.qualifying_lines));

  if ((i128)W * H <= 1000000) {
    std::int64_t kmax = std::min((W - 1) / slope.r, (H - 1) / slope.s) + 1;
    std::vector<i128> e((std::size_t)kmax, 0);
    for (std::int64_t k = 1; k <= kmax; ++k)
      e[(std::size_t)k - 1] = run_counts(W, H, slope.r, slope.s, k) -
                              2 * run_counts(W, H, slope.r, slope.s, k + 1) +
                              run_counts(W, H, slope.r, slope.s, k + 2);
    p.line_count_by_points = std::move(e);
  }
  return p;
}

std::vector<ReducedSlope> enumerate_slopes(const FamilyParams& params) {
  std::vector<ReducedSlope> out;
  if (params.T < 2) throw std::invalid_argument("enumerate_slopes: T < 2");
  std::int64_t rmax = (params.W - 1) / (params.T - 1);
  std::int64_t smax = (params.H - 1) / (params.T - 1);
  if ((i128)rmax * smax > 50000000)
    throw std::runtime_error(
        "enumerate_slopes: more than 5e7 candidate slopes; the family itself "
        "is output-sized, raise T");
  for (std::int64_t r = 1; r <= rmax; ++r)
    for (std::int64_t s = 1; s <= smax; ++s) {
      if (std::gcd(r, s) != 1) continue;
      if (params.exclude_diagonal &&
          (i128)s * params.W == (i128)r * params.H)
        continue;
      out.push_back({r, s, SlopeSign::negative});
      out.push_back({r, s, SlopeSign::positive});
    }
  return out;
}

int quadrant_of(const ReducedSlope& slope, std::int64_t W, std::int64_t H) {
  i128 lhs = (i128)slope.s * W, rhs = (i128)slope.r * H;
  if (lhs == rhs)
    throw std::domain_error(
        "quadrant_of: slope magnitude equals H/W; the L1..L4 partition is "
        "undefined on the grid diagonal (re-enable the exclusion)");
  bool steep = lhs > rhs;
  if (slope.sign == SlopeSign::positive) return steep ? 1 : 0;  // L2 : L1
  return steep ? 3 : 2;                                         // L4 : L3
}

bool IncidenceReport::same_counts(const IncidenceReport& other) const {
  return quadrants == other.quadrants && total_lines == other.total_lines &&
         total_incidences == other.total_incidences;
}

IncidenceReport count_family(const FamilyParams& params, int threads) {
  if (threads < 1)
    throw std::invalid_argument("count_family: thread count must be >= 1");
  std::vector<ReducedSlope> slopes = enumerate_slopes(params);

  IncidenceReport report;
  report.params = params;
  report.method = CountMethod::closed_form;

  auto tally = [&](std::size_t begin, std::size_t end,
                   std::array<QuadrantCount, 4>& acc) {
    for (std::size_t i = begin; i < end; ++i) {
      i128 ap_T = run_counts(params.W, params.H, slopes[i].r, slopes[i].s, params.T);
      i128 ap_T1 =
          run_counts(params.W, params.H, slopes[i].r, slopes[i].s, params.T + 1);
      i128 qual = ap_T - ap_T1;
      i128 inc = checked_add(ap_T, checked_mul((i128)(params.T - 1), qual));
      int q = quadrant_of(slopes[i], params.W, params.H);
      acc[q].lines = checked_add(acc[q].lines, qual);
      acc[q].incidences = checked_add(acc[q].incidences, inc);
    }
  };

  if (threads == 1 || slopes.size() < 64) {
    tally(0, slopes.size(), report.quadrants);
  } else {
    // Fixed chunking; integer sums commute, so any partition gives results
    // bit-identical to the sequential pass.
    std::size_t nthreads = std::min<std::size_t>((std::size_t)threads, 64);
    std::vector<std::array<QuadrantCount, 4>> partial(nthreads);
    std::vector<std::exception_ptr> errors(nthreads);
    std::vector<std::thread> pool;
    std::size_t chunk = (slopes.size() + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t) {
      std::size_t b = t * chunk, e = std::min(slopes.size(), b + chunk);
      pool.emplace_back([&, t, b, e] {
        try {
          tally(b, e, partial[t]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
      if (err) std::rethrow_exception(err);
    for (auto& part : partial)
      for (int q = 0; q < 4; ++q) {
        report.quadrants[q].lines =
            checked_add(report.quadrants[q].lines, part[q].lines);
        report.quadrants[q].incidences =
            checked_add(report.quadrants[q].incidences, part[q].incidences);
      }
  }

  for (int q = 0; q < 4; ++q) {
    report.total_lines = checked_add(report.total_lines, report.quadrants[q].lines);
    report.total_incidences =
        checked_add(report.total_incidences, report.quadrants[q].incidences);
  }
  report.ratio = ratio_of(params.n(), report.total_lines, report.total_incidences);
  return report;
}

IncidenceReport brute_force_report(const FamilyParams& params,
                                   std::int64_t cap) {
  if ((i128)params.W * params.H > cap)
    throw std::invalid_argument(
        "brute_force_report: grid exceeds the oracle cap (" +
        std::to_string(cap) + " points); the oracle is quadratic by design");

  const std::int64_t W = params.W, H = params.H;

  // Every line through at least two grid points, canonicalized. Axis-parallel
  // directions are skipped outright; they are never part of the family.
  std::vector<LatticeLine> lines;
  for (std::int64_t x1 = 1; x1 <= W; ++x1)
    for (std::int64_t y1 = 1; y1 <= H; ++y1)
      for (std::int64_t x2 = x1; x2 <= W; ++x2)
        for (std::int64_t y2 = (x2 == x1 ? y1 + 1 : 1); y2 <= H; ++y2) {
          std::int64_t dx = x2 - x1, dy = y2 - y1;
          if (dx == 0 || dy == 0) continue;
          std::int64_t g = std::gcd(dx < 0 ? -dx : dx, dy < 0 ? -dy : dy);
          dx /= g; dy /= g;
          std::int64_t a = dy, b = -dx;
          if (b < 0) { a = -a; b = -b; }
          lines.push_back(LatticeLine{a, b, a * x1 + b * y1});
        }
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());

  IncidenceReport report;
  report.params = params;
  report.method = CountMethod::brute_force;

  for (const LatticeLine& ln : lines) {
    if (params.exclude_diagonal &&
        (i128)(ln.A < 0 ? -ln.A : ln.A) * W == (i128)ln.B * H)
      continue;
    // membership scan, column by column
    std::int64_t count = 0;
    for (std::int64_t x = 1; x <= W; ++x) {
      std::int64_t num = ln.C - ln.A * x;
      if (num % ln.B != 0) continue;
      std::int64_t y = num / ln.B;
      if (y >= 1 && y <= H) ++count;
    }
    if (count < params.T) continue;
    ReducedSlope slope{ln.B, ln.A < 0 ? -ln.A : ln.A,
                       ln.A > 0 ? SlopeSign::negative : SlopeSign::positive};
    int q = quadrant_of(slope, W, H);
    report.quadrants[q].lines = checked_add(report.quadrants[q].lines, 1);
    report.quadrants[q].incidences =
        checked_add(report.quadrants[q].incidences, count);
  }

  for (int q = 0; q < 4; ++q) {
    report.total_lines = checked_add(report.total_lines, report.quadrants[q].lines);
    report.total_incidences =
        checked_add(report.total_incidences, report.quadrants[q].incidences);
  }
  report.ratio = ratio_of(params.n(), report.total_lines, report.total_incidences);
  return report;
}

i128 points_on_line(const LatticeLine& line, const PointGrid& grid) {
  const std::int64_t W = grid.W, H = grid.H;
  if (W < 1 || H < 1)
    throw std::invalid_argument("points_on_line: empty grid");

  if (line.B == 0) {  // vertical: A x = C, A > 0
    if (line.C % line.A != 0) return 0;
    std::int64_t x = line.C / line.A;
    return (x >= 1 && x <= W) ? H : 0;
  }
  if (line.A == 0) {  // horizontal: B y = C, B > 0
    if (line.C % line.B != 0) return 0;
    std::int64_t y = line.C / line.B;
    return (y >= 1 && y <= H) ? W : 0;
  }

  // gcd(A, B) = 1: solutions are (x0 + B t, y0 - A t). Extended gcd gives
  // one solution; the rest is interval intersection over t.
  std::int64_t a = line.A, b = line.B;
  std::int64_t old_r = a, r = b, old_u = 1, u = 0;
  while (r != 0) {
    std::int64_t qt = old_r / r;
    std::int64_t tmp = old_r - qt * r; old_r = r; r = tmp;
    tmp = old_u - qt * u; old_u = u; u = tmp;
  }
  // old_r = +-1 and a * old_u = old_r (mod b), so a * (old_u * old_r * C) = C (mod b).
  i128 x0 = (i128)old_u * line.C * old_r;
  x0 -= (i128)b * floor_div(x0 - 1, b);  // shift into [1, b]: keeps products in range
  i128 y0 = ((i128)line.C - (i128)line.A * x0) / line.B;

  // 1 <= x0 + B t <= W, B > 0
  i128 tlo = ceil_div(1 - x0, b);
  i128 thi = floor_div((i128)W - x0, b);
  // 1 <= y0 - A t <= H
  if (line.A > 0) {
    tlo = std::max(tlo, ceil_div(y0 - H, a));
    thi = std::min(thi, floor_div(y0 - 1, a));
  } else {
    i128 a2 = -(i128)line.A;
    tlo = std::max(tlo, ceil_div(1 - y0, a2));
    thi = std::min(thi, floor_div((i128)H - y0, a2));
  }
  return thi >= tlo ? thi - tlo + 1 : 0;
}

ExplicitIncidences explicit_set_incidences(const ExplicitLineSet& set,
                                           const PointGrid& grid) {
  ExplicitIncidences result;
  result.lines = (std::int64_t)set.lines.size();
  for (const LatticeLine& ln : set.lines)
    result.incidences =
        checked_add(result.incidences, points_on_line(ln, grid));
  result.ratio = ratio_of(grid.size(), result.lines, result.incidences);
  return result;
}

std::vector<i128> slope_family_histogram(std::int64_t W, std::int64_t H,
                                         ReducedSlope slope) {
  if ((i128)W * H > 1000000)
    throw std::invalid_argument(
        "slope_family_histogram: grid too large for a full scan");
  if (std::gcd(slope.r, slope.s) != 1)
    throw std::invalid_argument("slope_family_histogram: slope not reduced");

  // Lines of slope -s/r are the level sets of s x + r y; of +s/r, of
  // s x - r y. Hash each point to its line and histogram the sizes.
  std::map<std::int64_t, std::int64_t> per_line;
  for (std::int64_t x = 1; x <= W; ++x)
    for (std::int64_t y = 1; y <= H; ++y) {
      std::int64_t key = slope.sign == SlopeSign::negative
                             ? slope.s * x + slope.r * y
                             : slope.s * x - slope.r * y;
      ++per_line[key];
    }
  std::int64_t kmax = 0;
  for (auto& [key, cnt] : per_line) kmax = std::max(kmax, cnt);
  std::vector<i128> e((std::size_t)kmax, 0);
  for (auto& [key, cnt] : per_line) ++e[(std::size_t)cnt - 1];
  return e;
}

StaircaseResult staircase_check(std::int64_t W, std::int64_t H,
                                ReducedSlope slope, std::int64_t T) {
  StaircaseResult res;
  auto fail = [&](std::string what) {
    res.pass = false;
    if (res.detail.empty()) res.detail = std::move(what);
  };

  std::vector<i128> e = slope_family_histogram(W, H, slope);
  const std::int64_t r = slope.r, s = slope.s;

  // (i) e_k = A'_k - 2 A'_{k+1} + A'_{k+2}
  std::size_t span = e.size() + 2;
  for (std::size_t k = 1; k <= span; ++k) {
    i128 predicted = run_counts(W, H, r, s, (std::int64_t)k) -
                     2 * run_counts(W, H, r, s, (std::int64_t)k + 1) +
                     run_counts(W, H, r, s, (std::int64_t)k + 2);
    i128 actual = k <= e.size() ? e[k - 1] : 0;
    if (predicted != actual)
      fail("second difference mismatch at k=" + std::to_string(k) + ": " +
           to_string(actual) + " lines vs " + to_string(predicted));
  }

  // (ii) interior plateau: e_k = 2 r s while a (k+1)-run still fits
  for (std::int64_t k = 1; W - (k + 1) * r >= 0 && H - (k + 1) * s >= 0; ++k) {
    i128 actual = (std::size_t)k <= e.size() ? e[(std::size_t)k - 1] : 0;
    if (actual != (i128)2 * r * s)
      fail("plateau mismatch at k=" + std::to_string(k) + ": " +
           to_string(actual) + " vs 2rs=" + std::to_string(2 * r * s));
  }

  // (iii) maximal lines carry ceil(W/r) points (shallow) or ceil(H/s) (steep)
  i128 sW = (i128)s * W, rH = (i128)r * H;
  std::int64_t expected_max =
      sW <= rH ? (W + r - 1) / r : (H + s - 1) / s;
  if ((std::int64_t)e.size() != expected_max)
    fail("maximal point count " + std::to_string(e.size()) + " vs expected " +
         std::to_string(expected_max));

  // profile consistency at T: histogram tails vs the closed-form counts
  SlopeFamilyProfile p = slope_family_stats(W, H, slope, T);
  i128 tail_lines = 0, tail_inc = 0;
  for (std::size_t k = (std::size_t)T; k <= e.size(); ++k) {
    tail_lines += e[k - 1];
    tail_inc += (i128)k * e[k - 1];
  }
  if (tail_lines != p.qualifying_lines || tail_inc != p.incidences)
    fail("profile mismatch at T=" + std::to_string(T) + ": histogram " +
         to_string(tail_lines) + "/" + to_string(tail_inc) + " vs profile " +
         to_string(p.qualifying_lines) + "/" + to_string(p.incidences));

  return res;
}

std::vector<FormulaRow> section4_formula_report(const FamilyParams& params) {
  const std::int64_t W = params.W, H = params.H, T = params.T;
  const double n = to_double(params.n());
  const double alpha = params.alpha();
  const double eps = params.epsilon().value();
  const double n_a = std::pow(n, alpha);        // n^alpha = W
  const double n_1a = std::pow(n, 1 - alpha);   // n^{1-alpha} = H
  const double n_2a = n_a * n_a;

  std::vector<FormulaRow> rows;
  for (const ReducedSlope& slope : enumerate_slopes(params)) {
    if (slope.sign != SlopeSign::negative) continue;  // counts are sign-invariant
    FormulaRow row;
    row.r = slope.r;
    row.s = slope.s;
    row.steep = (i128)slope.s * W > (i128)slope.r * H;
    const double r = (double)slope.r, s = (double)slope.s;

    SlopeFamilyProfile p = slope_family_stats(W, H, slope, T);
    row.exact_lines = p.qualifying_lines;
    row.exact_incidences = p.incidences;
    row.formula_total_incidences = n - r * s * eps * eps * n_2a;

    // bottom-row anchors; the steep case skips the r rightmost points
    std::int64_t xmax = row.steep ? W - slope.r : W;
    for (std::int64_t x0 = 1; x0 <= xmax; ++x0) {
      i128 cnt = points_on_anchored(W, H, slope, x0, 1);
      if (cnt >= T) {
        row.exact_bottom_lines += 1;
        row.exact_bottom_incidences += cnt;
      }
    }
    if (!row.steep) {
      row.formula_bottom_lines = n_a * (1 - eps * r) + r;
      row.formula_bottom_incidences =
          n_2a / (2 * r) - r * eps * eps * n_2a / 2;
    } else {
      row.formula_bottom_lines = n_a - r * eps * n_a;
      row.formula_bottom_incidences =
          n / s - r * n_1a * n_1a / (2 * s * s) - r * eps * eps * n_2a / 2;
    }

    // right-column anchors; the shallow case skips the s bottom points
    std::int64_t ymin = row.steep ? 1 : slope.s + 1;
    for (std::int64_t y0 = ymin; y0 <= H; ++y0)
      if (points_on_anchored(W, H, slope, W, y0) >= T) row.exact_right_lines += 1;
    row.formula_right_lines = row.steep ? n_1a - s * (eps * n_a - 1)
                                        : n_1a - s * eps * n_a;

    rows.push_back(row);
  }
  return rows;
}

}  // namespace latinc
