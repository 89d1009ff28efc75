#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latinc/constructions.hpp"
#include "latinc/int128.hpp"

namespace latinc {

enum class SlopeSign { negative, positive };

// A reduced slope +-s/r: run r >= 1, rise magnitude s >= 1, gcd(r, s) = 1.
struct ReducedSlope {
  std::int64_t r = 1;
  std::int64_t s = 1;
  SlopeSign sign = SlopeSign::negative;

  friend bool operator==(const ReducedSlope&, const ReducedSlope&) = default;
};

// Number of k-term arithmetic progressions with step (r, -s) inside the
// W x H grid: A'_k = max(0, W-(k-1)r) * max(0, H-(k-1)s). A line with
// exactly m >= k points carries m-k+1 of them, so lines with at least k
// points number A'_k - A'_{k+1}.
i128 run_counts(std::int64_t W, std::int64_t H, std::int64_t r, std::int64_t s,
                std::int64_t k);

// Exact counts for one slope family at threshold T. Counts are independent
// of the slope sign (vertical mirror).
struct SlopeFamilyProfile {
  ReducedSlope slope;
  std::int64_t T = 1;
  i128 ap_T = 0;              // A'_T
  i128 ap_T1 = 0;             // A'_{T+1}
  i128 qualifying_lines = 0;  // A'_T - A'_{T+1}
  i128 incidences = 0;        // A'_T + (T-1) * qualifying_lines
  // e_k = number of lines with exactly k points, k = 1.. (index k-1).
  // Materialized only for W*H <= 1e6.
  std::optional<std::vector<i128>> line_count_by_points;
};

SlopeFamilyProfile slope_family_stats(std::int64_t W, std::int64_t H,
                                      ReducedSlope slope, std::int64_t T);

// All reduced slopes admitting >= T collinear grid points:
// (T-1) r <= W-1, (T-1) s <= H-1, gcd(r, s) = 1, both signs, minus the
// grid diagonal s*W = r*H when the exclusion flag is set. Order: r
// ascending, then s ascending, negative before positive.
std::vector<ReducedSlope> enumerate_slopes(const FamilyParams& params);

// Quadrant index 0..3 for L1..L4: L1 positive shallow (sW < rH), L2
// positive steep, L3 negative shallow, L4 negative steep. Throws
// std::domain_error at sW == rH: the partition is undefined on the
// diagonal, which is reachable only with the exclusion flag disabled.
int quadrant_of(const ReducedSlope& slope, std::int64_t W, std::int64_t H);

struct QuadrantCount {
  i128 lines = 0;
  i128 incidences = 0;

  friend bool operator==(const QuadrantCount&, const QuadrantCount&) = default;
};

enum class CountMethod { closed_form, brute_force };

struct IncidenceReport {
  FamilyParams params;
  std::array<QuadrantCount, 4> quadrants;  // L1..L4
  i128 total_lines = 0;
  i128 total_incidences = 0;
  double ratio = 0.0;  // I / (|P|^{2/3} |L|^{2/3}); 0 when no lines
  CountMethod method = CountMethod::closed_form;

  bool same_counts(const IncidenceReport& other) const;
};

// Exact incidence counts for the whole family, one O(1) profile per slope.
// Thread count only partitions the slope list; integer sums make the result
// bit-identical for any partition.
IncidenceReport count_family(const FamilyParams& params, int threads = 1);

// Quadratic oracle: enumerates lines through point pairs, counts points per
// line by direct membership scan, applies threshold and exclusions. Shares
// no counting code with count_family. Refuses grids above the cap.
IncidenceReport brute_force_report(const FamilyParams& params,
                                   std::int64_t cap = 2500);

// Exact number of grid points on a line, O(1): solve A x + B y = C by
// extended gcd and intersect the solution progression with the grid box.
i128 points_on_line(const LatticeLine& line, const PointGrid& grid);

struct ExplicitIncidences {
  std::int64_t lines = 0;
  i128 incidences = 0;
  double ratio = 0.0;
};

ExplicitIncidences explicit_set_incidences(const ExplicitLineSet& set,
                                           const PointGrid& grid);

// e_k histogram for one slope family by full grid scan (independent of
// run_counts). Requires W*H <= 1e6.
std::vector<i128> slope_family_histogram(std::int64_t W, std::int64_t H,
                                         ReducedSlope slope);

struct StaircaseResult {
  bool pass = true;
  std::string detail;  // first failing check, empty on pass
};

// Verifies, against the brute-force histogram: the second-difference
// identity e_k = A'_k - 2A'_{k+1} + A'_{k+2}; the interior plateau
// e_k = 2rs while W-(k+1)r >= 0 and H-(k+1)s >= 0; the maximal-line point
// count ceil(W/r) (shallow) or ceil(H/s) (steep); and that the profile at
// threshold T matches the histogram tails.
StaircaseResult staircase_check(std::int64_t W, std::int64_t H,
                                ReducedSlope slope, std::int64_t T);

// One row of the section-4 tracking report: exact anchor counts next to
// the paper's approximation formulas. Deviations are reported, never
// asserted; the formulas carry unquantified lower-order terms.
struct FormulaRow {
  std::int64_t r = 1;
  std::int64_t s = 1;
  bool steep = false;  // s*W > r*H
  i128 exact_lines = 0;
  i128 exact_incidences = 0;
  double formula_total_incidences = 0.0;
  i128 exact_bottom_lines = 0;
  i128 exact_bottom_incidences = 0;
  double formula_bottom_lines = 0.0;
  double formula_bottom_incidences = 0.0;
  i128 exact_right_lines = 0;
  double formula_right_lines = 0.0;
};

std::vector<FormulaRow> section4_formula_report(const FamilyParams& params);

}  // namespace latinc
