#pragma once

#include <cstdint>
#include <vector>

#include "latinc/int128.hpp"
#include "latinc/rational.hpp"

namespace latinc {

// A W x H section of the integer lattice: points (i, j) with 1 <= i <= W,
// 1 <= j <= H. Points are never materialized.
struct PointGrid {
  std::int64_t W = 1;
  std::int64_t H = 1;

  i128 size() const { return (i128)W * H; }
};

// A*x + B*y = C with gcd(A, B) = 1 and canonical sign B > 0, or B = 0 and
// A > 0. Slope is -A/B when B != 0. All membership tests are exact integer
// arithmetic; lines are never slope/intercept floats.
struct LatticeLine {
  std::int64_t A = 0;
  std::int64_t B = 0;
  std::int64_t C = 0;

  friend bool operator==(const LatticeLine&, const LatticeLine&) = default;
  friend auto operator<=>(const LatticeLine&, const LatticeLine&) = default;
};

// Canonicalizes (a, b, c): divides out gcd(a, b) and fixes the sign.
// Throws std::invalid_argument when a = b = 0.
LatticeLine make_line(std::int64_t a, std::int64_t b, std::int64_t c);

enum class SetKind { erdos, elekes, family_simplified };

struct ExplicitLineSet {
  SetKind kind = SetKind::erdos;
  std::int64_t n = 0;
  Rat64 alpha{0, 1};            // only meaningful for family_simplified
  std::vector<LatticeLine> lines;  // deduplicated, sorted by (A, B, C)
  bool empty_range = false;     // a parameter range came out empty
};

// All lines b*y = a*(x - c) + b*d with gcd(a,b)=1, 1 <= a < b <= floor(n^{1/6}),
// 1 <= c <= b, ceil(sqrt(n)/2) <= d <= floor(3 sqrt(n)/4). Both d endpoints
// closed. Empty slope range is a warning, not an error.
ExplicitLineSet erdos_lines(std::int64_t n);

// The floor(n^{1/3}) * floor(n^{2/3}) lines y = a*x + b; all distinct.
ExplicitLineSet elekes_lines(std::int64_t n);

// Lines y = (a + b/c)(x - i) + d over 0 <= a < n^{1-2 alpha}/4,
// 1 <= b < c <= n^{alpha - 1/3} with gcd(b,c)=1, 0 <= i < c, and
// n^{1-alpha}/2 <= d < 3 n^{1-alpha}/4 (upper end open, unlike the Erdos
// d-range). Range endpoints are decided by exact integer power comparisons.
// alpha must lie in [1/3, 1/2].
ExplicitLineSet family_lines_simplified(std::int64_t n, Rat64 alpha);

// Grid-and-threshold parameterization of the main family. Using (W, H, T)
// directly makes the paper-style integrality assumptions vacuous: the
// effective n is W*H, alpha is ln W / ln n, epsilon is T/W.
struct FamilyParams {
  std::int64_t W = 1;
  std::int64_t H = 1;
  std::int64_t T = 2;            // a line qualifies with >= T grid points
  bool exclude_diagonal = true;  // drop slopes +-H/W (s*W == r*H)

  i128 n() const { return (i128)W * H; }
  double alpha() const;
  Rat64 epsilon() const { return Rat64(T, W); }
};

// Validates 1 <= W <= H and T >= 2. T > W is allowed and simply yields an
// empty family (the spec's own boundary examples rely on it).
FamilyParams family_params(std::int64_t W, std::int64_t H, std::int64_t T);

// floor(x^{1/k}) for x >= 0, exact.
std::int64_t floor_root(i128 x, unsigned k);

}  // namespace latinc
