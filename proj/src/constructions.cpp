#include "latinc/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <gmpxx.h>

namespace latinc {

namespace {

mpz_class mpz_pow(std::int64_t base, unsigned exp) {
  mpz_class b((long)base), r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
  return r;
}

// Largest x >= lo with pred(x), where pred is monotone decreasing in x and
// pred(lo) holds. Starts from a float guess, then walks exactly.
template <class Pred>
std::int64_t last_satisfying(std::int64_t lo, std::int64_t guess, Pred pred) {
  std::int64_t x = std::max(lo, guess);
  while (!pred(x) && x > lo) --x;
  while (pred(x + 1)) ++x;
  return x;
}

void sort_dedup(std::vector<LatticeLine>& lines) {
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
}

}  // namespace

LatticeLine make_line(std::int64_t a, std::int64_t b, std::int64_t c) {
  if (a == 0 && b == 0)
    throw std::invalid_argument("make_line: a and b cannot both be zero");
  std::int64_t g = std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
  a /= g; b /= g;
  if (c % g != 0)
    throw std::invalid_argument("make_line: c not divisible by gcd(a, b); no lattice points");
  c /= g;
  if (b < 0 || (b == 0 && a < 0)) { a = -a; b = -b; c = -c; }
  return LatticeLine{a, b, c};
}

std::int64_t floor_root(i128 x, unsigned k) {
  if (x < 0) throw std::invalid_argument("floor_root: negative argument");
  if (x == 0) return 0;
  auto pow_le = [&](i128 v) {
    i128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (__builtin_mul_overflow(acc, v, &acc)) return false;
      if (acc > x) return false;
    }
    return acc <= x;
  };
  std::int64_t guess = (std::int64_t)std::llround(
      std::pow((double)to_double(x), 1.0 / k));
  std::int64_t r = std::max<std::int64_t>(1, guess - 2);
  while (pow_le((i128)r + 1)) ++r;
  while (r > 1 && !pow_le(r)) --r;
  return r;
}

ExplicitLineSet erdos_lines(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("erdos_lines: n must be positive");
  ExplicitLineSet set;
  set.kind = SetKind::erdos;
  set.n = n;

  std::int64_t bmax = floor_root(n, 6);
  if (bmax < 2) {
    set.empty_range = true;
    return set;
  }
  // d range: sqrt(n)/2 <= d <= 3 sqrt(n)/4, decided by 4d^2 >= n and
  // 16d^2 <= 9n. Both ends closed (unlike the family d-range).
  std::int64_t dlo = std::max<std::int64_t>(
      1, (std::int64_t)std::llround(0.5 * std::sqrt((double)n)) - 2);
  while ((i128)4 * dlo * dlo < (i128)n) ++dlo;
  while (dlo > 1 && (i128)4 * (dlo - 1) * (dlo - 1) >= (i128)n) --dlo;
  std::int64_t dhi = last_satisfying(std::int64_t(0), (std::int64_t)std::llround(0.75 * std::sqrt((double)n)),
                                     [&](std::int64_t d) { return (i128)16 * d * d <= (i128)9 * n; });
  if (dlo > dhi) {
    set.empty_range = true;
    return set;
  }

  for (std::int64_t b = 2; b <= bmax; ++b)
    for (std::int64_t a = 1; a < b; ++a) {
      if (std::gcd(a, b) != 1) continue;
      for (std::int64_t c = 1; c <= b; ++c)
        for (std::int64_t d = dlo; d <= dhi; ++d)
          // b*y = a*(x - c) + b*d  ->  -a*x + b*y = b*d - a*c
          set.lines.push_back(make_line(-a, b, b * d - a * c));
    }
  sort_dedup(set.lines);
  return set;
}

ExplicitLineSet elekes_lines(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("elekes_lines: n must be positive");
  ExplicitLineSet set;
  set.kind = SetKind::elekes;
  set.n = n;

  std::int64_t amax = floor_root(n, 3);
  std::int64_t bmax = floor_root((i128)n * n, 3);  // floor(n^{2/3})
  if (amax < 1 || bmax < 1) {
    set.empty_range = true;
    return set;
  }
  for (std::int64_t a = 1; a <= amax; ++a)
    for (std::int64_t b = 1; b <= bmax; ++b)
      set.lines.push_back(make_line(-a, 1, b));  // y = a*x + b
  sort_dedup(set.lines);
  return set;
}

ExplicitLineSet family_lines_simplified(std::int64_t n, Rat64 alpha) {
  if (n < 1)
    throw std::invalid_argument("family_lines_simplified: n must be positive");
  if (alpha < Rat64(1, 3) || Rat64(1, 2) < alpha)
    throw std::invalid_argument(
        "family_lines_simplified: alpha must lie in [1/3, 1/2]");

  ExplicitLineSet set;
  set.kind = SetKind::family_simplified;
  set.n = n;
  set.alpha = alpha;

  const std::int64_t p = alpha.num, q = alpha.den;
  const double nd = (double)n;
  const double a_real = alpha.value();

  // c <= n^{alpha - 1/3}  <=>  c^{3q} <= n^{3p - q}
  mpz_class n_3pq = mpz_pow(n, (unsigned)(3 * p - q));
  std::int64_t cmax = last_satisfying(
      std::int64_t(1), (std::int64_t)std::llround(std::pow(nd, a_real - 1.0 / 3.0)),
      [&](std::int64_t c) { return mpz_pow(c, (unsigned)(3 * q)) <= n_3pq; });
  if (cmax < 2) {
    set.empty_range = true;
    return set;
  }

  // a < n^{1-2 alpha}/4  <=>  (4a)^q < n^{q-2p};  a = 0 always qualifies.
  mpz_class n_q2p = mpz_pow(n, (unsigned)(q - 2 * p));
  std::int64_t ahi = last_satisfying(
      std::int64_t(0), (std::int64_t)std::llround(std::pow(nd, 1 - 2 * a_real) / 4.0),
      [&](std::int64_t a) { return mpz_pow(4 * a, (unsigned)q) < n_q2p; });

  // n^{1-alpha}/2 <= d < 3 n^{1-alpha}/4: lower closed via (2d)^q >= n^{q-p},
  // upper open via (4d)^q < 3^q n^{q-p}.
  mpz_class n_qp = mpz_pow(n, (unsigned)(q - p));
  mpz_class three_nqp = mpz_pow(3, (unsigned)q) * n_qp;
  double d_guess = std::pow(nd, 1 - a_real);
  std::int64_t dlo = std::max<std::int64_t>(
      1, (std::int64_t)std::llround(d_guess / 2.0) - 2);
  while (mpz_pow(2 * dlo, (unsigned)q) < n_qp) ++dlo;
  while (dlo > 1 && mpz_pow(2 * (dlo - 1), (unsigned)q) >= n_qp) --dlo;
  std::int64_t dhi = last_satisfying(
      std::int64_t(0), (std::int64_t)std::llround(0.75 * d_guess),
      [&](std::int64_t d) { return mpz_pow(4 * d, (unsigned)q) < three_nqp; });
  if (dlo > dhi) {
    set.empty_range = true;
    return set;
  }

  for (std::int64_t a = 0; a <= ahi; ++a)
    for (std::int64_t c = 2; c <= cmax; ++c)
      for (std::int64_t b = 1; b < c; ++b) {
        if (std::gcd(b, c) != 1) continue;
        std::int64_t num = a * c + b;  // slope (a c + b)/c, already reduced
        for (std::int64_t i = 0; i < c; ++i)
          for (std::int64_t d = dlo; d <= dhi; ++d)
            // y = (num/c)(x - i) + d  ->  -num*x + c*y = c*d - num*i
            set.lines.push_back(make_line(-num, c, c * d - num * i));
      }
  sort_dedup(set.lines);
  return set;
}

double FamilyParams::alpha() const {
  if (W == 1 && H == 1) return 0.5;  // degenerate single-point grid
  return std::log((double)W) / std::log((double)W * (double)H);
}

FamilyParams family_params(std::int64_t W, std::int64_t H, std::int64_t T) {
  if (W < 1 || H < W)
    throw std::invalid_argument("family_params: need 1 <= W <= H");
  if (T < 2)
    throw std::invalid_argument("family_params: need T >= 2");
  FamilyParams p;
  p.W = W;
  p.H = H;
  p.T = T;
  return p;
}

}  // namespace latinc
