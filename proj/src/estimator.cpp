#include "latinc/estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include <gmpxx.h>

namespace latinc {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;

mpz_class mpz_from_i128(i128 v) {
  bool neg = v < 0;
  u128 x = neg ? (u128)0 - (u128)v : (u128)v;
  mpz_class hi((unsigned long)(x >> 64));
  mpz_class lo((unsigned long)(x & ~0ULL));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

// round((num/den)^{1/k}), ties up, by exact integer comparisons.
std::int64_t round_root_mpz(const mpz_class& num, const mpz_class& den,
                            unsigned k) {
  if (num < 0 || den <= 0)
    throw std::invalid_argument("round_root: need num >= 0, den > 0");
  if (num == 0) return 0;

  mpz_class ratio = num / den;
  mpz_class t;
  mpz_root(t.get_mpz_t(), ratio.get_mpz_t(), k);
  auto below = [&](const mpz_class& v) {  // v^k * den <= num
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), v.get_mpz_t(), k);
    return p * den <= num;
  };
  while (below(t + 1)) ++t;
  while (t > 0 && !below(t)) --t;

  // t+1 when num/den >= (t + 1/2)^k, i.e. 2^k num >= (2t+1)^k den
  mpz_class lhs = num << k;
  mpz_class half, base = 2 * t + 1;
  mpz_pow_ui(half.get_mpz_t(), base.get_mpz_t(), k);
  if (lhs >= half * den) ++t;

  if (!t.fits_slong_p())
    throw std::overflow_error("round_root: result exceeds int64");
  return (std::int64_t)t.get_si();
}

}  // namespace

double c_main() {
  return (double)(3.0L * std::cbrt((long double)(3.0L / (4.0L * kPi * kPi))));
}

double c_main_alt() {
  long double num = std::pow(3.0L, 4.0L / 3.0L);
  long double den = std::pow(kPi, 2.0L / 3.0L) * std::pow(2.0L, 2.0L / 3.0L);
  return (double)(num / den);
}

double c_pach_toth() {
  return (double)std::cbrt((long double)(3.0L / (4.0L * kPi * kPi)));
}

AsymptoticPrediction predict(double n, double alpha, double epsilon) {
  if (!(n > 1.0))
    throw std::invalid_argument("predict: n must exceed 1");
  if (!(alpha >= 1.0 / 3.0 && alpha <= 0.5))
    throw std::invalid_argument("predict: alpha must lie in [1/3, 1/2]");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("predict: epsilon must lie in (0, 1)");

  AsymptoticPrediction p;
  p.n = n;
  p.alpha = alpha;
  p.epsilon = epsilon;
  double pi2 = (double)(kPi * kPi);
  p.predicted_lines =
      6.0 * std::pow(n, 2.0 - 3.0 * alpha) / (pi2 * epsilon * epsilon * epsilon);
  p.predicted_incidences =
      9.0 * std::pow(n, 2.0 - 2.0 * alpha) / (pi2 * epsilon * epsilon);
  p.c_main = c_main();
  p.c_pach_toth = c_pach_toth();
  p.c_upper = kUpperBoundConstant;
  return p;
}

std::int64_t round_root_rational(i128 num, i128 den, unsigned k) {
  return round_root_mpz(mpz_from_i128(num), mpz_from_i128(den), k);
}

std::int64_t round_root(i128 v, unsigned k) {
  return round_root_rational(v, 1, k);
}

CompareResult compare(const SweepRow& row) {
  if (row.predicted_lines == 0.0 || row.predicted_incidences == 0.0)
    throw std::domain_error("compare: predicted value is zero");
  CompareResult c;
  c.rel_err_lines =
      std::abs(to_double(row.lines) - row.predicted_lines) / row.predicted_lines;
  c.rel_err_incidences =
      std::abs(to_double(row.incidences) - row.predicted_incidences) /
      row.predicted_incidences;
  c.rel_err_ratio_vs_c = std::abs(row.ratio - c_main()) / c_main();
  return c;
}

std::vector<SweepRow> sweep(Rat64 alpha, EpsilonRule rule,
                            std::vector<std::int64_t> n_list, int threads) {
  if (alpha < Rat64(1, 3) || Rat64(1, 2) < alpha)
    throw std::invalid_argument("sweep: alpha must lie in [1/3, 1/2]");
  if (rule.inverse_root < 3)
    throw std::invalid_argument(
        "sweep: epsilon rule n^{-1/k} needs k >= 3 to keep eps = omega(n^-alpha)");
  std::sort(n_list.begin(), n_list.end());
  n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());

  const unsigned p = (unsigned)alpha.num, q = (unsigned)alpha.den;
  std::vector<SweepRow> rows;
  rows.reserve(n_list.size());
  for (std::int64_t n : n_list) {
    if (n < 2) throw std::invalid_argument("sweep: each n must exceed 1");
    SweepRow row;

    // W = round(n^{p/q}) and H = round(n^{(q-p)/q}), decided exactly.
    mpz_class nz((long)n), npow;
    mpz_pow_ui(npow.get_mpz_t(), nz.get_mpz_t(), p);
    row.W = round_root_mpz(npow, 1, q);
    mpz_pow_ui(npow.get_mpz_t(), nz.get_mpz_t(), q - p);
    row.H = round_root_mpz(npow, 1, q);
    if (row.H < row.W) std::swap(row.W, row.H);  // alpha = 1/2 rounding guard

    // T = max(2, round(eps(n) * W)) with eps(n) = n^{-1/k}:
    // eps * W = (W^k / n)^{1/k}.
    unsigned k = rule.inverse_root;
    mpz_class wz((long)row.W), wk;
    mpz_pow_ui(wk.get_mpz_t(), wz.get_mpz_t(), k);
    row.T = std::max<std::int64_t>(2, round_root_mpz(wk, nz, k));

    FamilyParams params = family_params(row.W, row.H, row.T);
    auto t0 = std::chrono::steady_clock::now();
    IncidenceReport report;
    try {
      report = count_family(params, threads);
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep: n=" + std::to_string(n) + ": " + e.what());
    }
    auto t1 = std::chrono::steady_clock::now();

    row.n_effective = params.n();
    row.alpha_effective = params.alpha();
    row.epsilon_effective = params.epsilon().value();
    row.lines = report.total_lines;
    row.incidences = report.total_incidences;
    row.ratio = report.ratio;

    // At the effective parameters the prediction formulas collapse to
    // 6 n^2 / (pi^2 T^3) and 9 n^2 / (pi^2 T^2).
    double n2 = to_double(row.n_effective) * to_double(row.n_effective);
    double pi2 = (double)(kPi * kPi);
    double T = (double)row.T;
    row.predicted_lines = 6.0 * n2 / (pi2 * T * T * T);
    row.predicted_incidences = 9.0 * n2 / (pi2 * T * T);

    CompareResult c = compare(row);
    row.rel_err_lines = c.rel_err_lines;
    row.rel_err_incidences = c.rel_err_incidences;
    row.rel_err_ratio_vs_c = c.rel_err_ratio_vs_c;
    row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace latinc
