#pragma once

#include <cstdint>
#include <vector>

#include "latinc/incidence.hpp"
#include "latinc/int128.hpp"
#include "latinc/rational.hpp"

namespace latinc {

// Reference constants. c_main is evaluated from 3 * (3/(4 pi^2))^{1/3};
// the equivalent closed form 3^{4/3} / (pi^{2/3} 2^{2/3}) agrees to full
// double precision (asserted in tests). c_upper echoes the best published
// upper-bound constant and is output as a reference line only.
double c_main();        // ~1.2706962860
double c_main_alt();    // same constant via the other closed form
double c_pach_toth();   // (3/(4 pi^2))^{1/3} ~ 0.4235654287
inline constexpr double kUpperBoundConstant = 2.44;

struct AsymptoticPrediction {
  double n = 0.0;
  double alpha = 0.0;
  double epsilon = 0.0;
  double predicted_lines = 0.0;       // 6 n^{2-3a} / (pi^2 eps^3)
  double predicted_incidences = 0.0;  // 9 n^{2-2a} / (pi^2 eps^2)
  double c_main = 0.0;
  double c_pach_toth = 0.0;
  double c_upper = 0.0;
};

// n > 1, 1/3 <= alpha <= 1/2, 0 < epsilon < 1; throws std::invalid_argument.
AsymptoticPrediction predict(double n, double alpha, double epsilon);

// round(v^{1/k}) and round((num/den)^{1/k}), decided by exact integer
// comparisons (ties round up). Used to derive W, H, T without ever passing
// n^alpha through floating point.
std::int64_t round_root(i128 v, unsigned k);
std::int64_t round_root_rational(i128 num, i128 den, unsigned k);

// epsilon(n) = n^{-1/inverse_root}. The default 5 satisfies eps = o(1) and
// eps = omega(n^{-alpha}) for every alpha in [1/3, 1/2].
struct EpsilonRule {
  unsigned inverse_root = 5;
};

struct SweepRow {
  std::int64_t W = 0, H = 0, T = 0;
  i128 n_effective = 0;
  double alpha_effective = 0.0;
  double epsilon_effective = 0.0;    // T/W
  i128 lines = 0;
  i128 incidences = 0;
  double ratio = 0.0;
  double predicted_lines = 0.0;
  double predicted_incidences = 0.0;
  double rel_err_lines = 0.0;
  double rel_err_incidences = 0.0;
  double rel_err_ratio_vs_c = 0.0;   // vs c_main
  double wall_ms = 0.0;              // diagnostics only; never in data output
};

// One row per requested n, ascending. W = round(n^alpha), H = round(n^{1-alpha}),
// T = max(2, round(eps(n) * W)); counts from count_family; predictions
// evaluated at the effective (n, alpha, eps), which collapse to
// 6 n_eff^2 / (pi^2 T^3) and 9 n_eff^2 / (pi^2 T^2).
std::vector<SweepRow> sweep(Rat64 alpha, EpsilonRule rule,
                            std::vector<std::int64_t> n_list, int threads = 1);

struct CompareResult {
  double rel_err_lines = 0.0;
  double rel_err_incidences = 0.0;
  double rel_err_ratio_vs_c = 0.0;
};

// Relative errors of a row against its predictions. Throws
// std::domain_error when a predicted value is zero.
CompareResult compare(const SweepRow& row);

}  // namespace latinc
