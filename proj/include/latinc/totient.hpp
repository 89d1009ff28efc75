#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "latinc/int128.hpp"
#include "latinc/rational.hpp"

namespace latinc {

// Sieved totient data. Immutable after construction; safe to share across
// threads. Storage is 5 bytes per entry (uint32 phi + uint8 omega), so a
// limit of 1e8 costs ~500 MB; callers size accordingly.
struct TotientTables {
  std::uint32_t limit = 0;
  std::vector<std::uint32_t> phi;   // phi[j] = Euler totient, 1 <= j <= limit
  std::vector<std::uint8_t> omega;  // omega[j] = number of distinct prime divisors
};

// Linear sieve. Throws std::invalid_argument for n == 0.
TotientTables build_tables(std::uint32_t n);

// Envelope constant for all stated bounds below. The summatory formulas
// carry O(.) error terms; K = 5 passes every tested size with a wide
// margin. A config knob, not a theorem.
inline constexpr double kEnvelopeK = 5.0;

// pi as an exact rational, correct to 100 significant digits. Main terms
// built from it are accurate far beyond any residual we report.
const mpq_class& pi_rational();
const mpq_class& pi_squared_rational();

// One summatory check: exact value, high-precision main term, their exact
// difference, and the K * shape(n) envelope the residual is measured against.
struct SummatoryResidual {
  std::uint64_t n = 0;
  int moment = 0;        // 0, 1, 2 for sums of j^moment * phi(j); -1 for phi(j)/j
  mpq_class exact;
  mpq_class main_term;
  mpq_class residual;    // exact - main_term, sign preserved
  double stated_bound = 0.0;

  bool within_bound() const;
};

// Sum of j^moment * phi(j) for j <= n. Main terms 3n^2/pi^2, 2n^3/pi^2,
// 3n^4/(2 pi^2); stated bound K * n^{moment+1} * ln n.
SummatoryResidual summatory_phi(const TotientTables& tables, std::uint32_t n,
                                int moment);

// Sum of phi(j)/j for j <= n, as an exact rational (the reduced fraction has
// ~n/5 digits at n = 1e6; summation is a divide-and-conquer tree).
// Main term 6n/pi^2; stated bound K * sqrt(n).
SummatoryResidual summatory_phi_over_j(const TotientTables& tables,
                                       std::uint32_t n);

// Totient and distinct-prime count by trial division, for arguments outside
// any sieve. n >= 1.
std::int64_t phi_of(std::int64_t n);
int omega_of(std::int64_t n);

// Sum of s < k*n with gcd(s, n) = 1, by direct enumeration. Verifies the
// pairing identity sum = k^2 * n * phi(n) / 2 and throws std::logic_error
// on mismatch (never expected). n > 1, k >= 1.
i128 coprime_sum(std::int64_t n, std::int64_t k);

// Count of 1 <= a <= k*n coprime to n, by enumeration; verified against
// k * phi(n). n > 1, k >= 1.
std::int64_t coprime_count_upto(std::int64_t n, std::int64_t k);

// phi_m(n) = |{1 <= a <= m : gcd(a, n) = 1}| two ways.
std::int64_t coprime_upto_scan(std::int64_t m, std::int64_t n);
std::int64_t coprime_upto_mobius(std::int64_t m, std::int64_t n);

// Squarefree divisors of n with their Moebius signs, in increasing order.
std::vector<std::pair<std::int64_t, int>> squarefree_divisors_mu(std::int64_t n);
std::int64_t coprime_upto_mobius(
    const std::vector<std::pair<std::int64_t, int>>& divisors_mu,
    std::int64_t m);

struct PartialTotient {
  std::int64_t exact = 0;  // phi_m(n)
  Rat64 linear_term;       // (m/n) * phi(n)
  Rat64 deviation;         // exact - linear_term
  std::int64_t envelope = 0;  // 2^{w(n)-1}
};

// phi_m(n) with its deviation from the linear term. Uses the gcd scan for
// small m and inclusion-exclusion otherwise; the two routes agree exactly
// (cross-checked in tests). m >= 1, n > 1.
PartialTotient partial_totient(std::int64_t m, std::int64_t n);

struct TwoPowOmegaSum {
  i128 sum = 0;
  // sum / (m loglog m), or / (m^2 loglog m) when weighted. Reported for
  // growth inspection only; the O(.) itself is not assertable.
  double growth_ratio = 0.0;
};

// Sum of 2^{w(r)} (or r * 2^{w(r)} when weighted) for 2 <= r <= m.
TwoPowOmegaSum sum_two_pow_omega(const TotientTables& tables, std::uint32_t m,
                                 bool weighted);

}  // namespace latinc
