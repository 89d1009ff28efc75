#include "latinc/totient.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>

namespace latinc {

namespace {

// First 100 decimal digits of pi. Fixed constant; nothing here needs more
// precision than residuals at n ~ 1e6, which this exceeds by ~70 orders.
const char* kPiDigits =
    "3"
    "1415926535897932384626433832795028841971"
    "6939937510582097494459230781640628620899"
    "8628034825342117067";

mpq_class make_pi() {
  mpz_class num(kPiDigits);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, std::strlen(kPiDigits) - 1);
  return mpq_class(num, den);
}

mpz_class mpz_from_i128(i128 v) {
  bool neg = v < 0;
  u128 x = neg ? (u128)0 - (u128)v : (u128)v;
  mpz_class hi((unsigned long)(x >> 64));
  mpz_class lo((unsigned long)(x & ~0ULL));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

// Divide-and-conquer sum of phi[j]/j over [lo, hi]. Balanced splitting
// keeps intermediate denominators near the lcm of the subrange instead of
// the full product, which is what makes n = 1e6 run in seconds.
mpq_class phi_over_j_tree(const std::vector<std::uint32_t>& phi,
                          std::uint32_t lo, std::uint32_t hi) {
  if (lo == hi) {
    std::uint32_t g = std::gcd(phi[lo], lo);
    return mpq_class(phi[lo] / g, lo / g);
  }
  std::uint32_t mid = lo + (hi - lo) / 2;
  return phi_over_j_tree(phi, lo, mid) + phi_over_j_tree(phi, mid + 1, hi);
}

}  // namespace

const mpq_class& pi_rational() {
  static const mpq_class pi = make_pi();
  return pi;
}

const mpq_class& pi_squared_rational() {
  static const mpq_class pi2 = pi_rational() * pi_rational();
  return pi2;
}

TotientTables build_tables(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("build_tables: n must be positive");
  TotientTables t;
  t.limit = n;
  t.phi.assign(std::size_t(n) + 1, 0);
  t.omega.assign(std::size_t(n) + 1, 0);
  t.phi[1] = 1;
  std::vector<std::uint32_t> primes;
  std::vector<bool> composite(std::size_t(n) + 1, false);
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      t.phi[i] = i - 1;
      t.omega[i] = 1;
    }
    for (std::uint32_t p : primes) {
      std::uint64_t ip = (std::uint64_t)i * p;
      if (ip > n) break;
      composite[ip] = true;
      if (i % p == 0) {
        t.phi[ip] = t.phi[i] * p;
        t.omega[ip] = t.omega[i];
        break;
      }
      t.phi[ip] = t.phi[i] * (p - 1);
      t.omega[ip] = t.omega[i] + 1;
    }
  }
  return t;
}

bool SummatoryResidual::within_bound() const {
  mpq_class bound(stated_bound);  // exact binary-to-rational conversion
  return abs(residual) <= bound;
}

SummatoryResidual summatory_phi(const TotientTables& tables, std::uint32_t n,
                                int moment) {
  if (n == 0 || n > tables.limit)
    throw std::out_of_range("summatory_phi: n exceeds table limit");
  if (moment < 0 || moment > 2)
    throw std::invalid_argument("summatory_phi: moment must be 0, 1, or 2");

  i128 sum = 0;
  for (std::uint32_t j = 1; j <= n; ++j) {
    i128 term = tables.phi[j];
    for (int m = 0; m < moment; ++m) term *= j;
    sum = checked_add(sum, term);
  }

  SummatoryResidual r;
  r.n = n;
  r.moment = moment;
  r.exact = mpq_class(mpz_from_i128(sum));

  mpz_class np1;  // n^{moment+1}
  mpz_ui_pow_ui(np1.get_mpz_t(), n, (unsigned)moment + 1);
  const mpq_class& pi2 = pi_squared_rational();
  switch (moment) {
    case 0: r.main_term = mpq_class(3 * np1 * n) / pi2; break;
    case 1: r.main_term = mpq_class(2 * np1 * n) / pi2; break;
    case 2: r.main_term = mpq_class(3 * np1 * n) / (2 * pi2); break;
  }
  r.residual = r.exact - r.main_term;
  r.stated_bound = kEnvelopeK * mpz_class(np1).get_d() * std::log((double)n);
  return r;
}

SummatoryResidual summatory_phi_over_j(const TotientTables& tables,
                                       std::uint32_t n) {
  if (n == 0 || n > tables.limit)
    throw std::out_of_range("summatory_phi_over_j: n exceeds table limit");

  SummatoryResidual r;
  r.n = n;
  r.moment = -1;
  r.exact = phi_over_j_tree(tables.phi, 1, n);
  r.main_term = mpq_class(6 * mpz_class(n)) / pi_squared_rational();
  r.residual = r.exact - r.main_term;
  r.stated_bound = kEnvelopeK * std::sqrt((double)n);
  return r;
}

std::int64_t phi_of(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("phi_of: n must be positive");
  std::int64_t result = n, rest = n;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    result -= result / p;
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1) result -= result / rest;
  return result;
}

int omega_of(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("omega_of: n must be positive");
  int count = 0;
  std::int64_t rest = n;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    ++count;
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1) ++count;
  return count;
}

i128 coprime_sum(std::int64_t n, std::int64_t k) {
  if (n <= 1) throw std::invalid_argument("coprime_sum: n must exceed 1");
  if (k < 1) throw std::invalid_argument("coprime_sum: k must be positive");

  // gcd(s, n) depends only on s mod n; one scan of [1, n] covers all blocks.
  std::vector<bool> coprime(n, false);
  for (std::int64_t a = 1; a < n; ++a)
    if (std::gcd(a, n) == 1) coprime[a] = true;

  i128 sum = 0;
  for (std::int64_t s = 1; s < k * n; ++s)
    if (coprime[s % n]) sum = checked_add(sum, s);

  // n * phi(n) is even for n > 1, so the halving below is exact.
  i128 expected = (i128)k * k * n * phi_of(n) / 2;
  if (sum != expected)
    throw std::logic_error("coprime_sum: pairing identity violated");
  return sum;
}

std::int64_t coprime_count_upto(std::int64_t n, std::int64_t k) {
  if (n <= 1) throw std::invalid_argument("coprime_count_upto: n must exceed 1");
  if (k < 1) throw std::invalid_argument("coprime_count_upto: k must be positive");
  std::int64_t count = 0;
  for (std::int64_t a = 1; a <= k * n; ++a)
    if (std::gcd(a % n, n) == 1) ++count;  // gcd(0, n) = n > 1, multiples drop out
  if (count != k * phi_of(n))
    throw std::logic_error("coprime_count_upto: block identity violated");
  return count;
}

std::int64_t coprime_upto_scan(std::int64_t m, std::int64_t n) {
  std::int64_t count = 0;
  for (std::int64_t a = 1; a <= m; ++a)
    if (std::gcd(a, n) == 1) ++count;
  return count;
}

std::vector<std::pair<std::int64_t, int>> squarefree_divisors_mu(
    std::int64_t n) {
  std::vector<std::int64_t> primes;
  std::int64_t rest = n;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    primes.push_back(p);
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1) primes.push_back(rest);

  std::vector<std::pair<std::int64_t, int>> divs{{1, 1}};
  for (std::int64_t p : primes) {
    std::size_t sz = divs.size();
    for (std::size_t i = 0; i < sz; ++i)
      divs.emplace_back(divs[i].first * p, -divs[i].second);
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::int64_t coprime_upto_mobius(
    const std::vector<std::pair<std::int64_t, int>>& divisors_mu,
    std::int64_t m) {
  std::int64_t count = 0;
  for (auto [d, mu] : divisors_mu) count += mu * (m / d);
  return count;
}

std::int64_t coprime_upto_mobius(std::int64_t m, std::int64_t n) {
  return coprime_upto_mobius(squarefree_divisors_mu(n), m);
}

PartialTotient partial_totient(std::int64_t m, std::int64_t n) {
  if (n <= 1) throw std::invalid_argument("partial_totient: n must exceed 1");
  if (m < 1) throw std::invalid_argument("partial_totient: m must be positive");

  PartialTotient r;
  r.exact = m <= 1024 ? coprime_upto_scan(m, n) : coprime_upto_mobius(m, n);
  std::int64_t phi = phi_of(n);
  r.linear_term = Rat64(m * phi, n);
  r.deviation = Rat64(r.exact, 1) - r.linear_term;
  r.envelope = std::int64_t(1) << (omega_of(n) - 1);
  return r;
}

TwoPowOmegaSum sum_two_pow_omega(const TotientTables& tables, std::uint32_t m,
                                 bool weighted) {
  if (m < 2) throw std::invalid_argument("sum_two_pow_omega: m must be >= 2");
  if (m > tables.limit)
    throw std::out_of_range("sum_two_pow_omega: m exceeds table limit");

  i128 sum = 0;
  for (std::uint32_t r = 2; r <= m; ++r) {
    i128 term = (i128)1 << tables.omega[r];
    if (weighted) term *= r;
    sum = checked_add(sum, term);
  }
  TwoPowOmegaSum result;
  result.sum = sum;
  double shape = (double)m * std::log(std::log((double)m));
  if (weighted) shape *= (double)m;
  result.growth_ratio = shape > 0 ? to_double(sum) / shape : 0.0;
  return result;
}

}  // namespace latinc
