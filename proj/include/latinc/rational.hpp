#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace latinc {

// Small exact rational on int64. Used for quantities that must never pass
// through floating point: CLI alpha values, epsilon = T/W, and the
// linear-term/deviation fields of partial totient records. Not a general
// bignum fraction; operands are expected to stay far below 2^63.
struct Rat64 {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat64() = default;
  Rat64(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rat64: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  double value() const { return double(num) / double(den); }

  friend bool operator==(const Rat64&, const Rat64&) = default;

  // a/b < c/d  <=>  a*d < c*b   (denominators positive)
  friend bool operator<(const Rat64& a, const Rat64& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator<=(const Rat64& a, const Rat64& b) {
    return (__int128)a.num * b.den <= (__int128)b.num * a.den;
  }

  friend Rat64 operator-(const Rat64& a, const Rat64& b);

  Rat64 abs() const { return num < 0 ? Rat64(-num, den) : *this; }

  std::string str() const {
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

Rat64 operator-(const Rat64& a, const Rat64& b);

// Parses "p/q" or a bare integer "p". Throws std::invalid_argument on junk.
Rat64 parse_rational(const std::string& text);

}  // namespace latinc
