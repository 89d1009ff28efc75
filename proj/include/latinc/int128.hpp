#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace latinc {

// Counts and partial products can exceed 64 bits (incidence totals reach
// ~1e16 in sweeps, intermediate A'_k products go further), so every
// accumulator in a counting path is 128-bit and every multiply/add is
// overflow-checked. Overflow is a hard failure, never a wrap.
using i128 = __int128;
using u128 = unsigned __int128;

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("latinc: 128-bit addition overflow");
  return r;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("latinc: 128-bit multiplication overflow");
  return r;
}

// Floor/ceil division for possibly-negative operands; b != 0.
inline i128 floor_div(i128 a, i128 b) {
  i128 q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

inline i128 ceil_div(i128 a, i128 b) {
  i128 q = a / b, r = a % b;
  return (r != 0 && ((r < 0) == (b < 0))) ? q + 1 : q;
}

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 x = neg ? (u128)0 - (u128)v : (u128)v;
  char buf[48];
  int i = 48;
  while (x > 0) {
    buf[--i] = char('0' + int(x % 10));
    x /= 10;
  }
  if (neg) buf[--i] = '-';
  return std::string(buf + i, buf + 48);
}

inline double to_double(i128 v) { return static_cast<double>(v); }

}  // namespace latinc
