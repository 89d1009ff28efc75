#include "latinc/rational.hpp"

namespace latinc {

Rat64 operator-(const Rat64& a, const Rat64& b) {
  __int128 n = (__int128)a.num * b.den - (__int128)b.num * a.den;
  __int128 d = (__int128)a.den * b.den;
  __int128 x = n < 0 ? -n : n, y = d;
  while (x != 0) { __int128 t = y % x; y = x; x = t; }
  if (y > 1) { n /= y; d /= y; }
  if (n < INT64_MIN || n > INT64_MAX || d > INT64_MAX)
    throw std::overflow_error("Rat64: difference does not fit 64 bits");
  return Rat64((std::int64_t)n, (std::int64_t)d);
}

Rat64 parse_rational(const std::string& text) {
  std::size_t slash = text.find('/');
  try {
    std::size_t pos = 0;
    if (slash == std::string::npos) {
      std::int64_t v = std::stoll(text, &pos);
      if (pos != text.size()) throw std::invalid_argument(text);
      return Rat64(v, 1);
    }
    std::int64_t num = std::stoll(text.substr(0, slash), &pos);
    if (pos != slash) throw std::invalid_argument(text);
    std::int64_t den = std::stoll(text.substr(slash + 1), &pos);
    if (pos != text.size() - slash - 1) throw std::invalid_argument(text);
    return Rat64(num, den);
  } catch (const std::overflow_error&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_rational: expected p/q, got '" + text +
                                "'");
  }
}

}  // namespace latinc
