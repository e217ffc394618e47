#include "eqgeo/bigint.hpp"

#include <cctype>
#include <stdexcept>

#include "eqgeo/errors.hpp"

namespace eqgeo {

std::int64_t to_int64(const BigInt& v) {
  static const BigInt lo = std::numeric_limits<std::int64_t>::min();
  static const BigInt hi = std::numeric_limits<std::int64_t>::max();
  if (v < lo || v > hi) throw std::overflow_error("integer does not fit in 64 bits: " + to_string(v));
  return static_cast<std::int64_t>(v);
}

BigInt parse_bigint(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) throw ValidationError("expected an integer, got '" + std::string(text) + "'");
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(text[pos])))
      throw ValidationError("expected an integer, got '" + std::string(text) + "'");
    value = value * 10 + (text[pos] - '0');
  }
  return negative ? BigInt(-value) : value;
}

std::string to_string(const BigInt& v) { return v.str(); }

BigInt floor_mod(const BigInt& a, const BigInt& m) {
  BigInt mm = m < 0 ? BigInt(-m) : m;
  BigInt r = a % mm;
  if (r < 0) r += mm;
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt x = a < 0 ? BigInt(-a) : a;
  BigInt y = b < 0 ? BigInt(-b) : b;
  while (y != 0) {
    BigInt t = x % y;
    x = y;
    y = t;
  }
  return x;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  BigInt g = gcd(a, b);
  BigInt r = (a / g) * b;
  return r < 0 ? BigInt(-r) : r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("64-bit addition overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("64-bit multiplication overflow");
  return r;
}

}  // namespace eqgeo
