#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <string_view>

namespace eqgeo {

using BigInt = boost::multiprecision::cpp_int;

// Throws std::overflow_error when v does not fit.
std::int64_t to_int64(const BigInt& v);

// Accepts an optional sign followed by decimal digits.
BigInt parse_bigint(std::string_view text);

std::string to_string(const BigInt& v);

// Result lies in [0, |m|) for m != 0.
BigInt floor_mod(const BigInt& a, const BigInt& m);

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace eqgeo
