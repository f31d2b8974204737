#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace projsum {

// All set sizes and projection sums are exact 64-bit integers. Arithmetic
// that could wrap goes through these helpers; overflow raises instead of
// wrapping.
using Int = long long;

class overflow_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class invalid_argument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Int ck_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r))
    throw overflow_error("integer overflow in addition");
  return r;
}

inline Int ck_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r))
    throw overflow_error("integer overflow in subtraction");
  return r;
}

inline Int ck_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r))
    throw overflow_error("integer overflow in multiplication");
  return r;
}

inline Int ck_pow(Int base, int exp) {
  if (base < 0 || exp < 0) throw invalid_argument("ck_pow: negative input");
  Int r = 1;
  for (int k = 0; k < exp; ++k) r = ck_mul(r, base);
  return r;
}

// base^exp, but saturating at cap+1 instead of overflowing. Used for the
// exact integer K-search in the (K, i, R) decomposition.
inline Int pow_capped(Int base, int exp, Int cap) {
  Int r = 1;
  for (int k = 0; k < exp; ++k) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
    if (r > cap) return cap + 1;
  }
  return r;
}

}  // namespace projsum
