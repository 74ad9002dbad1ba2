#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace provlab {

// Arbitrary-precision natural. All arithmetic in this project is over
// naturals; subtraction is never used without a guard.
using Nat = boost::multiprecision::cpp_int;

inline unsigned long bitlen(const Nat& x) {
  if (x == 0) return 0;
  return boost::multiprecision::msb(x) + 1;
}

inline Nat pow2(unsigned long e) {
  Nat r = 1;
  return r << e;
}

// Number of base-64 symbols in a sentinel-prefixed code: a code has the
// form 64^k + d with d < 64^k, so k is recoverable from the bit length.
inline unsigned long len64(const Nat& x) {
  if (x == 0) return 0;
  return (bitlen(x) - 1) / 6;
}

inline unsigned symAt64(const Nat& x, unsigned long k, unsigned long i) {
  // symbol i (0-based from the front) of a k-symbol code
  Nat t = x >> (6 * (k - 1 - i));
  return static_cast<unsigned>(t & 63);
}

inline bool fitsUnsignedLong(const Nat& x) {
  return x <= Nat(std::numeric_limits<unsigned long long>::max());
}

inline unsigned long long toULL(const Nat& x) {
  return static_cast<unsigned long long>(x);
}

inline std::string toHex(const Nat& x) {
  if (x == 0) return "0";
  std::string s;
  Nat v = x;
  static const char* digits = "0123456789abcdef";
  while (v > 0) {
    s.push_back(digits[static_cast<unsigned>(v & 15)]);
    v >>= 4;
  }
  return std::string(s.rbegin(), s.rend());
}

}  // namespace provlab
