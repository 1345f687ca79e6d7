#pragma once

// Arbitrary-precision integer and rational substrate used by every module.
// All core values are exact; floating point appears only in parameter search
// and when a logarithm is finally evaluated for reporting.

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace exactn {

using Int = mpz_class;
using Rat = mpq_class;

// b^e for e >= 0.
Int pow_int(const Int& base, unsigned long exp);

// Number of bits of |x|, i.e. floor(log2 x) + 1 for x >= 1; 0 for x = 0.
unsigned long bit_length(const Int& x);

// ceil(log2 a) for a >= 1. This is the bit cost of one symbol from an
// alphabet of size a (0 for a unary alphabet).
long long ceil_log2(const Int& a);

// Smallest q >= lo with q^d >= n (d >= 1, n >= 1, lo >= 1).
Int nth_root_ceil(const Int& n, unsigned long d, const Int& lo = 1);

// Rational p/q reduced to lowest terms with q > 0.
Rat make_rat(const Int& num, const Int& den);

Rat pow_rat(const Rat& base, unsigned long exp);

// floor of a rational.
Int floor_rat(const Rat& x);

// Rounds to roughly 64 significant bits; exact for values that fit.
long double to_long_double(const Rat& x);
long double log2_int(const Int& x);  // requires x >= 1

// "p/q" (or "p" when q = 1); the exact serialization used in reports.
std::string rat_string(const Rat& x);

// Deterministic uniform draws. Thin xorshift-free wrapper around a fixed
// 64-bit generator so results are identical across platforms.
class seeded_rng {
 public:
  explicit seeded_rng(std::uint64_t seed);
  std::uint64_t next_u64();
  // Uniform value in [0, bound), bound >= 1, via chunked rejection sampling.
  Int below(const Int& bound);
  // Uniform value in [lo, hi] inclusive.
  Int between(const Int& lo, const Int& hi);
  // Uniform double in [0, 1) with 53 random bits.
  double unit();

 private:
  std::uint64_t state_[4];
};

}  // namespace exactn
