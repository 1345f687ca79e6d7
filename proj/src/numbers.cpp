#include "exactn/numbers.hpp"

#include <cmath>
#include <stdexcept>

namespace exactn {

Int pow_int(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

unsigned long bit_length(const Int& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

long long ceil_log2(const Int& a) {
  if (a < 1) throw std::domain_error("ceil_log2: alphabet size must be >= 1");
  if (a == 1) return 0;
  Int am1 = a - 1;
  return static_cast<long long>(bit_length(am1));
}

Int nth_root_ceil(const Int& n, unsigned long d, const Int& lo) {
  if (n < 1 || d < 1 || lo < 1) throw std::domain_error("nth_root_ceil: bad arguments");
  Int q;
  mpz_root(q.get_mpz_t(), n.get_mpz_t(), d);  // floor root
  if (q < lo) q = lo;
  while (pow_int(q, d) < n) ++q;
  return q;
}

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::domain_error("make_rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat pow_rat(const Rat& base, unsigned long exp) {
  Rat r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), exp);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), exp);
  return r;  // already canonical: gcd(p,q)=1 implies gcd(p^e,q^e)=1
}

Int floor_rat(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

namespace {

// Top ~64 bits of x as (mantissa, exponent) with x ~= mant * 2^exp.
std::pair<long double, long> split64(const Int& x) {
  if (x == 0) return {0.0L, 0};
  unsigned long bits = bit_length(x);
  if (bits <= 63) return {static_cast<long double>(mpz_get_d(x.get_mpz_t())), 0};
  unsigned long shift = bits - 63;
  Int top = x >> shift;
  long double mant = static_cast<long double>(mpz_get_ui(top.get_mpz_t()));
  if (top < 0) mant = -mant;
  return {mant, static_cast<long>(shift)};
}

}  // namespace

long double to_long_double(const Rat& x) {
  auto [mn, en] = split64(x.get_num());
  auto [md, ed] = split64(x.get_den());
  return (mn / md) * std::exp2(static_cast<long double>(en - ed));
}

long double log2_int(const Int& x) {
  if (x < 1) throw std::domain_error("log2_int: requires x >= 1");
  auto [m, e] = split64(x);
  return std::log2(m) + static_cast<long double>(e);
}

std::string rat_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

// xoshiro256** — small, fast, and fully specified here so that seeded
// constructions replay identically everywhere.
namespace {
inline std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
inline std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

seeded_rng::seeded_rng(std::uint64_t seed) {
  std::uint64_t s = seed;
  for (auto& w : state_) w = splitmix64(s);
}

std::uint64_t seeded_rng::next_u64() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

Int seeded_rng::below(const Int& bound) {
  if (bound < 1) throw std::domain_error("seeded_rng::below: bound must be >= 1");
  unsigned long bits = bit_length(bound - 1);
  if (bits == 0) return 0;
  unsigned long words = (bits + 63) / 64;
  while (true) {
    Int x = 0;
    for (unsigned long w = 0; w < words; ++w) {
      x <<= 64;
      x |= Int(static_cast<unsigned long>(next_u64()));
    }
    unsigned long excess = words * 64 - bits;
    x >>= excess;
    if (x < bound) return x;
  }
}

Int seeded_rng::between(const Int& lo, const Int& hi) {
  if (lo > hi) throw std::domain_error("seeded_rng::between: empty range");
  return lo + below(hi - lo + 1);
}

double seeded_rng::unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace exactn
