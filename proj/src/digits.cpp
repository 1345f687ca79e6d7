#include "exactn/digits.hpp"

namespace exactn {

namespace detail {

Int nearest_multiple_index(const Int& u, const Int& q) {
  // s = floor((u + (q-1)/2) / q); then u - s*q lies in [-(q-1)/2, (q-1)/2].
  Int half = (q - 1) / 2;
  Int s;
  Int shifted = u + half;
  mpz_fdiv_q(s.get_mpz_t(), shifted.get_mpz_t(), q.get_mpz_t());
  return s;
}

}  // namespace detail

static void check_radix(const Int& q, digit_mode mode) {
  if (q < 2) throw std::domain_error("digit radix must be >= 2");
  if (mode == digit_mode::centered && mpz_even_p(q.get_mpz_t()))
    throw std::domain_error("centered digits require an odd radix");
}

digit_vector encode(const Int& x, const Int& q, int d, digit_mode mode) {
  check_radix(q, mode);
  if (d < 1) throw std::domain_error("encode: length must be >= 1");
  Int qd = pow_int(q, static_cast<unsigned long>(d));
  if (mode == digit_mode::standard) {
    if (x < 0 || x >= qd) throw std::domain_error("encode: value out of standard range");
  } else {
    Int half = (qd - 1) / 2;
    if (x < -half || x > half) throw std::domain_error("encode: value out of centered range");
  }

  digit_vector v;
  v.digits.reserve(d);
  v.radix = q;
  v.mode = mode;
  Int rest = x;
  Int half = (q - 1) / 2;
  for (int j = 0; j < d; ++j) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), rest.get_mpz_t(), q.get_mpz_t());  // r in [0, q)
    if (mode == digit_mode::centered && r > half) r -= q;
    rest = (rest - r) / q;
    v.digits.push_back(r);
  }
  return v;
}

Int decode(const digit_vector& v) {
  Int x = 0;
  for (int j = v.length() - 1; j >= 0; --j) x = x * v.radix + v.digits[j];
  return x;
}

static void check_operands(std::span<const digit_vector> operands) {
  if (operands.empty()) throw std::domain_error("carry: need at least one operand");
  const Int& q = operands.front().radix;
  int d = operands.front().length();
  if (d < 1) throw std::domain_error("carry: empty operands");
  if (Int(static_cast<long>(operands.size())) >= q)
    throw std::domain_error("carry: operand count must be smaller than the radix");
  for (const auto& v : operands) {
    if (v.mode != digit_mode::centered) throw std::domain_error("carry: operands must be centered");
    if (v.radix != q || v.length() != d) throw std::domain_error("carry: mismatched operand shapes");
  }
}

carry_string compute_carry_string(std::span<const digit_vector> operands) {
  check_operands(operands);
  const Int& q = operands.front().radix;
  int d = operands.front().length();

  carry_string s;
  s.operands = static_cast<int>(operands.size());
  s.entries.reserve(d);
  Int prev = 0;
  for (int j = 0; j < d; ++j) {
    Int w = prev;
    for (const auto& v : operands) w += v.digits[j];
    Int sj = detail::nearest_multiple_index(w, q);
    s.entries.push_back(sj);
    prev = sj;
  }
  return s;
}

carry_vector to_carry_vector(const carry_string& s, const Int& q) {
  int d = static_cast<int>(s.entries.size());
  carry_vector vs;
  vs.entries.assign(d + 1, 0);
  for (int j = 0; j < d; ++j) {
    vs.entries[j] -= q * s.entries[j];
    vs.entries[j + 1] += s.entries[j];
  }
  return vs;
}

carry_string reconstruct_carry(std::span<const int> parities,
                               std::span<const digit_vector> visible,
                               const Int& q) {
  if (visible.empty()) throw std::domain_error("reconstruct_carry: need the visible operands");
  int d = visible.front().length();
  if (static_cast<int>(parities.size()) != d)
    throw std::domain_error("reconstruct_carry: parity count must match digit count");
  for (const auto& v : visible)
    if (v.mode != digit_mode::centered || v.radix != q || v.length() != d)
      throw std::domain_error("reconstruct_carry: mismatched operand shapes");

  // In the speaker-free view the hidden operand can move each column sum by
  // at most (q-1)/2 in either direction, so each carry entry has at most two
  // consecutive candidates; the parity picks one.
  carry_string s;
  s.operands = static_cast<int>(visible.size()) + 1;
  s.entries.reserve(d);
  Int prev = 0;
  for (int j = 0; j < d; ++j) {
    Int u = prev;
    for (const auto& v : visible) u += v.digits[j];
    Int alpha = detail::nearest_multiple_index(u, q);
    int want = parities[j] & 1;
    int alpha_parity = mpz_odd_p(alpha.get_mpz_t()) ? 1 : 0;
    Int diff = u - alpha * q;
    Int sj;
    if (alpha_parity == want) {
      sj = alpha;
    } else if (diff < 0) {
      sj = alpha - 1;
    } else if (diff > 0) {
      sj = alpha + 1;
    } else {
      // u sits exactly on alpha*q: the hidden operand cannot change the
      // carry, so a mismatched parity is unsatisfiable.
      throw carry_contradiction("reconstruct_carry: parity impossible at position " +
                                std::to_string(j));
    }
    s.entries.push_back(sj);
    prev = sj;
  }
  return s;
}

}  // namespace exactn
