#pragma once

// Exact positional arithmetic: standard and centered base-q digit vectors,
// carry strings and carry vectors of multi-operand centered additions, and
// carry reconstruction from parities plus all-but-one operand.

#include <span>
#include <stdexcept>
#include <vector>

#include "exactn/numbers.hpp"

namespace exactn {

enum class digit_mode { standard, centered };

// digits[j] multiplies q^j, so decode(v) = sum_j digits[j] * q^j.
// standard: every digit in [0, q). centered: q odd, every digit in
// [-(q-1)/2, (q-1)/2].
struct digit_vector {
  std::vector<Int> digits;
  Int radix;
  digit_mode mode = digit_mode::standard;

  int length() const { return static_cast<int>(digits.size()); }
};

// Per-position carries of a t-operand centered addition (length d), together
// with the operand count that bounds them: |entries[j]| <= t - 1.
struct carry_string {
  std::vector<Int> entries;
  int operands = 0;
};

// sum_j s_j (e_{j+1} - q e_j), length d + 1. Decodes to 0 in base q.
struct carry_vector {
  std::vector<Int> entries;
};

// Raised by reconstruct_carry when the parities are impossible for every
// value of the hidden operand.
struct carry_contradiction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Representable ranges: standard 0 <= x < q^d, centered |x| <= (q^d - 1) / 2.
// d >= 1; centered mode requires odd q. Out-of-range x or even q in centered
// mode raise std::domain_error.
digit_vector encode(const Int& x, const Int& q, int d, digit_mode mode);

// Exact inverse of encode on the representable range; linear in the digits.
Int decode(const digit_vector& v);

// Carry string of sum(operands): all operands centered with one q (odd) and
// one d, and t = operands.size() < q. Writing w = sum of the digit rows,
// s_1 is the unique integer with w_1 in [s_1 q - (q-1)/2, s_1 q + (q-1)/2]
// and s_j continues the induction on w_j + s_{j-1}. Then
// w + to_carry_vector(s, q) = encode(sum_i decode(operand_i), q, d+1, centered).
carry_string compute_carry_string(std::span<const digit_vector> operands);

carry_vector to_carry_vector(const carry_string& s, const Int& q);

// Reconstructs the full carry string of a t-operand centered addition from
// the carry parities and every operand but one. The hidden operand may sit at
// any position; only the others' digit sum matters.
carry_string reconstruct_carry(std::span<const int> parities,
                               std::span<const digit_vector> visible,
                               const Int& q);

namespace detail {
// The unique s with u - s*q in [-(q-1)/2, (q-1)/2], q odd.
Int nearest_multiple_index(const Int& u, const Int& q);
}  // namespace detail

}  // namespace exactn
