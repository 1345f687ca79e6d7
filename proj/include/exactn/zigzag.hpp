#pragma once

// Exact combinatorics behind the carry-parity probability: Euler zigzag
// numbers, Eulerian numbers (standard and type B), the Irwin-Hall CDF, and
// the protocol constant c_k. Everything here is exact rational except the
// final logarithm inside c_k.

#include <vector>

#include "exactn/numbers.hpp"

namespace exactn {

// E_0..E_n by the boustrophedon recurrence (1, 1, 1, 2, 5, 16, 61, ...).
std::vector<Int> zigzag_numbers(int n);

Int factorial(int n);
Int binomial(int n, int k);

// <k, l>: permutations of [k] with l descents, 1 <= k, 0 <= l <= k - 1,
// via the alternating binomial sum.
Int eulerian(int k, int l);

// <B_k, l>: signed permutations of [k] with l descents, counting a descent at
// index 0 when the first entry is negative; 0 <= l <= k.
Int eulerian_b(int k, int l);

// CDF of the sum of k independent uniform [0,1] variables, exact for
// rational x in [0, k].
Rat irwin_hall_cdf(int k, const Rat& x);

// Limiting probability that one carry entry of an n-operand centered
// addition is even: 1/2 + E_n / (2 n!), n >= 1.
Rat prob_all_even_limit(int n);

// The same probability derived along the independent route: the four-case
// alternating sums of Irwin-Hall CDF values at integer or half-integer
// points, split on n mod 4.
Rat prob_all_even_fourcase(int n);

// Exact probability that the first carry entry is even when n uniform
// centered base-q digits are added (n < q, q odd). Census by convolution.
Rat prob_first_carry_even_exact(int n, const Int& q);

struct ck_value {
  Rat inner;              // 1/2 + E_{k-1} / (2 (k-1)!), exact
  long double ck;         // 1 - log2(1 / inner)
  long double asymptote;  // (2 / ln 2) (2 / pi)^k
};
ck_value c_constant(int k);  // k >= 3

// Frozen tables with the row-sum invariants Sum_l <k,l> = k! and
// Sum_l <B_k,l> = 2^k k!.
struct zigzag_table {
  int max_index = 0;
  std::vector<Int> zigzag;                  // E_0..E_max
  std::vector<std::vector<Int>> eulerian;   // row k has k entries (row 0 = {1})
  std::vector<std::vector<Int>> eulerian_b; // row k has k + 1 entries
};
zigzag_table build_zigzag_table(int max_index);

// CSV rows: index, E, factorial, limit probability, c_{index+1}.
std::string zigzag_table_csv(const zigzag_table& t);

}  // namespace exactn
