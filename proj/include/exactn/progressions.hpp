#pragma once

// Polynomial-progression predicates over Z. A k-tuple is a degree-m
// progression when one polynomial of degree <= m interpolates it at
// positions 1..k; the canonical test is the vanishing of the alternating
// binomial sums over every contiguous window of length m + 2.

#include <span>
#include <vector>

#include "exactn/numbers.hpp"

namespace exactn {

// L(a_0, ..., a_{m+1}) = sum_i (-1)^i C(m+1, i) a_i, window length m + 2 >= 2.
Int l_operator(std::span<const Int> window);

// True iff terms are values of a single degree-<= m polynomial at 1..k.
// Vacuously true when k <= m + 1.
bool is_kpp(std::span<const Int> terms, int degree);

// Coordinatewise is_kpp; all terms must share one dimension.
bool is_kvecpp(std::span<const std::vector<Int>> terms, int degree);

bool is_trivial(std::span<const Int> terms);
bool is_trivial_vec(std::span<const std::vector<Int>> terms);

}  // namespace exactn
