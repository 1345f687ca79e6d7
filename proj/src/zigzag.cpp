#include "exactn/zigzag.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "exactn/digits.hpp"

namespace exactn {

std::vector<Int> zigzag_numbers(int n) {
  if (n < 0) throw std::domain_error("zigzag_numbers: n must be >= 0");
  // Boustrophedon transform of (1, 0, 0, ...): row r is built from the
  // reversal of row r-1, and E_r is the last entry.
  std::vector<Int> out;
  out.reserve(n + 1);
  std::vector<Int> row{1};
  out.push_back(1);
  for (int r = 1; r <= n; ++r) {
    std::vector<Int> next(r + 1);
    next[0] = 0;
    for (int j = 1; j <= r; ++j) next[j] = next[j - 1] + row[r - j];
    out.push_back(next[r]);
    row = std::move(next);
  }
  return out;
}

Int factorial(int n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Int eulerian(int k, int l) {
  if (k < 1 || l < 0 || l > k - 1) throw std::domain_error("eulerian: index out of range");
  Int acc = 0;
  for (int j = 0; j <= l; ++j) {
    Int term = binomial(k + 1, j) * pow_int(Int(l - j + 1), static_cast<unsigned long>(k));
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

Int eulerian_b(int k, int l) {
  if (k < 1 || l < 0 || l > k) throw std::domain_error("eulerian_b: index out of range");
  Int acc = 0;
  for (int j = 0; j <= l; ++j) {
    Int term = binomial(k + 1, j) * pow_int(Int(2 * (l - j) + 1), static_cast<unsigned long>(k));
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

Rat irwin_hall_cdf(int k, const Rat& x) {
  if (k < 1) throw std::domain_error("irwin_hall_cdf: k must be >= 1");
  if (x < 0 || x > k) throw std::domain_error("irwin_hall_cdf: x outside [0, k]");
  Int fl = floor_rat(x);
  Rat acc = 0;
  for (Int j = 0; j <= fl; ++j) {
    Rat term = pow_rat(x - Rat(j), static_cast<unsigned long>(k));
    term *= Rat(binomial(k, static_cast<int>(j.get_si())));
    if (mpz_even_p(j.get_mpz_t()))
      acc += term;
    else
      acc -= term;
  }
  return acc / Rat(factorial(k));
}

Rat prob_all_even_limit(int n) {
  if (n < 1) throw std::domain_error("prob_all_even_limit: n must be >= 1");
  Int e = zigzag_numbers(n)[n];
  return make_rat(1, 2) + make_rat(e, 2 * factorial(n));
}

Rat prob_all_even_fourcase(int n) {
  if (n < 1) throw std::domain_error("prob_all_even_fourcase: n must be >= 1");
  // Shift each summand by 1/2 and read the event off the Irwin-Hall CDF.
  // Which unit (or half-unit) windows of [0, n] land in the event depends
  // on n mod 4; each case telescopes into an alternating sum of CDF values.
  auto alternating_integer_sum = [&](void) {
    // F(n-1) - F(n-2) + ... +- F(1), leading sign +.
    Rat acc = 0;
    int sign = 1;
    for (int j = n - 1; j >= 1; --j) {
      Rat f = irwin_hall_cdf(n, Rat(j));
      acc += sign > 0 ? f : -f;
      sign = -sign;
    }
    return acc;
  };
  auto alternating_half_sum = [&](void) {
    // F(n-1/2) - F(n-3/2) + ... +- F(1/2), leading sign +.
    Rat acc = 0;
    int sign = 1;
    for (int i = 0; i < n; ++i) {
      Rat point = Rat(2 * (n - i) - 1, 2);
      point.canonicalize();
      Rat f = irwin_hall_cdf(n, point);
      acc += sign > 0 ? f : -f;
      sign = -sign;
    }
    return acc;
  };
  switch (n % 4) {
    case 3: return alternating_integer_sum();
    case 1: return Rat(1) - alternating_integer_sum();
    case 2: return alternating_half_sum();
    default: return Rat(1) - alternating_half_sum();
  }
}

Rat prob_first_carry_even_exact(int n, const Int& q) {
  if (n < 1) throw std::domain_error("prob_first_carry_even_exact: n must be >= 1");
  if (mpz_even_p(q.get_mpz_t()) || Int(n) >= q)
    throw std::domain_error("prob_first_carry_even_exact: need odd q > n");
  if (!q.fits_slong_p()) throw std::domain_error("prob_first_carry_even_exact: q too large to census");
  long ql = q.get_si();
  long half = (ql - 1) / 2;

  // counts[v] = number of digit tuples with sum v - n*half.
  std::vector<Int> counts{1};
  for (int i = 0; i < n; ++i) {
    std::vector<Int> next(counts.size() + static_cast<std::size_t>(ql) - 1, 0);
    for (std::size_t v = 0; v < counts.size(); ++v)
      if (counts[v] != 0)
        for (long dgt = 0; dgt < ql; ++dgt) next[v + dgt] += counts[v];
    counts = std::move(next);
  }

  Int even_total = 0;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    Int sum = Int(static_cast<long>(v)) - Int(n) * half;
    Int carry = detail::nearest_multiple_index(sum, q);
    if (mpz_even_p(carry.get_mpz_t())) even_total += counts[v];
  }
  return make_rat(even_total, pow_int(q, static_cast<unsigned long>(n)));
}

ck_value c_constant(int k) {
  if (k < 3) throw std::domain_error("c_constant: k must be >= 3");
  ck_value v;
  v.inner = prob_all_even_limit(k - 1);
  v.ck = 1.0L - std::log2(1.0L / to_long_double(v.inner));
  long double two_over_pi = 2.0L / std::numbers::pi_v<long double>;
  v.asymptote = (2.0L / std::numbers::ln2_v<long double>) * std::pow(two_over_pi, static_cast<long double>(k));
  return v;
}

zigzag_table build_zigzag_table(int max_index) {
  zigzag_table t;
  t.max_index = max_index;
  t.zigzag = zigzag_numbers(max_index);
  t.eulerian.resize(max_index + 1);
  t.eulerian_b.resize(max_index + 1);
  t.eulerian[0] = {Int(1)};
  t.eulerian_b[0] = {Int(1)};
  for (int k = 1; k <= max_index; ++k) {
    for (int l = 0; l <= k - 1; ++l) t.eulerian[k].push_back(eulerian(k, l));
    for (int l = 0; l <= k; ++l) t.eulerian_b[k].push_back(eulerian_b(k, l));
  }
  return t;
}

std::string zigzag_table_csv(const zigzag_table& t) {
  std::ostringstream out;
  out << "index,zigzag,factorial,limit_probability,ck\n";
  for (int n = 0; n <= t.max_index; ++n) {
    out << n << "," << t.zigzag[n].get_str() << "," << factorial(n).get_str() << ",";
    if (n >= 1) out << rat_string(prob_all_even_limit(n));
    out << ",";
    if (n >= 2) out << static_cast<double>(c_constant(n + 1).ck);
    out << "\n";
  }
  return out.str();
}

}  // namespace exactn
