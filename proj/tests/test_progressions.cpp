#include <doctest.h>

#include <vector>

#include "exactn/progressions.hpp"

using namespace exactn;

namespace {

std::vector<Int> ints(std::initializer_list<long> xs) {
  std::vector<Int> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Independent oracle: fit the exact interpolating polynomial through the
// first m+1 points with Lagrange weights, then verify the remaining points.
bool fits_degree_at_most(const std::vector<Int>& terms, int m) {
  int k = static_cast<int>(terms.size());
  if (k <= m + 1) return true;
  auto eval_interpolant = [&](long x) {
    Rat acc = 0;
    for (int i = 0; i <= m; ++i) {
      Rat weight = 1;
      for (int j = 0; j <= m; ++j) {
        if (j == i) continue;
        weight *= make_rat(x - (j + 1), i - j);
      }
      acc += Rat(terms[i]) * weight;
    }
    return acc;
  };
  for (int x = m + 2; x <= k; ++x)
    if (eval_interpolant(x) != Rat(terms[x - 1])) return false;
  return true;
}

// Degree of agreement on an arbitrary index subset: the order-(m+1) divided
// difference of the points ((i_0, y_0), ...) vanishes iff a degree-<= m
// polynomial passes through all of them.
bool subset_fits_degree(const std::vector<int>& positions, const std::vector<Int>& values, int m) {
  int n = static_cast<int>(positions.size());
  std::vector<Rat> dd;
  for (const Int& v : values) dd.emplace_back(v);
  for (int order = 1; order < n; ++order)
    for (int i = 0; i + order < n; ++i)
      dd[i] = (dd[i + 1] - dd[i]) / make_rat(positions[i + order] - positions[i], 1);
  (void)m;
  return dd[0] == 0;  // callers pass subsets of size m + 2
}

}  // namespace

TEST_CASE("the alternating binomial sum on small windows") {
  CHECK(l_operator(ints({1, 3, 5})) == 0);
  CHECK(l_operator(ints({1, 4, 9, 16})) == 0);
  CHECK(l_operator(ints({1, 2, 4})) == 1);
}

TEST_CASE("progression predicate on the documented cases") {
  CHECK(is_kpp(ints({5, 5, 5, 5, 5}), 1));
  CHECK_FALSE(is_kpp(ints({1, 2, 4, 8}), 2));
  CHECK(is_kpp(ints({17, 3, 9}), 2));  // k <= m + 1: promise holds vacuously
}

TEST_CASE("vector progressions test coordinatewise") {
  std::vector<std::vector<Int>> linear, quadratic, single;
  for (long i = 1; i <= 5; ++i) {
    linear.push_back(ints({i, 2 * i}));
    quadratic.push_back(ints({i, i * i}));
  }
  single.push_back(ints({4, -2, 7}));
  CHECK(is_kvecpp(linear, 1));
  CHECK_FALSE(is_kvecpp(quadratic, 1));
  CHECK(is_kvecpp(single, 3));

  std::vector<std::vector<Int>> ragged{ints({1, 2}), ints({1})};
  CHECK_THROWS_AS(is_kvecpp(ragged, 1), std::domain_error);
}

TEST_CASE("triviality means all terms equal") {
  CHECK(is_trivial(ints({7, 7, 7})));
  CHECK_FALSE(is_trivial(ints({1, 2, 3})));
  std::vector<std::vector<Int>> eq(4, ints({3, -1}));
  CHECK(is_trivial_vec(eq));
}

TEST_CASE("finite-difference test agrees with exact polynomial fitting") {
  seeded_rng rng(424242);
  int agreements = 0;
  for (int rep = 0; rep < 3000; ++rep) {
    int k = 2 + static_cast<int>(rng.below(7).get_ui());  // up to 8 terms
    int m = static_cast<int>(rng.below(5).get_ui());      // degree up to 4
    std::vector<Int> terms(k);
    if (rep % 2 == 0) {
      for (auto& t : terms) t = rng.between(-50, 50);
    } else {
      // genuine degree-<= m values, possibly perturbed
      std::vector<Int> coeff(m + 1);
      for (auto& c : coeff) c = rng.between(-3, 3);
      for (int i = 1; i <= k; ++i) {
        Rat acc = 0;
        for (int j = 0; j <= m; ++j) acc += Rat(coeff[j]) * pow_rat(Rat(i), j);
        terms[i - 1] = acc.get_num();
      }
      if (rng.below(4) == 0) terms[rng.below(k).get_ui()] += 1;
    }
    bool lhs = is_kpp(terms, m);
    bool rhs = fits_degree_at_most(terms, m);
    REQUIRE(lhs == rhs);
    ++agreements;
  }
  CHECK(agreements == 3000);
}

TEST_CASE("progressions are invariant under affine maps of the values") {
  seeded_rng rng(5);
  for (int rep = 0; rep < 500; ++rep) {
    int k = 3 + static_cast<int>(rng.below(5).get_ui());
    int m = 1 + static_cast<int>(rng.below(3).get_ui());
    std::vector<Int> terms(k);
    for (auto& t : terms) t = rng.between(-20, 20);
    for (long a : {-3L, 2L, 5L}) {
      for (long b : {-7L, 0L, 11L}) {
        std::vector<Int> mapped(k);
        for (int i = 0; i < k; ++i) mapped[i] = a * terms[i] + b;
        REQUIRE(is_kpp(terms, m) == is_kpp(mapped, m));
      }
    }
  }
}

TEST_CASE("contiguous windows decide the same as every index subset") {
  // exhaustive over short sequences with small values
  for (int m : {1, 2}) {
    int k = m + 4;
    std::vector<Int> terms(k, 0);
    std::vector<int> counter(k, 0);
    bool done = false;
    while (!done) {
      for (int i = 0; i < k; ++i) terms[i] = counter[i];
      bool contiguous = is_kpp(terms, m);

      bool subsets = true;
      std::vector<int> comb(m + 2);
      for (int i = 0; i < m + 2; ++i) comb[i] = i;
      while (subsets) {
        std::vector<int> pos(m + 2);
        std::vector<Int> vals(m + 2);
        for (int i = 0; i < m + 2; ++i) {
          pos[i] = comb[i] + 1;
          vals[i] = terms[comb[i]];
        }
        if (!subset_fits_degree(pos, vals, m)) subsets = false;
        int p = m + 1;
        while (p >= 0 && comb[p] == k - (m + 2) + p) --p;
        if (p < 0) break;
        ++comb[p];
        for (int i = p + 1; i < m + 2; ++i) comb[i] = comb[i - 1] + 1;
      }
      REQUIRE(contiguous == subsets);

      int pos = 0;
      while (pos < k && counter[pos] == 3) counter[pos++] = 0;
      if (pos == k) done = true;
      else ++counter[pos];
    }
  }
}
