#include <doctest.h>

#include <cmath>
#include <vector>

#include "exactn/nih_rankin.hpp"
#include "exactn/progressions.hpp"

using namespace exactn;

namespace {

std::vector<Int> ints(std::initializer_list<long> xs) {
  std::vector<Int> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// All degree-<= 2 progressions of length 5 with values in [0, hi]: the first
// three values determine the rest through the vanishing third difference.
std::vector<std::vector<Int>> quadratic_progressions(long hi) {
  std::vector<std::vector<Int>> out;
  for (long a = 0; a <= hi; ++a)
    for (long b = 0; b <= hi; ++b)
      for (long c = 0; c <= hi; ++c) {
        long d = 3 * c - 3 * b + a;
        long e = 3 * d - 3 * c + b;
        if (d < 0 || d > hi || e < 0 || e > hi) continue;
        out.push_back(ints({a, b, c, d, e}));
      }
  return out;
}

bool run_equality(const kpp_equality& eq, const std::vector<Int>& xs) {
  return run(eq.proto, input_assignment{xs}).output;
}

}  // namespace

TEST_CASE("squared lengths double the degree and preserve triviality") {
  std::vector<std::vector<Int>> line;
  for (long i = 1; i <= 5; ++i) line.push_back(ints({i, 2 * i}));
  std::vector<Int> z = reduce_vec_to_int(line);
  CHECK(z == ints({5, 20, 45, 80, 125}));
  CHECK(is_kpp(z, 2));
  CHECK_FALSE(is_trivial(z));

  std::vector<std::vector<Int>> eq(4, ints({3, -1, 2}));
  std::vector<Int> zeq = reduce_vec_to_int(eq);
  CHECK(is_trivial(zeq));
}

TEST_CASE("exhaustive degree-2 vector progressions map to degree-4 progressions") {
  auto coords = quadratic_progressions(5);
  int seen = 0;
  for (std::size_t a = 0; a < coords.size(); a += 3) {  // stride keeps this quick
    for (std::size_t b = 0; b < coords.size(); b += 5) {
      std::vector<std::vector<Int>> vecs(5, std::vector<Int>(2));
      for (int i = 0; i < 5; ++i) {
        vecs[i][0] = coords[a][i];
        vecs[i][1] = coords[b][i];
      }
      REQUIRE(is_kvecpp(vecs, 2));
      std::vector<Int> z = reduce_vec_to_int(vecs);
      REQUIRE(is_kpp(z, 4));
      REQUIRE(is_trivial(z) == is_trivial_vec(vecs));
      ++seen;
    }
  }
  CHECK(seen > 50);
}

TEST_CASE("degree doubling is nontrivial when enough terms are present") {
  // six-term arithmetic progressions in two dimensions: the squared lengths
  // must pass the degree-2 window test, which is non-vacuous at k = 6
  for (long base = 0; base <= 4; ++base)
    for (long step = -2; step <= 2; ++step) {
      std::vector<std::vector<Int>> vecs;
      for (long i = 0; i < 6; ++i) {
        long v = base + i * step;
        if (v < -10 || v > 10) break;
        vecs.push_back(ints({v, 3 - v}));
      }
      if (vecs.size() != 6) continue;
      REQUIRE(is_kvecpp(vecs, 1));
      std::vector<Int> z = reduce_vec_to_int(vecs);
      REQUIRE(is_kpp(z, 2));
      REQUIRE(is_trivial(z) == (step == 0));
    }
}

TEST_CASE("the digit-shift reduction on the documented instances") {
  {
    std::vector<Int> xs = ints({5, 5, 5});
    int_to_vec_result r = reduce_int_to_vec(xs, 4, 2, 1);
    for (int i = 0; i < 3; ++i) {
      CHECK(r.vectors[i] == ints({1, 1}));
      CHECK_FALSE(r.noted[i]);
    }
  }
  {
    std::vector<Int> xs = ints({1, 3, 5});
    int_to_vec_result r = reduce_int_to_vec(xs, 4, 2, 1);
    CHECK(r.shifts[0] == ints({0, 0}));
    CHECK(r.shifts[1] == ints({1, 0}));
    CHECK(r.shifts[2] == ints({0, 0}));
    CHECK(r.noted[1]);
    CHECK_FALSE(r.noted[2]);
  }
  CHECK_THROWS_AS(reduce_int_to_vec(ints({1, 2, 3}), 6, 2, 2), std::domain_error);   // 4 does not divide 6
  CHECK_THROWS_AS(reduce_int_to_vec(ints({16, 0, 0}), 4, 2, 1), std::domain_error);  // input at q^d
}

TEST_CASE("exhaustive arithmetic progressions stay consistent through the reduction") {
  // every 3-term AP inside [0, 16) with q = 4, d = 2, m = 1
  for (long a = 0; a < 16; ++a)
    for (long delta = -7; delta <= 7; ++delta) {
      long b = a + delta, c = a + 2 * delta;
      if (b < 0 || b >= 16 || c < 0 || c >= 16) continue;
      std::vector<Int> xs = ints({a, b, c});
      int_to_vec_result r = reduce_int_to_vec(xs, 4, 2, 1);
      bool any_note = r.noted[1] || r.noted[2];
      if (any_note) {
        REQUIRE(delta != 0);
      } else {
        REQUIRE(is_kvecpp(r.vectors, 1));
        REQUIRE(is_trivial_vec(r.vectors) == (delta == 0));
      }
    }
}

TEST_CASE("parameter choice balances the rounds and respects its contract") {
  {
    chosen_parameters p = choose_parameters(Int(1) << 20, 1, 1);
    CHECK(std::abs(static_cast<double>(p.d_real - std::sqrt(2.0L * 20.0L))) < 1e-9);
    CHECK(std::abs(static_cast<double>(p.q_real - std::exp2(20.0L / p.d_real))) < 1e-6);
    CHECK(p.q % 2 == 0);
    CHECK(pow_int(p.q, p.d) >= (Int(1) << 20));
  }
  {
    chosen_parameters p = choose_parameters(2, 1, 1);
    CHECK(p.q % 2 == 0);
    CHECK(pow_int(p.q, p.d) >= 2);
  }
  // the rounded parameters stay within ten percent of the balanced optimum
  Int n = Int(1) << 64;
  for (int m : {1, 2}) {
    for (int i : {1, 2, 3}) {
      chosen_parameters p = choose_parameters(n, m, i);
      long double li = i;
      long double optimum = (li + 1) * std::exp2(li / 2) *
                            std::pow(std::pow((long double)m, li) * 64.0L, 1.0L / (li + 1));
      long double rounded = (long double)m * p.d +
                            li * std::exp2((li - 1) / 2) *
                                std::pow(std::pow(2.0L * m, li - 1) * 2.0L * log2_int(p.q), 1.0L / li);
      CHECK(rounded <= optimum * 1.10L);
      CHECK(rounded >= optimum * 0.90L);
    }
  }
}

TEST_CASE("equality under an AP promise, exhaustively over a 64-point domain") {
  kpp_equality eq = kpp_equality_protocol(3, 1, interval{1, 64});
  int cases = 0;
  for (long a = 1; a <= 64; ++a)
    for (long delta = -31; delta <= 31; ++delta) {
      long b = a + delta, c = a + 2 * delta;
      if (b < 1 || b > 64 || c < 1 || c > 64) continue;
      bool out = run_equality(eq, ints({a, b, c}));
      REQUIRE(out == (delta == 0));
      ++cases;
    }
  CHECK(cases > 2000);
}

TEST_CASE("equality with five players under the AP promise") {
  kpp_equality eq = kpp_equality_protocol(5, 1, interval{1, 128});
  CHECK(eq.schedule.levels.size() == 2);  // degrees 1 and 2 before the endgame
  for (long a = 1; a <= 128; a += 3)
    for (long delta = -31; delta <= 31; ++delta) {
      long last = a + 4 * delta;
      if (last < 1 || last > 128) continue;
      std::vector<Int> xs;
      for (int i = 0; i < 5; ++i) xs.push_back(Int(a + i * delta));
      REQUIRE(run_equality(eq, xs) == (delta == 0));
    }
}

TEST_CASE("the base case is a bare reveal-and-vote equality protocol") {
  kpp_equality eq = kpp_equality_protocol(3, 2, interval{1, 100});  // m >= k/2
  CHECK(eq.schedule.levels.empty());
  CHECK(eq.proto.declared_cost_bits == ceil_log2(Int(100)) + 2);
  CHECK(run_equality(eq, ints({42, 42, 42})));
  CHECK_FALSE(run_equality(eq, ints({42, 41, 43})));
  outcome o = run(eq.proto, input_assignment{ints({7, 7, 7})});
  CHECK(o.record.total_bits() == eq.proto.declared_cost_bits);
}

TEST_CASE("measured component costs equal the declared ones exactly") {
  kpp_equality eq = kpp_equality_protocol(5, 1, interval{1, 128});
  outcome o = run(eq.proto, input_assignment{ints({9, 9, 9, 9, 9})});
  for (std::size_t li = 0; li < eq.schedule.levels.size(); ++li) {
    const nih_level& lvl = eq.schedule.levels[li];
    CHECK(o.record.bits_for_label(lvl.label) == static_cast<long long>(lvl.m) * lvl.d);
  }
  CHECK(o.record.bits_for_label("endgame") ==
        ceil_log2(eq.schedule.final_domain.size()) + (eq.schedule.k - 1));
  CHECK(o.record.total_bits() == eq.proto.declared_cost_bits);
}

TEST_CASE("recursion domains shrink below the digit space at each level") {
  for (int k : {4, 6, 8}) {
    for (int shift : {16, 30, 44}) {
      kpp_equality eq = kpp_equality_protocol(k, 1, interval{0, (Int(1) << shift) - 1});
      for (std::size_t li = 0; li < eq.schedule.levels.size(); ++li) {
        const nih_level& lvl = eq.schedule.levels[li];
        if (lvl.d < 3) continue;
        Int next_size = li + 1 < eq.schedule.levels.size()
                            ? eq.schedule.levels[li + 1].domain.size()
                            : eq.schedule.final_domain.size();
        Int digit_budget = lvl.q * lvl.q * Int(static_cast<long>(lvl.d));
        CHECK(next_size <= digit_budget);
        CHECK(digit_budget < pow_int(lvl.q, static_cast<unsigned long>(lvl.d)));
      }
    }
  }
}

TEST_CASE("parameter preconditions are enforced") {
  CHECK_THROWS_AS(choose_parameters(1, 1, 1), std::domain_error);
  CHECK_THROWS_AS(choose_parameters(100, 0, 1), std::domain_error);
  CHECK_THROWS_AS(choose_parameters(100, 1, 0), std::domain_error);
  CHECK_THROWS_AS(plan_kpp_equality(3, 0, interval{1, 10}), std::domain_error);
  CHECK_THROWS_AS(plan_kpp_equality(3, 3, interval{1, 10}), std::domain_error);
}

TEST_CASE("a collapsing domain ends the recursion early but keeps the votes") {
  // eight players over a four-point domain: the first round already pins the
  // residual values, and mismatch notes must still reach the endgame
  kpp_equality eq = kpp_equality_protocol(8, 1, interval{0, 3});
  std::vector<Int> equal(8, Int(2));
  CHECK(run(eq.proto, input_assignment{equal}).output);
  for (long delta : {1L, -1L}) {
    std::vector<Int> ap;
    bool in_range = true;
    for (int i = 0; i < 8; ++i) {
      long v = 1 + i * delta;
      if (v < 0 || v > 3) in_range = false;
      ap.emplace_back(v);
    }
    if (!in_range) continue;
    CHECK_FALSE(run(eq.proto, input_assignment{ap}).output);
  }
  // non-promised but domain-legal inputs must not crash the harness
  std::vector<Int> scattered{0, 3, 1, 2, 2, 0, 3, 1};
  CHECK_NOTHROW(run(eq.proto, input_assignment{scattered}));
}

TEST_CASE("a frozen pipeline transcript") {
  // domain [1,64] plans one round at q = 4, d = 4. Input 5 shifts to 4 with
  // digits (0,1,0,0): the coarse parts are all zero (symbol 0 of 16), the
  // fine parts give squared length 1 (symbol 1 of the 5-point endgame), and
  // both votes agree.
  kpp_equality eq = kpp_equality_protocol(3, 1, interval{1, 64});
  outcome o = run(eq.proto, input_assignment{{Int(5), Int(5), Int(5)}});
  CHECK(o.record.to_text() ==
        "1 0 16\n"
        "1 1 5\n"
        "2 1 2\n"
        "3 1 2\n");
  CHECK(o.output);
}

TEST_CASE("round counts follow the degree-doubling ladder") {
  // starting from degree 1, rounds run while 2m < k, so their number is
  // ceil(log2 k) - 1 whenever no intermediate domain collapses
  for (int k = 3; k <= 9; ++k) {
    kpp_equality eq = kpp_equality_protocol(k, 1, interval{0, (Int(1) << 40) - 1});
    int expected = 0;
    for (int m = 1; 2 * m < k; m *= 2) ++expected;
    CHECK(static_cast<int>(eq.schedule.levels.size()) == expected);
    int m = 1;
    for (const auto& lvl : eq.schedule.levels) {
      CHECK(lvl.m == m);
      m *= 2;
    }
  }
}
