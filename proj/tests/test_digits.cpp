#include <doctest.h>

#include <vector>

#include "exactn/digits.hpp"

using namespace exactn;

namespace {

std::vector<Int> ints(std::initializer_list<long> xs) {
  std::vector<Int> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Odometer over all centered digit tuples for t operands with d digits each.
struct digit_odometer {
  long q, d, t;
  std::vector<long> state;  // t*d digits, each in [-(q-1)/2, (q-1)/2]
  bool done = false;

  digit_odometer(long q_, long d_, long t_) : q(q_), d(d_), t(t_), state(t_ * d_, -(q_ - 1) / 2) {}

  std::vector<digit_vector> operands() const {
    std::vector<digit_vector> ops(t);
    for (long i = 0; i < t; ++i) {
      ops[i].radix = q;
      ops[i].mode = digit_mode::centered;
      for (long j = 0; j < d; ++j) ops[i].digits.emplace_back(state[i * d + j]);
    }
    return ops;
  }

  void advance() {
    long half = (q - 1) / 2;
    for (auto& s : state) {
      if (s < half) {
        ++s;
        return;
      }
      s = -half;
    }
    done = true;
  }
};

}  // namespace

TEST_CASE("encode produces the documented digit expansions") {
  digit_vector v = encode(23, 5, 3, digit_mode::standard);
  CHECK(v.digits == ints({3, 4, 0}));

  digit_vector c = encode(4, 5, 3, digit_mode::centered);
  CHECK(c.digits == ints({-1, 1, 0}));

  CHECK(encode(0, 7, 4, digit_mode::standard).digits == ints({0, 0, 0, 0}));
  CHECK(encode(0, 7, 4, digit_mode::centered).digits == ints({0, 0, 0, 0}));
}

TEST_CASE("encode rejects out-of-range values and bad radices") {
  CHECK_THROWS_AS(encode(125, 5, 3, digit_mode::standard), std::domain_error);
  CHECK_THROWS_AS(encode(-1, 5, 3, digit_mode::standard), std::domain_error);
  CHECK_THROWS_AS(encode(63, 5, 3, digit_mode::centered), std::domain_error);  // half range is 62
  CHECK_THROWS_AS(encode(3, 4, 2, digit_mode::centered), std::domain_error);   // even radix
  CHECK_THROWS_AS(encode(3, 5, 0, digit_mode::standard), std::domain_error);   // degenerate length
  CHECK_NOTHROW(encode(2, 5, 1, digit_mode::centered));                        // d = 1 is allowed
}

TEST_CASE("decode inverts encode across radices, lengths, and modes") {
  digit_vector v;
  v.radix = 5;
  v.mode = digit_mode::standard;
  v.digits = ints({3, 4, 0});
  CHECK(decode(v) == 23);

  seeded_rng rng(20240811);
  int trials = 0;
  for (long q = 3; q <= 31; ++q) {
    for (int d = 1; d <= 6; ++d) {
      Int qd = pow_int(q, d);
      for (int rep = 0; rep < 4; ++rep) {
        Int x = rng.below(qd);
        CHECK(decode(encode(x, q, d, digit_mode::standard)) == x);
        if (q % 2 == 1) {
          Int half = (qd - 1) / 2;
          Int y = rng.between(-half, half);
          CHECK(decode(encode(y, q, d, digit_mode::centered)) == y);
        }
        ++trials;
      }
    }
  }
  CHECK(trials >= 1000 / 4);
}

TEST_CASE("carry string of the documented two-operand example") {
  digit_vector v1 = encode(7, 5, 2, digit_mode::centered);   // (2, 1)
  digit_vector v2 = encode(-3, 5, 2, digit_mode::centered);  // (2, -1)
  CHECK(v1.digits == ints({2, 1}));
  CHECK(v2.digits == ints({2, -1}));

  digit_vector ops[] = {v1, v2};
  carry_string s = compute_carry_string(ops);
  CHECK(s.entries == ints({1, 0}));

  carry_vector vs = to_carry_vector(s, 5);
  CHECK(vs.entries == ints({-5, 1, 0}));

  // w viewed in 3 dimensions plus the carry vector re-encodes the sum 4
  std::vector<Int> w{4, 0, 0};
  for (int j = 0; j < 3; ++j) w[j] += vs.entries[j];
  CHECK(w == encode(4, 5, 3, digit_mode::centered).digits);
}

TEST_CASE("all-zero operands give an all-zero carry string") {
  digit_vector z = encode(0, 7, 3, digit_mode::centered);
  digit_vector ops[] = {z, z, z};
  carry_string s = compute_carry_string(ops);
  CHECK(s.entries == ints({0, 0, 0}));
}

TEST_CASE("operand count at or above the radix is rejected") {
  digit_vector z = encode(0, 3, 2, digit_mode::centered);
  std::vector<digit_vector> ops(3, z);
  CHECK_THROWS_AS(compute_carry_string(ops), std::domain_error);
}

TEST_CASE("carry vectors decode to zero") {
  seeded_rng rng(7);
  for (int rep = 0; rep < 200; ++rep) {
    Int q = 2 * rng.below(14) + 3;
    int d = 1 + static_cast<int>(rng.below(5).get_ui());
    carry_string s;
    s.operands = 2;
    for (int j = 0; j < d; ++j) s.entries.push_back(rng.between(-6, 6));
    carry_vector vs = to_carry_vector(s, q);
    Int acc = 0;
    Int power = 1;
    for (const Int& e : vs.entries) {
      acc += e * power;
      power *= q;
    }
    CHECK(acc == 0);
  }
  carry_string zero;
  zero.operands = 2;
  zero.entries = ints({0, 0, 0});
  for (const Int& e : to_carry_vector(zero, 5).entries) CHECK(e == 0);
}

TEST_CASE("sum re-encoding identity on random centered operands") {
  seeded_rng rng(99);
  for (int rep = 0; rep < 400; ++rep) {
    long q = rng.below(2) == 0 ? 5 : 7;
    int d = 1 + static_cast<int>(rng.below(3).get_ui());
    int t = 2 + static_cast<int>(rng.below(3).get_ui());
    Int qd = pow_int(q, d);
    Int half = (qd - 1) / 2;

    std::vector<digit_vector> ops;
    Int total = 0;
    for (int i = 0; i < t; ++i) {
      Int x = rng.between(-half, half);
      total += x;
      ops.push_back(encode(x, q, d, digit_mode::centered));
    }
    carry_string s = compute_carry_string(ops);
    carry_vector vs = to_carry_vector(s, q);

    std::vector<Int> w(d + 1, 0);
    for (const auto& op : ops)
      for (int j = 0; j < d; ++j) w[j] += op.digits[j];
    for (int j = 0; j <= d; ++j) w[j] += vs.entries[j];
    CHECK(w == encode(total, q, d + 1, digit_mode::centered).digits);

    for (const Int& e : s.entries) {
      CHECK(e <= t - 1);
      CHECK(e >= -(t - 1));
    }
  }
}

TEST_CASE("reconstruction follows the interval induction on the documented example") {
  digit_vector v2;
  v2.radix = 5;
  v2.mode = digit_mode::centered;
  v2.digits = ints({2, 0});
  int parities[] = {1, 0};
  digit_vector visible[] = {v2};
  carry_string s = reconstruct_carry(parities, visible, 5);
  CHECK(s.entries == ints({1, 0}));
}

TEST_CASE("reconstruction with all-zero operands and parities") {
  digit_vector z = encode(0, 5, 3, digit_mode::centered);
  int parities[] = {0, 0, 0};
  digit_vector visible[] = {z, z};
  CHECK(reconstruct_carry(parities, visible, 5).entries == ints({0, 0, 0}));
}

TEST_CASE("reconstruction equals the true carry string exhaustively at small scale") {
  for (long q : {3L, 5L}) {
    for (long d = 1; d <= 2; ++d) {
      for (long t = 2; t <= (q == 3 ? 2 : 3); ++t) {
        digit_odometer odo(q, d, t);
        while (!odo.done) {
          std::vector<digit_vector> ops = odo.operands();
          carry_string truth = compute_carry_string(ops);
          std::vector<int> parities;
          for (const Int& e : truth.entries) parities.push_back(mpz_odd_p(e.get_mpz_t()) ? 1 : 0);
          for (long hidden = 0; hidden < t; ++hidden) {
            std::vector<digit_vector> visible;
            for (long i = 0; i < t; ++i)
              if (i != hidden) visible.push_back(ops[i]);
            carry_string rec = reconstruct_carry(parities, visible, q);
            REQUIRE(rec.entries == truth.entries);
          }
          odo.advance();
        }
      }
    }
  }
}

TEST_CASE("impossible parities raise a contradiction") {
  // with the visible digit sum exactly zero the first carry must be 0 (even)
  digit_vector v2 = encode(0, 3, 1, digit_mode::centered);
  int parities[] = {1};
  digit_vector visible[] = {v2};
  CHECK_THROWS_AS(reconstruct_carry(parities, visible, 3), carry_contradiction);
}

TEST_CASE("decode is linear on raw digit sequences") {
  seeded_rng rng(61);
  for (int rep = 0; rep < 100; ++rep) {
    Int q = rng.between(2, 12);
    int d = 1 + static_cast<int>(rng.below(5).get_ui());
    digit_vector a, b, sum;
    a.radix = b.radix = sum.radix = q;
    for (int j = 0; j < d; ++j) {
      a.digits.push_back(rng.between(-20, 20));
      b.digits.push_back(rng.between(-20, 20));
      sum.digits.push_back(a.digits.back() + b.digits.back());
    }
    CHECK(decode(sum) == decode(a) + decode(b));
  }
}
