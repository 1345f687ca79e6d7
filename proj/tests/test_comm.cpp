#include <doctest.h>

#include <vector>

#include "exactn/comm.hpp"
#include "exactn/nof_exactlyn.hpp"

using namespace exactn;

namespace {

std::vector<Int> ints(std::initializer_list<long> xs) {
  std::vector<Int> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// One broadcast plus one vote, enough to exercise the harness paths.
protocol tiny_sum_checker(Int lo, Int hi, Int target) {
  protocol p;
  p.vis = model::nof;
  p.players = 3;
  p.domains.assign(3, interval{lo, hi});
  step announce;
  announce.speaker = 2;
  announce.alphabet = 8;
  announce.label = "announce";
  announce.emit = [](const player_view& view, const transcript&) -> Int {
    return (view.input(0) + view.input(1)) % 8;
  };
  p.steps.push_back(announce);
  step vote;
  vote.speaker = 0;
  vote.alphabet = 2;
  vote.is_vote = true;
  vote.label = "vote";
  vote.emit = [target](const player_view& view, const transcript& tr) -> Int {
    Int partial = (target - view.input(2)) % 8;
    if (partial < 0) partial += 8;
    return Int(tr.find("announce").symbol == partial ? 1 : 0);
  };
  p.steps.push_back(vote);
  p.declared_cost_bits = 4;
  return p;
}

}  // namespace

TEST_CASE("the trivial ExactlyN protocol is correct on the full truth table") {
  exactlyn_bundle b = exactlyn_protocol(3, 20, exactlyn_variant::trivial);
  int checked = 0;
  for (long x1 = 1; x1 <= 20; ++x1)
    for (long x2 = 1; x2 <= 20; ++x2)
      for (long x3 = 1; x3 <= 20; ++x3) {
        input_assignment in{ints({x1, x2, x3})};
        outcome o = run(b.proto, in);
        REQUIRE(o.output == (x1 + x2 + x3 == 20));
        ++checked;
      }
  CHECK(checked == 8000);
}

TEST_CASE("a protocol on a one-point input space still answers correctly") {
  exactlyn_bundle b = exactlyn_protocol(3, 15, exactlyn_variant::trivial, 1, interval{5, 5});
  outcome o = run(b.proto, input_assignment{ints({5, 5, 5})});
  CHECK(o.output);
  CHECK(o.record.total_bits() >= 0);

  exactlyn_bundle miss = exactlyn_protocol(3, 16, exactlyn_variant::trivial, 1, interval{5, 5});
  CHECK_FALSE(run(miss.proto, input_assignment{ints({5, 5, 5})}).output);
}

TEST_CASE("one broadcast from an eight-letter alphabet costs three bits") {
  protocol p = tiny_sum_checker(0, 7, 9);
  outcome o = run(p, input_assignment{ints({2, 3, 4})});
  CHECK(o.output);
  CHECK(o.record.messages.front().alphabet == 8);
  CHECK(o.record.bits_for_label("announce") == 3);
  CHECK(o.record.total_bits() == 4);

  // independent recount
  long long bits = 0;
  for (const auto& m : o.record.messages) bits += ceil_log2(m.alphabet);
  CHECK(bits == o.record.total_bits());
}

TEST_CASE("runs are replay deterministic") {
  protocol p = tiny_sum_checker(0, 7, 12);
  input_assignment in{ints({5, 3, 4})};
  outcome a = run(p, in);
  outcome b = run(p, in);
  CHECK(a.output == b.output);
  CHECK(a.record.to_text() == b.record.to_text());
}

TEST_CASE("transcripts serialize one message per line") {
  protocol p = tiny_sum_checker(0, 7, 9);
  outcome o = run(p, input_assignment{ints({2, 3, 4})});
  CHECK(o.record.to_text() == "3 5 8\n1 1 2\n");
}

TEST_CASE("harness rejects defective strategies and inputs") {
  protocol p = tiny_sum_checker(0, 7, 9);
  SUBCASE("symbol outside the alphabet") {
    p.steps[0].alphabet = 4;  // the announcement can reach 7
    CHECK_THROWS_AS(run(p, input_assignment{ints({3, 4, 0})}), std::runtime_error);
  }
  SUBCASE("vote from a non-binary alphabet") {
    p.steps[1].alphabet = 3;
    CHECK_THROWS_AS(run(p, input_assignment{ints({2, 3, 4})}), std::runtime_error);
  }
  SUBCASE("input outside its domain") {
    CHECK_THROWS_AS(run(p, input_assignment{ints({2, 3, 9})}), std::domain_error);
  }
  SUBCASE("schedule longer than the round limit") {
    p.declared_cost_bits = 0;
    for (int i = 0; i < 40; ++i) p.steps.push_back(p.steps[0]);
    CHECK_THROWS_AS(run(p, input_assignment{ints({2, 3, 4})}), std::runtime_error);
  }
}

TEST_CASE("hidden inputs are unreadable through the view") {
  std::vector<Int> x = ints({1, 2, 3});
  player_view nof(model::nof, 1, x);
  CHECK(nof.input(0) == 1);
  CHECK_THROWS_AS(nof.input(1), std::logic_error);
  player_view nih(model::nih, 1, x);
  CHECK(nih.own() == 2);
  CHECK_THROWS_AS(nih.input(0), std::logic_error);
}

TEST_CASE("visibility checking passes honest protocols and catches cheats") {
  protocol honest = tiny_sum_checker(0, 7, 9);
  CHECK(check_visibility(honest, input_assignment{ints({2, 3, 4})}, 64, 17));

  protocol cheat = tiny_sum_checker(0, 7, 9);
  cheat.steps[0].emit = [](const player_view& view, const transcript&) -> Int {
    // reads its own forehead through the backdoor
    return view.all_inputs_unchecked()[view.self()] % 8;
  };
  CHECK_FALSE(check_visibility(cheat, input_assignment{ints({2, 3, 4})}, 64, 17));
}

TEST_CASE("a single-player protocol is vacuously visibility-clean") {
  protocol p;
  p.vis = model::nof;
  p.players = 1;
  p.domains.assign(1, interval{0, 3});
  step vote;
  vote.speaker = 0;
  vote.alphabet = 2;
  vote.is_vote = true;
  vote.label = "vote";
  vote.emit = [](const player_view&, const transcript&) -> Int { return 1; };
  p.steps.push_back(vote);
  p.declared_cost_bits = 1;
  CHECK(check_visibility(p, input_assignment{ints({2})}, 16, 3));
  CHECK(run(p, input_assignment{ints({2})}).output);
}

TEST_CASE("digit packing round-trips and validates") {
  std::vector<Int> digits = ints({3, 0, 2, 1});
  Int packed = pack_digits(digits, 4);
  CHECK(unpack_digits(packed, 4, 4) == digits);
  CHECK_THROWS_AS(pack_digits(ints({4}), 4), std::domain_error);
  CHECK_THROWS_AS(unpack_digits(100, 4, 2), std::domain_error);
}

TEST_CASE("visibility probing also works through seeded samples") {
  exactlyn_bundle b = exactlyn_protocol(3, 64, exactlyn_variant::improved, 1);
  input_assignment in{ints({20, 21, 23})};
  // probe budget below the domain size exercises the sampling path
  CHECK(check_visibility(b.proto, in, 20, 99));
  CHECK(check_visibility(b.proto, in, 1000, 7));
}
