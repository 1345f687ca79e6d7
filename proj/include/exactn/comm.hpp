#pragma once

// Blackboard multiparty protocol harness. A protocol is a fixed public
// schedule of broadcast slots; every slot's content is a pure function of
// the speaker's visible inputs and the transcript so far. Vote slots carry
// one bit each and the protocol accepts iff every vote is 1 (verify form).
// One broadcast from an alphabet of size A costs ceil(log2 A) bits.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exactn/numbers.hpp"

namespace exactn {

enum class model { nof, nih };

// Inclusive integer interval.
struct interval {
  Int lo, hi;
  Int size() const { return hi - lo + 1; }
  bool contains(const Int& x) const { return lo <= x && x <= hi; }
};

struct input_assignment {
  std::vector<Int> values;  // values[i] is player i+1's number
};

struct message {
  int speaker;  // 0-based
  Int symbol;
  Int alphabet;
  std::string label;  // cost-accounting tag, e.g. "digitshift.round0"
};

struct transcript {
  std::vector<message> messages;

  long long total_bits() const;
  long long bits_for_label(std::string_view prefix) const;
  // First message whose label starts with prefix; throws if absent.
  const message& find(std::string_view prefix) const;
  // One "speaker symbol alphabet" line per message, speakers 1-based.
  std::string to_text() const;
};

// What a strategy may read. input(j) enforces the visibility model; the
// raw vector stays reachable for the harness and for deliberately cheating
// strategies in tests.
class player_view {
 public:
  player_view(model m, int self, const std::vector<Int>& all)
      : model_(m), self_(self), all_(&all) {}

  model visibility() const { return model_; }
  int self() const { return self_; }
  int players() const { return static_cast<int>(all_->size()); }
  bool can_see(int j) const { return model_ == model::nof ? j != self_ : j == self_; }
  const Int& input(int j) const;
  const Int& own() const { return input(self_); }  // NIH convenience
  const std::vector<Int>& all_inputs_unchecked() const { return *all_; }

 private:
  model model_;
  int self_;
  const std::vector<Int>* all_;
};

struct step {
  int speaker = 0;
  Int alphabet = 2;
  std::string label;
  bool is_vote = false;  // vote steps must have alphabet 2
  std::function<Int(const player_view&, const transcript&)> emit;
};

struct protocol {
  model vis = model::nof;
  int players = 0;
  std::vector<interval> domains;  // one per player
  std::vector<step> steps;
  long long declared_cost_bits = 0;
  // Informative promise predicate; run() does not enforce it.
  std::function<bool(const std::vector<Int>&)> promise;
};

struct outcome {
  bool output = false;
  transcript record;
};

// Executes the schedule. Throws std::runtime_error on harness defects:
// a symbol outside its alphabet, a vote from a non-binary alphabet, or a
// schedule longer than 10 * (declared cost + players). Throws
// std::domain_error when an input violates its declared domain.
outcome run(const protocol& p, const input_assignment& in);

// True iff every slot's symbol is unchanged when inputs its speaker cannot
// see are varied, holding the transcript prefix fixed. Hidden coordinates
// are swept exhaustively when the domain has at most probe_budget values and
// probed with seeded draws otherwise.
bool check_visibility(const protocol& p, const input_assignment& in,
                      int probe_budget, std::uint64_t seed);

// Mixed-radix packing for broadcasting small digit vectors as one symbol:
// value = sum_j digits[j] * radix^j with every digit in [0, radix).
Int pack_digits(std::span<const Int> digits, const Int& radix);
std::vector<Int> unpack_digits(const Int& value, const Int& radix, int count);

}  // namespace exactn
