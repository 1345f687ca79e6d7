#pragma once

// The number-in-hand stack: the zero-cost squared-length reduction, the
// md-bit digit-shift reduction, the parameter optimizer they share, and the
// recursive equality protocol that alternates them until the degree reaches
// k/2 and a reveal-and-vote endgame finishes the job.

#include <functional>
#include <span>
#include <vector>

#include "exactn/comm.hpp"
#include "exactn/numbers.hpp"

namespace exactn {

// Squared Euclidean lengths, one per player. Maps a degree-m vector
// progression to a degree-2m integer progression (trivial iff trivial when
// the term count exceeds 2m) with no communication.
std::vector<Int> reduce_vec_to_int(std::span<const std::vector<Int>> vectors);

// The digit-shift reduction. Inputs must be nonnegative and below q^d with
// 2^m | q. Each player splits its base-q digits w into a coarse part
// s = floor(w / c) and a fine part v = w mod c for c = q / 2^m; player 1
// broadcasts s_1 (md bits) and everyone else notes a mismatch when their own
// coarse part differs.
struct int_to_vec_result {
  std::vector<std::vector<Int>> vectors;  // fine parts, entries in [0, c)
  std::vector<std::vector<Int>> shifts;   // coarse parts, entries in [0, 2^m)
  std::vector<char> noted;                // noted[i]: s_i != s_1
};
int_to_vec_result reduce_int_to_vec(std::span<const Int> inputs, const Int& q, int d, int m);

// Balances one md-bit round against the remaining i levels of recursion:
// the real optimum satisfies m d' = 2^{i/2} (m^i log N)^{1/(i+1)} with
// q'^{d'} = N, then q is rounded up to a multiple of 2^m and d to an
// integer, preserving q^d >= N.
struct chosen_parameters {
  long double d_real = 0;
  long double q_real = 0;
  long long d = 0;
  Int q;
};
chosen_parameters choose_parameters(const Int& n, int m, int level);

// One digit-shift round of the recursion.
struct nih_level {
  int m = 0;
  Int q;
  long long d = 0;
  interval domain;    // player values entering this round
  std::string label;  // transcript tag of the broadcast
};

struct nih_schedule {
  int k = 0;
  std::vector<nih_level> levels;
  interval final_domain;  // values entering the equality endgame
  long long cost_bits() const;
};

// Plans the rounds for k players holding a degree-m progression over the
// given interval: rounds double the degree until m >= k/2.
nih_schedule plan_kpp_equality(int k, int m, interval domain);

// A player's starting value for the schedule, computed from whatever it is
// allowed to see (its own input in a plain NIH run; a forehead-derived value
// when the schedule runs inside a NOF protocol).
using value_source = std::function<Int(const player_view&, const transcript&)>;

// Appends the schedule's broadcast and vote slots to proto.
void append_nih_steps(protocol& proto, const nih_schedule& sched, const value_source& source);

// Replays the reductions for one player: its value entering every level,
// whether it noted a mismatch, and its endgame value.
struct nih_replay_result {
  Int final_value;
  bool noted = false;
};
nih_replay_result replay_nih(const nih_schedule& sched, const Int& start,
                             const transcript& tr);

struct kpp_equality {
  protocol proto;
  nih_schedule schedule;
};

// Equality under a degree-m progression promise, 1 <= m <= k - 1. Output 1
// iff all inputs are equal; behaviour on promise-violating inputs is
// unspecified (the harness never crashes on them, and any mismatch a player
// notes forces a 0 vote).
kpp_equality kpp_equality_protocol(int k, int m, interval domain);

}  // namespace exactn
