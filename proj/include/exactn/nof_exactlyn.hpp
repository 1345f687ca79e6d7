#pragma once

// The number-on-forehead stack for ExactlyN: the forced-guess reduction to an
// arithmetic-progression equality instance, the carry-parity shift set with
// its niceness predicate, the parity-silent carry reduction, and the three
// assembled ExactlyN protocols.

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "exactn/comm.hpp"
#include "exactn/nih_rankin.hpp"
#include "exactn/numbers.hpp"

namespace exactn {

// Forced-guess reduction: player i substitutes the value its own input must
// take for the sum to hit the target, then evaluates X = sum_j j x_j with
// that guess. The results form an arithmetic progression, constant iff the
// inputs sum to the target.
std::vector<Int> cfl_reduce(std::span<const Int> x, const Int& target);
// Player p's term of the progression, computed without its own input.
Int cfl_value(const player_view& view, const Int& target);
// Interval containing every X_i when inputs range over the given domains.
interval cfl_range(std::span<const interval> domains, const Int& target);

// True iff the carry string of sum_i centered_digits(a_i) has only even
// entries. Values must be centered-representable in d base-q digits.
bool is_nice(std::span<const Int> a, const Int& q, int d);

// Exact fraction of centered digit tuples (t operands, d digits) whose carry
// string is all even, by dynamic programming over the running carry.
Rat nice_fraction_exact(int t, const Int& q, int d);

struct shift_set {
  Int n;  // covers [1, n]^{k-1}
  int k = 0;
  Int q;
  int d = 0;
  std::uint64_t seed = 0;
  enum class coverage_mode { exhaustive, sampled };
  coverage_mode mode = coverage_mode::exhaustive;
  double failure_bound = 0.0;  // union bound on uncovered tuples, sampled mode only
  std::vector<std::vector<Int>> shifts;

  void save(std::ostream& out) const;
  static shift_set load(std::istream& in);
};

struct coverage_failure : std::runtime_error {
  coverage_failure(const std::string& what, double density, double covered)
      : std::runtime_error(what), niceness_density(density), covered_fraction(covered) {}
  double niceness_density;
  double covered_fraction;
};

// Seeded randomized construction. The zero shift is always tried first, then
// uniform draws from the translation box, keeping draws that cover at least
// one new tuple. Coverage is verified exhaustively when n^{k-1} fits the
// budget and by seeded sampling otherwise (failure_bound then reports the
// union bound). Exceeding the draw cap ceil((2 q^d)^{k-1} / |S| * k log n)
// raises coverage_failure carrying the measured niceness density.
shift_set build_shift_set(const Int& n, int k, const Int& q, int d, std::uint64_t seed,
                          std::uint64_t exhaustive_budget = 10000000,
                          int sampled_probes = 10000);

// Lowest index whose shift keeps every x_i + delta_i centered-representable
// and makes the shifted tuple nice.
std::optional<std::size_t> lowest_good_shift(std::span<const Int> x, const shift_set& delta);

// The parity-silent carry reduction, omniscient form (used by tests and by
// the per-player strategies, which recompute the carry from parities).
// Output vectors satisfy sum_i v_i = 0 iff sum_i x_i = target; the first
// k-1 stay in centered digit range and |v_k| stays within k*q per entry.
struct protocol3_result {
  std::size_t delta_index = 0;
  std::vector<std::vector<Int>> vectors;  // k vectors of length d + 1
};
protocol3_result protocol3_reduce(std::span<const Int> x, const Int& target,
                                  const shift_set& delta);

enum class exactlyn_variant { trivial, cfl_rankin, improved };

struct exactlyn_bundle {
  protocol proto;
  std::optional<shift_set> delta;        // improved
  std::optional<nih_schedule> schedule;  // cfl_rankin and improved
  Int carry_q;                           // improved: odd radix of the carry phase
  int carry_d = 0;
};

// ExactlyN over per-player domain [1, n] (trivial and cfl_rankin accept a
// custom domain; improved requires the standard one). All variants decide
// [sum x_i = n] exactly; k >= 3.
exactlyn_bundle exactlyn_protocol(int k, const Int& n, exactlyn_variant variant,
                                  std::uint64_t seed = 1,
                                  std::optional<interval> domain = std::nullopt);

}  // namespace exactn
