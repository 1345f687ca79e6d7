#pragma once

// Progression-free and corner-free constructions, exhaustive freeness
// oracles, covering colorings, and the protocol/coloring equivalences.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "exactn/comm.hpp"
#include "exactn/numbers.hpp"

namespace exactn {

// Sorted distinct elements of [1, universe].
struct integer_set {
  std::vector<Int> elements;
  Int universe;

  void save(std::ostream& out) const;  // "# universe N" header, one value per line
  static integer_set load(std::istream& in);
};

// Distinct points of [1, side]^dims.
struct grid_set {
  std::vector<std::vector<Int>> points;
  int dims = 0;
  Int side;

  void save(std::ostream& out) const;  // CSV rows under a "# universe" comment
  static grid_set load(std::istream& in);
};

// Total coloring of [1, n] (grid = false) or [1, side]^dims (grid = true,
// row-major with the first coordinate fastest). Color ids are dense.
struct coloring {
  bool grid = false;
  Int n;  // interval case
  int dims = 0;
  Int side;  // grid case
  std::vector<long long> colors;
  long long count = 0;

  std::size_t cell_index(std::span<const Int> point) const;
  void save(std::ostream& out) const;  // CSV (element..., color)
  static coloring load(std::istream& in);
};

// Sphere construction: numbers whose base-q digits stay below q/2 and whose
// digit vectors share the most popular squared length (exact census,
// smallest length on ties). 3-AP-free with at least
// ceil((q/2)^d / (d q^2)) elements for the chosen parameters.
integer_set behrend_set(const Int& n);
// The parameters and the census bound, for reporting and tests.
struct behrend_stats {
  Int q;
  int d = 0;
  Int best_length;
  Int pigeonhole_bound;
};
behrend_stats behrend_parameters(const Int& n);

// Degree-halving recursion: a set free of nontrivial k-term degree-m
// progressions, built from sphere preimages with digits below q/2^m at each
// level. m must be a power of two; the m = 1 result is free of k-term APs.
//
// Schedule: the term count rounds down to the largest k* = 2^t + 1 <= k
// (freeness for fewer terms implies it for more). Levels run m, 2m, ... up
// to the root degree (k* - 1)/2. A level over [1, n'] takes (q, d) from
// choose_parameters(n', m, ceil(log2(k*/m)) - 1), bumping q by 2^m until
// the digit box [0, q/2^m)^d is nonempty, keeps the numbers whose base-q
// digits all stay below q/2^m, and maps each to its squared digit length.
// The root keeps the most popular length (smallest on ties); lower levels
// keep the preimages of the level above, whose universe is the maximal
// squared length d (q/2^m - 1)^2. Degrees m >= k - 1 constrain nothing and
// return the whole digit box. Infeasible parameters degrade to a singleton.
integer_set rankin_kpp_free_set(const Int& n, int k, int m);

enum class verdict { verified_free, violation_found, budget_exceeded };
struct verify_result {
  verdict result = verdict::verified_free;
  std::vector<Int> witness;       // a violating progression (as values) if found
  std::uint64_t checked = 0;
  bool ok() const { return result == verdict::verified_free; }
};

verify_result verify_ap_free(const integer_set& a, int k,
                             std::uint64_t budget = 50'000'000, int threads = 1);
// m = 1 delegates to the AP scan; otherwise checks every increasing
// k-subsequence with the finite-difference test, within budget.
verify_result verify_kpp_free(const integer_set& a, int k, int m,
                              std::uint64_t budget = 50'000'000);
verify_result verify_corner_free(const grid_set& q, std::uint64_t budget = 50'000'000);

// Q = {x in [k^2 n]^{k-1} : sum_j j x_j in A + (k^2-1) n}; corner-free when
// A is k-AP-free, with |Q| >= n^{k-2} |A|.
grid_set corner_set_from_ap_set(const integer_set& a, const Int& n, int k);

// Covering by random translates of a: the zero translate first, then seeded
// draws from [-n, n], in batches of ceil(2 n ln n / |a|) + 8; after eight
// failed batches the gaps are patched deterministically. Color of x is the
// least covering translate.
coloring coloring_from_set(const integer_set& a, const Int& n, std::uint64_t seed);

// The grid analogue: translates drawn from [-side, side]^dims until the full
// grid is covered. Classes inherit corner-freeness from the source set.
coloring grid_coloring_from_set(const grid_set& q, std::uint64_t seed);

// Grid coloring of [1, floor(n/k^2)]^{k-1}: the color of a point is the
// input coloring's color of sum_j j x_j. Corner-free classes when the input
// classes are k-AP-free.
coloring corner_coloring_from_ap_coloring(const coloring& c, int k);

// Transcript-as-color in both directions of the equivalences.
coloring ap_coloring_from_protocol(const protocol& p, const interval& domain);
protocol protocol_from_ap_coloring(const coloring& c, int k);
coloring corner_coloring_from_protocol(const protocol& p, int k, const Int& n, const Int& side);
protocol protocol_from_corner_coloring(const coloring& c, int k, const Int& n);

// Per-class freeness of a coloring, via the exhaustive oracles.
verify_result verify_coloring_ap_free(const coloring& c, int k, std::uint64_t budget = 50'000'000);
verify_result verify_coloring_corner_free(const coloring& c, std::uint64_t budget = 50'000'000);

}  // namespace exactn
