#include "exactn/nof_exactlyn.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include "exactn/digits.hpp"

namespace exactn {

std::vector<Int> cfl_reduce(std::span<const Int> x, const Int& target) {
  int k = static_cast<int>(x.size());
  Int weighted = 0, total = 0;
  for (int j = 0; j < k; ++j) {
    weighted += Int(j + 1) * x[j];
    total += x[j];
  }
  // X_i = X + i * (target - sum), directly from expanding the forced guess.
  std::vector<Int> out;
  out.reserve(k);
  Int delta = target - total;
  for (int i = 1; i <= k; ++i) out.push_back(weighted + Int(i) * delta);
  return out;
}

Int cfl_value(const player_view& view, const Int& target) {
  int k = view.players();
  int p = view.self();
  Int guess = target;
  for (int j = 0; j < k; ++j)
    if (j != p) guess -= view.input(j);
  Int acc = Int(p + 1) * guess;
  for (int j = 0; j < k; ++j)
    if (j != p) acc += Int(j + 1) * view.input(j);
  return acc;
}

interval cfl_range(std::span<const interval> domains, const Int& target) {
  int k = static_cast<int>(domains.size());
  interval out;
  bool first = true;
  for (int i = 0; i < k; ++i) {
    // X_i = (i+1) * target + sum_{j != i} (j - i) * x_j, indices 1-based
    Int lo = Int(i + 1) * target;
    Int hi = lo;
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      Int c = Int(j - i);
      if (c >= 0) {
        lo += c * domains[j].lo;
        hi += c * domains[j].hi;
      } else {
        lo += c * domains[j].hi;
        hi += c * domains[j].lo;
      }
    }
    if (first || lo < out.lo) out.lo = lo;
    if (first || hi > out.hi) out.hi = hi;
    first = false;
  }
  return out;
}

bool is_nice(std::span<const Int> a, const Int& q, int d) {
  std::vector<digit_vector> ops;
  ops.reserve(a.size());
  for (const Int& v : a) ops.push_back(encode(v, q, d, digit_mode::centered));
  carry_string s = compute_carry_string(ops);
  for (const Int& e : s.entries)
    if (mpz_odd_p(e.get_mpz_t())) return false;
  return true;
}

Rat nice_fraction_exact(int t, const Int& q, int d) {
  if (t < 1 || d < 1) throw std::domain_error("nice_fraction_exact: bad arguments");
  if (mpz_even_p(q.get_mpz_t()) || Int(t) >= q)
    throw std::domain_error("nice_fraction_exact: need odd q > t");
  if (!q.fits_slong_p()) throw std::domain_error("nice_fraction_exact: q too large");
  long ql = q.get_si();
  long half = (ql - 1) / 2;

  // column_counts[v]: digit columns (t digits) summing to v - t*half
  std::vector<Int> column_counts{1};
  for (int i = 0; i < t; ++i) {
    std::vector<Int> next(column_counts.size() + static_cast<std::size_t>(ql) - 1, 0);
    for (std::size_t v = 0; v < column_counts.size(); ++v)
      if (column_counts[v] != 0)
        for (long dgt = 0; dgt < ql; ++dgt) next[v + dgt] += column_counts[v];
    column_counts = std::move(next);
  }

  // carry values stay in [-(t-1), t-1]; track counts of digit prefixes whose
  // carries so far are all even, keyed by the running carry
  long carry_span = 2 * (t - 1) + 1;
  std::vector<Int> state(carry_span, 0), nextstate(carry_span);
  state[t - 1] = 1;  // carry 0
  for (int j = 0; j < d; ++j) {
    std::fill(nextstate.begin(), nextstate.end(), Int(0));
    for (long cin = -(t - 1); cin <= t - 1; ++cin) {
      const Int& weight = state[cin + t - 1];
      if (weight == 0) continue;
      for (std::size_t v = 0; v < column_counts.size(); ++v) {
        if (column_counts[v] == 0) continue;
        Int u = Int(static_cast<long>(v)) - Int(t) * half + cin;
        Int carry = detail::nearest_multiple_index(u, q);
        if (mpz_odd_p(carry.get_mpz_t())) continue;
        long c = carry.get_si();
        nextstate[c + t - 1] += weight * column_counts[v];
      }
    }
    state.swap(nextstate);
  }
  Int nice_total = 0;
  for (const Int& w : state) nice_total += w;
  return make_rat(nice_total, pow_int(q, static_cast<unsigned long>(t) * d));
}

namespace {

bool shift_is_good(std::span<const Int> x, std::span<const Int> delta, const Int& q, int d,
                   const Int& half_range) {
  std::vector<Int> shifted(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    shifted[i] = x[i] + delta[i];
    if (shifted[i] < -half_range || shifted[i] > half_range) return false;
  }
  return is_nice(shifted, q, d);
}

}  // namespace

std::optional<std::size_t> lowest_good_shift(std::span<const Int> x, const shift_set& delta) {
  Int half = (pow_int(delta.q, static_cast<unsigned long>(delta.d)) - 1) / 2;
  for (std::size_t i = 0; i < delta.shifts.size(); ++i)
    if (shift_is_good(x, delta.shifts[i], delta.q, delta.d, half)) return i;
  return std::nullopt;
}

shift_set build_shift_set(const Int& n, int k, const Int& q, int d, std::uint64_t seed,
                          std::uint64_t exhaustive_budget, int sampled_probes) {
  if (k < 3) throw std::domain_error("build_shift_set: need k >= 3");
  if (n < 1) throw std::domain_error("build_shift_set: need n >= 1");
  if (mpz_even_p(q.get_mpz_t()) || Int(k - 1) >= q)
    throw std::domain_error("build_shift_set: need odd q > k-1");
  Int qd = pow_int(q, static_cast<unsigned long>(d));
  if (qd < n) throw std::domain_error("build_shift_set: need q^d >= n");

  int t = k - 1;
  Int half = (qd - 1) / 2;
  Int box_lo = -(half + n);
  Int box_hi = half;

  Rat nice_frac = nice_fraction_exact(t, q, d);
  Int s_size = nice_frac.get_num() * (pow_int(q, static_cast<unsigned long>(t) * d) / nice_frac.get_den());
  Rat p_good = make_rat(s_size, pow_int(2 * qd, static_cast<unsigned long>(t)));
  long double cap_ld = (1.0L / to_long_double(p_good)) * k * std::max(1.0L, log2_int(n));
  if (cap_ld > 1e8L)
    throw std::domain_error(
        "build_shift_set: the covering set would need > 1e8 draws; size it analytically instead");
  std::uint64_t cap = static_cast<std::uint64_t>(std::ceil(cap_ld)) + 1;

  shift_set out;
  out.n = n;
  out.k = k;
  out.q = q;
  out.d = d;
  out.seed = seed;
  seeded_rng rng(seed);

  auto draw = [&](std::uint64_t index) -> std::vector<Int> {
    std::vector<Int> delta(t);
    if (index == 0) return delta;  // the zero shift goes first
    for (int i = 0; i < t; ++i) delta[i] = rng.between(box_lo, box_hi);
    return delta;
  };

  // exhaustive covering when the tuple space fits the budget
  bool exhaustive = true;
  {
    Int tuples = pow_int(n, static_cast<unsigned long>(t));
    if (tuples > Int(static_cast<unsigned long>(exhaustive_budget))) exhaustive = false;
  }

  if (exhaustive) {
    std::uint64_t total = pow_int(n, static_cast<unsigned long>(t)).get_ui();
    std::vector<std::uint64_t> uncovered(total);
    for (std::uint64_t i = 0; i < total; ++i) uncovered[i] = i;
    std::uint64_t nl = n.get_ui();

    std::vector<Int> x(t);
    std::uint64_t draws = 0;
    while (!uncovered.empty()) {
      if (draws > cap) {
        double density = static_cast<double>(to_long_double(nice_frac));
        double covered = 1.0 - static_cast<double>(uncovered.size()) / static_cast<double>(total);
        throw coverage_failure(
            "build_shift_set: draw cap exceeded (measured niceness density " +
                std::to_string(density) + ", covered fraction " + std::to_string(covered) + ")",
            density, covered);
      }
      std::vector<Int> delta = draw(draws++);
      std::size_t kept = 0;
      bool useful = false;
      for (std::uint64_t idx : uncovered) {
        std::uint64_t rest = idx;
        for (int i = 0; i < t; ++i) {
          x[i] = Int(static_cast<unsigned long>(rest % nl)) + 1;
          rest /= nl;
        }
        if (shift_is_good(x, delta, q, d, half)) {
          useful = true;
        } else {
          uncovered[kept++] = idx;
        }
      }
      uncovered.resize(kept);
      if (useful) out.shifts.push_back(std::move(delta));
    }
    out.mode = shift_set::coverage_mode::exhaustive;
    out.failure_bound = 0.0;
    return out;
  }

  // sampled covering: draw the cap, then patch any sampled hole with its
  // witness shift (which maps the tuple to all zeros)
  for (std::uint64_t i = 0; i <= cap; ++i) out.shifts.push_back(draw(i));
  std::vector<Int> x(t);
  for (int probe = 0; probe < sampled_probes; ++probe) {
    for (int i = 0; i < t; ++i) x[i] = rng.between(1, n);
    if (!lowest_good_shift(x, out)) {
      std::vector<Int> witness(t);
      for (int i = 0; i < t; ++i) witness[i] = -x[i];
      out.shifts.push_back(std::move(witness));
    }
  }
  out.mode = shift_set::coverage_mode::sampled;
  long double miss = std::pow(1.0L - to_long_double(p_good), static_cast<long double>(out.shifts.size()));
  long double bound = std::pow(static_cast<long double>(to_long_double(Rat(n))), t) * miss;
  out.failure_bound = static_cast<double>(std::min(1.0L, bound));
  return out;
}

void shift_set::save(std::ostream& outs) const {
  outs << "exactn-shiftset v1\n";
  outs << "n " << n.get_str() << "\n";
  outs << "k " << k << "\n";
  outs << "q " << q.get_str() << "\n";
  outs << "d " << d << "\n";
  outs << "seed " << seed << "\n";
  outs << "coverage " << (mode == coverage_mode::exhaustive ? "exhaustive" : "sampled");
  if (mode == coverage_mode::sampled) outs << " " << failure_bound;
  outs << "\n";
  for (const auto& delta : shifts) {
    for (std::size_t i = 0; i < delta.size(); ++i)
      outs << (i ? " " : "") << delta[i].get_str();
    outs << "\n";
  }
}

shift_set shift_set::load(std::istream& ins) {
  shift_set s;
  std::string line;
  if (!std::getline(ins, line) || line != "exactn-shiftset v1")
    throw std::runtime_error("shift_set: unrecognized header");
  auto read_kv = [&](const std::string& expect) -> std::string {
    std::string ln;
    if (!std::getline(ins, ln)) throw std::runtime_error("shift_set: truncated header");
    std::istringstream fields(ln);
    std::string k0;
    fields >> k0;
    if (k0 != expect) throw std::runtime_error("shift_set: expected header field " + expect);
    std::string rest;
    std::getline(fields, rest);
    if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
    return rest;
  };
  s.n = Int(read_kv("n"));
  s.k = std::stoi(read_kv("k"));
  s.q = Int(read_kv("q"));
  s.d = std::stoi(read_kv("d"));
  s.seed = std::stoull(read_kv("seed"));
  std::istringstream cov(read_kv("coverage"));
  std::string mode_word;
  cov >> mode_word;
  if (mode_word == "exhaustive") {
    s.mode = coverage_mode::exhaustive;
  } else if (mode_word == "sampled") {
    s.mode = coverage_mode::sampled;
    cov >> s.failure_bound;
  } else {
    throw std::runtime_error("shift_set: bad coverage mode");
  }
  while (std::getline(ins, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::vector<Int> delta;
    std::string tok;
    while (row >> tok) delta.emplace_back(tok);
    if (static_cast<int>(delta.size()) != s.k - 1)
      throw std::runtime_error("shift_set: row arity mismatch");
    s.shifts.push_back(std::move(delta));
  }
  return s;
}

protocol3_result protocol3_reduce(std::span<const Int> x, const Int& target,
                                  const shift_set& delta) {
  int k = delta.k;
  if (static_cast<int>(x.size()) != k) throw std::domain_error("protocol3_reduce: arity mismatch");
  const Int& q = delta.q;
  int d = delta.d;

  auto good = lowest_good_shift(x.first(k - 1), delta);
  if (!good)
    throw std::runtime_error("protocol3_reduce: no good shift in the covering set");
  const std::vector<Int>& dv = delta.shifts[*good];

  std::vector<digit_vector> w;
  w.reserve(k - 1);
  Int delta_sum = 0;
  for (int i = 0; i < k - 1; ++i) {
    w.push_back(encode(x[i] + dv[i], q, d, digit_mode::centered));
    delta_sum += dv[i];
  }
  Int a_last = target - x[k - 1] + delta_sum;
  digit_vector w_last = encode(a_last, q, d + 1, digit_mode::centered);

  carry_string s = compute_carry_string(w);
  carry_vector ws = to_carry_vector(s, q);

  protocol3_result res;
  res.delta_index = *good;
  res.vectors.assign(k, std::vector<Int>(d + 1, Int(0)));
  for (int i = 0; i < k - 1; ++i)
    for (int j = 0; j < d; ++j) res.vectors[i][j] = w[i].digits[j];
  for (int j = 0; j <= d; ++j) res.vectors[k - 1][j] = -w_last.digits[j] + ws.entries[j];
  return res;
}

namespace {

// Player p's squared-length value entering the NIH phase of the improved
// protocol, recomputed from its view and the broadcast shift index.
Int improved_start_value(const player_view& view, const transcript& tr, const Int& target,
                         const shift_set& delta) {
  int k = delta.k;
  int p = view.self();
  const Int& q = delta.q;
  int d = delta.d;
  std::size_t idx = tr.find("cover.index").symbol.get_ui();
  const std::vector<Int>& dv = delta.shifts.at(idx);

  std::vector<digit_vector> w_front;  // operands among the first k-1 that p can see
  w_front.reserve(k - 1);
  Int delta_sum = 0;
  for (int i = 0; i < k - 1; ++i) delta_sum += dv[i];
  for (int i = 0; i < k - 1; ++i) {
    if (i == p) continue;
    w_front.push_back(encode(view.input(i) + dv[i], q, d, digit_mode::centered));
  }

  carry_string s;
  if (p == k - 1) {
    s = compute_carry_string(w_front);  // sees all of the first k-1
  } else {
    std::vector<int> zero_parities(d, 0);
    s = reconstruct_carry(zero_parities, w_front, q);
  }
  carry_vector ws = to_carry_vector(s, q);

  // the visible v vectors, padded to d+1 coordinates
  std::vector<std::vector<Int>> v(k);
  {
    std::size_t seen = 0;
    for (int i = 0; i < k - 1; ++i) {
      if (i == p) continue;
      v[i].assign(d + 1, Int(0));
      for (int j = 0; j < d; ++j) v[i][j] = w_front[seen].digits[j];
      ++seen;
    }
  }
  if (p != k - 1) {
    Int a_last = target - view.input(k - 1) + delta_sum;
    digit_vector w_last = encode(a_last, q, d + 1, digit_mode::centered);
    v[k - 1].assign(d + 1, Int(0));
    for (int j = 0; j <= d; ++j) v[k - 1][j] = -w_last.digits[j] + ws.entries[j];
  }

  // forced-guess progression term per coordinate, then its squared length
  Int z = 0;
  for (int j = 0; j <= d; ++j) {
    Int others_sum = 0, weighted = 0;
    for (int l = 0; l < k; ++l) {
      if (l == p) continue;
      others_sum += v[l][j];
      weighted += Int(l + 1) * v[l][j];
    }
    Int y = Int(p + 1) * (-others_sum) + weighted;
    z += y * y;
  }
  return z;
}

}  // namespace

exactlyn_bundle exactlyn_protocol(int k, const Int& n, exactlyn_variant variant,
                                  std::uint64_t seed, std::optional<interval> domain) {
  if (k < 3) throw std::domain_error("exactlyn_protocol: need k >= 3");
  if (n < 1) throw std::domain_error("exactlyn_protocol: need n >= 1");
  interval dom = domain.value_or(interval{1, n});

  exactlyn_bundle bundle;
  protocol& proto = bundle.proto;
  proto.vis = model::nof;
  proto.players = k;
  proto.domains.assign(k, dom);
  Int target = n;
  proto.promise = nullptr;

  if (variant == exactlyn_variant::trivial) {
    // player k announces the value player k's forehead must carry (or an
    // explicit out-of-range marker), a neighbor verifies
    Int size = dom.size();
    step announce;
    announce.speaker = k - 1;
    announce.alphabet = size + 1;
    announce.label = "trivial.announce";
    announce.emit = [k, target, dom, size](const player_view& view, const transcript&) -> Int {
      Int missing = target;
      for (int j = 0; j < k - 1; ++j) missing -= view.input(j);
      if (!dom.contains(missing)) return size;  // reject marker
      return Int(missing - dom.lo);
    };
    proto.steps.push_back(std::move(announce));

    step verify;
    verify.speaker = 0;
    verify.alphabet = 2;
    verify.is_vote = true;
    verify.label = "trivial.verify";
    verify.emit = [k, dom, size](const player_view& view, const transcript& tr) -> Int {
      const message& m = tr.find("trivial.announce");
      bool ok = m.symbol != size && view.input(k - 1) == dom.lo + m.symbol;
      return Int(ok ? 1 : 0);
    };
    proto.steps.push_back(std::move(verify));
    proto.declared_cost_bits = ceil_log2(size + 1) + 1;
    return bundle;
  }

  if (variant == exactlyn_variant::cfl_rankin) {
    interval xdom = cfl_range(proto.domains, target);
    nih_schedule sched = plan_kpp_equality(k, 1, xdom);
    bundle.schedule = sched;
    value_source source = [target](const player_view& view, const transcript&) {
      return cfl_value(view, target);
    };
    append_nih_steps(proto, sched, source);
    proto.declared_cost_bits = sched.cost_bits();
    return bundle;
  }

  // improved variant
  if (domain && !(dom.lo == 1 && dom.hi == n))
    throw std::domain_error("exactlyn_protocol: improved variant runs on the standard domain");

  // carry-phase parameters: an odd radix with enough digits for the inputs,
  // wide enough that every shifted value and the adjusted last value stay
  // centered-representable
  int d = std::max<int>(1, static_cast<int>(std::llround(std::sqrt(2.0L * std::max(1.0L, log2_int(n))))));
  Int q = std::max(3, k);  // odd and strictly above the operand count k-1
  if (mpz_even_p(q.get_mpz_t())) ++q;
  while (true) {
    Int qd = pow_int(q, static_cast<unsigned long>(d));
    if (qd >= n) {
      Int half = (qd - 1) / 2;
      Int top_half = (qd * q - 1) / 2;
      if (Int(k - 1) * (half + n) <= top_half) break;
    }
    q += 2;
  }
  bundle.carry_q = q;
  bundle.carry_d = d;
  auto delta = std::make_shared<const shift_set>(build_shift_set(n, k, q, d, seed));
  bundle.delta = *delta;

  step pick;
  pick.speaker = k - 1;
  pick.alphabet = Int(static_cast<unsigned long>(delta->shifts.size()));
  pick.label = "cover.index";
  pick.emit = [delta, k](const player_view& view, const transcript&) -> Int {
    std::vector<Int> front(k - 1);
    for (int i = 0; i < k - 1; ++i) front[i] = view.input(i);
    auto idx = lowest_good_shift(front, *delta);
    if (!idx) throw std::runtime_error("exactlyn improved: covering violation");
    return Int(static_cast<unsigned long>(*idx));
  };
  long long pick_bits = ceil_log2(pick.alphabet);
  proto.steps.push_back(std::move(pick));

  // per-coordinate value bound after the forced-guess step, exact
  Int v1 = (q - 1) / 2;
  Int vk = v1 + Int(k - 2) * (q + 1);
  Int bound = 0;
  for (int p = 0; p < k; ++p) {
    Int b = 0;
    for (int l = 0; l < k; ++l) {
      if (l == p) continue;
      b += Int(p + l + 2) * (l == k - 1 ? vk : v1);
    }
    if (b > bound) bound = b;
  }
  if (bound > Int(k) * k * k * q)
    throw std::logic_error("exactlyn improved: coordinate bound exceeds k^3 q");
  interval zdom{0, Int(d + 1) * bound * bound};

  nih_schedule sched = plan_kpp_equality(k, 2, zdom);
  bundle.schedule = sched;
  value_source source = [delta, target](const player_view& view, const transcript& tr) {
    return improved_start_value(view, tr, target, *delta);
  };
  append_nih_steps(proto, sched, source);
  proto.declared_cost_bits = pick_bits + sched.cost_bits();
  return bundle;
}

}  // namespace exactn
