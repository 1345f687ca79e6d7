#include "exactn/nih_rankin.hpp"

#include <cmath>
#include <stdexcept>

#include "exactn/digits.hpp"
#include "exactn/progressions.hpp"

namespace exactn {

std::vector<Int> reduce_vec_to_int(std::span<const std::vector<Int>> vectors) {
  std::vector<Int> out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) {
    Int acc = 0;
    for (const auto& c : v) acc += c * c;
    out.push_back(acc);
  }
  return out;
}

int_to_vec_result reduce_int_to_vec(std::span<const Int> inputs, const Int& q, int d, int m) {
  if (m < 1) throw std::domain_error("reduce_int_to_vec: m must be >= 1");
  Int pow2m = pow_int(2, static_cast<unsigned long>(m));
  if (q % pow2m != 0) throw std::domain_error("reduce_int_to_vec: q must be a multiple of 2^m");
  Int qd = pow_int(q, static_cast<unsigned long>(d));
  for (const Int& x : inputs)
    if (x < 0 || x >= qd) throw std::domain_error("reduce_int_to_vec: input outside [0, q^d)");

  Int c = q / pow2m;
  int_to_vec_result res;
  res.vectors.reserve(inputs.size());
  res.shifts.reserve(inputs.size());
  for (const Int& x : inputs) {
    digit_vector w = encode(x, q, d, digit_mode::standard);
    std::vector<Int> fine(d), coarse(d);
    for (int j = 0; j < d; ++j) {
      Int lo, hi;
      mpz_fdiv_qr(hi.get_mpz_t(), lo.get_mpz_t(), w.digits[j].get_mpz_t(), c.get_mpz_t());
      coarse[j] = hi;
      fine[j] = lo;
    }
    res.vectors.push_back(std::move(fine));
    res.shifts.push_back(std::move(coarse));
  }
  res.noted.assign(inputs.size(), 0);
  for (std::size_t i = 1; i < inputs.size(); ++i)
    res.noted[i] = res.shifts[i] != res.shifts[0];
  return res;
}

chosen_parameters choose_parameters(const Int& n, int m, int level) {
  if (n < 2 || m < 1 || level < 1) throw std::domain_error("choose_parameters: bad arguments");
  long double logn = log2_int(n);
  long double i = static_cast<long double>(level);
  long double md = std::exp2(i / 2.0L) *
                   std::pow(std::pow(static_cast<long double>(m), i) * logn, 1.0L / (i + 1.0L));

  chosen_parameters p;
  p.d_real = md / static_cast<long double>(m);
  p.q_real = std::exp2(logn / p.d_real);
  p.d = static_cast<long long>(std::ceil(p.d_real));
  if (p.d < 1) p.d = 1;

  Int pow2m = pow_int(2, static_cast<unsigned long>(m));
  // smallest multiple of 2^m at or above the 64-significant-bit value of the
  // real optimum; shifts round up so we never land below it
  int exp2q;
  long double mant = std::frexp(p.q_real, &exp2q);  // q_real = mant * 2^exp2q
  Int scaled(static_cast<unsigned long>(std::ceil(std::ldexp(mant, 62))));
  Int qapprox;
  int shift = exp2q - 62;
  if (shift >= 0) {
    qapprox = scaled << shift;
  } else {
    Int mask = (Int(1) << (-shift)) - 1;
    qapprox = (scaled + mask) >> (-shift);
  }
  p.q = ((qapprox + pow2m - 1) / pow2m) * pow2m;

  // restore exactness lost to rounding
  while (pow_int(p.q, static_cast<unsigned long>(p.d)) < n) ++p.d;
  return p;
}

long long nih_schedule::cost_bits() const {
  long long bits = 0;
  for (const auto& lvl : levels) bits += static_cast<long long>(lvl.m) * lvl.d;
  return bits + ceil_log2(final_domain.size()) + (k - 1);
}

static int levels_remaining(int k, int m) {
  // ceil(log2(k / m)) computed exactly
  int t = 0;
  Int pw = m;
  while (pw < k) {
    pw *= 2;
    ++t;
  }
  return t;
}

nih_schedule plan_kpp_equality(int k, int m, interval domain) {
  if (k < 2 || m < 1 || m > k - 1) throw std::domain_error("plan_kpp_equality: need 1 <= m <= k-1");
  if (domain.lo > domain.hi) throw std::domain_error("plan_kpp_equality: empty domain");
  nih_schedule sched;
  sched.k = k;
  int mcur = m;
  interval cur = domain;
  // a one-point domain pins every player's value; only the endgame votes
  // (which carry earlier mismatch notes) remain useful
  while (2 * mcur < k && cur.size() > 1) {
    int level_index = levels_remaining(k, mcur) - 1;  // >= 1 here
    chosen_parameters p = choose_parameters(cur.size(), mcur, level_index);
    nih_level lvl;
    lvl.m = mcur;
    lvl.q = p.q;
    lvl.d = p.d;
    lvl.domain = cur;
    lvl.label = "digitshift.round" + std::to_string(sched.levels.size());
    sched.levels.push_back(lvl);

    Int c = p.q / pow_int(2, static_cast<unsigned long>(mcur));
    Int top = c - 1;
    cur = interval{0, Int(static_cast<long>(p.d)) * top * top};  // squared lengths of the fine parts
    mcur *= 2;
  }
  sched.final_domain = cur;
  return sched;
}

nih_replay_result replay_nih(const nih_schedule& sched, const Int& start, const transcript& tr) {
  nih_replay_result res;
  res.noted = false;
  Int value = start;
  for (const auto& lvl : sched.levels) {
    Int shifted = value - lvl.domain.lo;
    Int one[] = {shifted};
    int_to_vec_result red = reduce_int_to_vec(one, lvl.q, static_cast<int>(lvl.d), lvl.m);
    Int pow2m = pow_int(2, static_cast<unsigned long>(lvl.m));
    Int mine = pack_digits(red.shifts[0], pow2m);
    const message& broadcast = tr.find(lvl.label);
    if (mine != broadcast.symbol) res.noted = true;
    std::vector<Int> z = reduce_vec_to_int(red.vectors);
    value = z[0];
  }
  res.final_value = value;
  return res;
}

void append_nih_steps(protocol& proto, const nih_schedule& sched, const value_source& source) {
  // Digit-shift rounds: player 1 broadcasts its coarse digits.
  for (std::size_t li = 0; li < sched.levels.size(); ++li) {
    const nih_level& lvl = sched.levels[li];
    step st;
    st.speaker = 0;
    st.alphabet = pow_int(2, static_cast<unsigned long>(lvl.m) * static_cast<unsigned long>(lvl.d));
    st.label = lvl.label;
    nih_schedule upto = sched;
    upto.levels.resize(li);
    st.emit = [upto, lvl, source](const player_view& view, const transcript& tr) -> Int {
      Int value = replay_nih(upto, source(view, tr), tr).final_value;
      Int shifted = value - lvl.domain.lo;
      Int one[] = {shifted};
      int_to_vec_result red = reduce_int_to_vec(one, lvl.q, static_cast<int>(lvl.d), lvl.m);
      return pack_digits(red.shifts[0], pow_int(2, static_cast<unsigned long>(lvl.m)));
    };
    proto.steps.push_back(std::move(st));
  }

  // Equality endgame: player 1 reveals, everyone else votes.
  step reveal;
  reveal.speaker = 0;
  reveal.alphabet = sched.final_domain.size();
  reveal.label = "endgame.reveal";
  reveal.emit = [sched, source](const player_view& view, const transcript& tr) -> Int {
    nih_replay_result r = replay_nih(sched, source(view, tr), tr);
    return r.final_value - sched.final_domain.lo;
  };
  proto.steps.push_back(std::move(reveal));

  for (int pl = 1; pl < sched.k; ++pl) {
    step vote;
    vote.speaker = pl;
    vote.alphabet = 2;
    vote.is_vote = true;
    vote.label = "endgame.vote" + std::to_string(pl);
    vote.emit = [sched, source](const player_view& view, const transcript& tr) -> Int {
      nih_replay_result r = replay_nih(sched, source(view, tr), tr);
      const message& announced = tr.find("endgame.reveal");
      bool ok = !r.noted && (r.final_value - sched.final_domain.lo) == announced.symbol;
      return Int(ok ? 1 : 0);
    };
    proto.steps.push_back(std::move(vote));
  }
}

kpp_equality kpp_equality_protocol(int k, int m, interval domain) {
  kpp_equality out;
  out.schedule = plan_kpp_equality(k, m, domain);
  out.proto.vis = model::nih;
  out.proto.players = k;
  out.proto.domains.assign(k, domain);
  out.proto.declared_cost_bits = out.schedule.cost_bits();
  value_source own = [](const player_view& view, const transcript&) { return view.own(); };
  append_nih_steps(out.proto, out.schedule, own);
  int deg = m;
  out.proto.promise = [deg](const std::vector<Int>& xs) { return is_kpp(xs, deg); };
  return out;
}

}  // namespace exactn
