#include "exactn/comm.hpp"

#include <sstream>
#include <stdexcept>

namespace exactn {

long long transcript::total_bits() const {
  long long bits = 0;
  for (const auto& m : messages) bits += ceil_log2(m.alphabet);
  return bits;
}

long long transcript::bits_for_label(std::string_view prefix) const {
  long long bits = 0;
  for (const auto& m : messages)
    if (std::string_view(m.label).substr(0, prefix.size()) == prefix) bits += ceil_log2(m.alphabet);
  return bits;
}

const message& transcript::find(std::string_view prefix) const {
  for (const auto& m : messages)
    if (std::string_view(m.label).substr(0, prefix.size()) == prefix) return m;
  throw std::runtime_error("transcript: no message labeled " + std::string(prefix));
}

std::string transcript::to_text() const {
  std::ostringstream out;
  for (const auto& m : messages)
    out << m.speaker + 1 << " " << m.symbol.get_str() << " " << m.alphabet.get_str() << "\n";
  return out.str();
}

const Int& player_view::input(int j) const {
  if (j < 0 || j >= players()) throw std::out_of_range("player_view: no such player");
  if (!can_see(j))
    throw std::logic_error("player_view: player " + std::to_string(self_ + 1) +
                           " tried to read a hidden input");
  return (*all_)[j];
}

outcome run(const protocol& p, const input_assignment& in) {
  if (static_cast<int>(in.values.size()) != p.players)
    throw std::domain_error("run: wrong number of inputs");
  if (static_cast<int>(p.domains.size()) != p.players)
    throw std::domain_error("run: protocol lacks per-player domains");
  for (int i = 0; i < p.players; ++i)
    if (!p.domains[i].contains(in.values[i]))
      throw std::domain_error("run: input of player " + std::to_string(i + 1) +
                              " outside its declared domain");
  long long round_limit = 10 * (p.declared_cost_bits + p.players);
  if (static_cast<long long>(p.steps.size()) > round_limit)
    throw std::runtime_error("run: schedule exceeds the round limit");

  outcome result;
  result.output = true;
  for (const auto& st : p.steps) {
    if (st.speaker < 0 || st.speaker >= p.players)
      throw std::runtime_error("run: step with invalid speaker");
    if (st.is_vote && st.alphabet != 2)
      throw std::runtime_error("run: vote steps must use a binary alphabet");
    player_view view(p.vis, st.speaker, in.values);
    Int sym = st.emit(view, result.record);
    if (sym < 0 || sym >= st.alphabet)
      throw std::runtime_error("run: player " + std::to_string(st.speaker + 1) +
                               " emitted a symbol outside its alphabet");
    if (st.is_vote && sym == 0) result.output = false;
    result.record.messages.push_back({st.speaker, sym, st.alphabet, st.label});
  }
  return result;
}

bool check_visibility(const protocol& p, const input_assignment& in,
                      int probe_budget, std::uint64_t seed) {
  outcome truth = run(p, in);
  seeded_rng rng(seed);

  for (std::size_t si = 0; si < p.steps.size(); ++si) {
    const step& st = p.steps[si];
    transcript prefix;
    prefix.messages.assign(truth.record.messages.begin(), truth.record.messages.begin() + si);
    const Int& expected = truth.record.messages[si].symbol;

    for (int hidden = 0; hidden < p.players; ++hidden) {
      bool is_hidden = p.vis == model::nof ? hidden == st.speaker : hidden != st.speaker;
      if (!is_hidden) continue;
      const interval& dom = p.domains[hidden];
      std::vector<Int> probe_values;
      if (dom.size() <= probe_budget) {
        for (Int v = dom.lo; v <= dom.hi; ++v) probe_values.push_back(v);
      } else {
        for (int t = 0; t < probe_budget; ++t) probe_values.push_back(rng.between(dom.lo, dom.hi));
      }
      std::vector<Int> modified = in.values;
      for (const Int& v : probe_values) {
        modified[hidden] = v;
        player_view view(p.vis, st.speaker, modified);
        if (st.emit(view, prefix) != expected) return false;
      }
    }
  }
  return true;
}

Int pack_digits(std::span<const Int> digits, const Int& radix) {
  Int v = 0;
  for (std::size_t j = digits.size(); j-- > 0;) {
    if (digits[j] < 0 || digits[j] >= radix)
      throw std::domain_error("pack_digits: digit outside [0, radix)");
    v = v * radix + digits[j];
  }
  return v;
}

std::vector<Int> unpack_digits(const Int& value, const Int& radix, int count) {
  std::vector<Int> digits(count);
  Int rest = value;
  for (int j = 0; j < count; ++j) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), rest.get_mpz_t(), radix.get_mpz_t());
    digits[j] = r;
    rest = (rest - r) / radix;
  }
  if (rest != 0) throw std::domain_error("unpack_digits: value too large for digit count");
  return digits;
}

}  // namespace exactn
