#include "exactn/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "exactn/digits.hpp"
#include "exactn/nih_rankin.hpp"
#include "exactn/progressions.hpp"

namespace exactn {

// ---------------------------------------------------------------------------
// file formats

void integer_set::save(std::ostream& out) const {
  out << "# universe " << universe.get_str() << "\n";
  for (const Int& e : elements) out << e.get_str() << "\n";
}

integer_set integer_set::load(std::istream& in) {
  integer_set s;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# universe ", 0) != 0)
    throw std::runtime_error("integer_set: missing universe header");
  s.universe = Int(line.substr(11));
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    s.elements.emplace_back(line);
  }
  std::sort(s.elements.begin(), s.elements.end());
  s.elements.erase(std::unique(s.elements.begin(), s.elements.end()), s.elements.end());
  return s;
}

void grid_set::save(std::ostream& out) const {
  out << "# universe " << side.get_str() << " dims " << dims << "\n";
  for (const auto& p : points) {
    for (int i = 0; i < dims; ++i) out << (i ? "," : "") << p[i].get_str();
    out << "\n";
  }
}

grid_set grid_set::load(std::istream& in) {
  grid_set g;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# universe ", 0) != 0)
    throw std::runtime_error("grid_set: missing universe header");
  {
    std::istringstream hdr(line.substr(2));
    std::string w1, w3;
    std::string side_str;
    hdr >> w1 >> side_str >> w3 >> g.dims;
    g.side = Int(side_str);
  }
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<Int> p;
    std::istringstream row(line);
    std::string tok;
    while (std::getline(row, tok, ',')) p.emplace_back(tok);
    if (static_cast<int>(p.size()) != g.dims) throw std::runtime_error("grid_set: row arity mismatch");
    g.points.push_back(std::move(p));
  }
  return g;
}

std::size_t coloring::cell_index(std::span<const Int> point) const {
  Int idx = 0;
  for (std::size_t i = point.size(); i-- > 0;) {
    if (point[i] < 1 || point[i] > side) throw std::out_of_range("coloring: point outside grid");
    idx = idx * side + (point[i] - 1);
  }
  return static_cast<std::size_t>(idx.get_ui());
}

void coloring::save(std::ostream& out) const {
  if (!grid) {
    out << "# coloring interval n " << n.get_str() << " colors " << count << "\n";
    for (Int x = 1; x <= n; ++x) out << x.get_str() << "," << colors[x.get_ui() - 1] << "\n";
    return;
  }
  out << "# coloring grid side " << side.get_str() << " dims " << dims << " colors " << count << "\n";
  std::vector<Int> point(dims, 1);
  for (std::size_t cell = 0; cell < colors.size(); ++cell) {
    for (int i = 0; i < dims; ++i) out << point[i].get_str() << ",";
    out << colors[cell] << "\n";
    for (int i = 0; i < dims; ++i) {
      if (point[i] < side) {
        ++point[i];
        break;
      }
      point[i] = 1;
    }
  }
}

coloring coloring::load(std::istream& in) {
  coloring c;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# coloring ", 0) != 0)
    throw std::runtime_error("coloring: missing header");
  std::istringstream hdr(line.substr(11));
  std::string kind;
  hdr >> kind;
  std::string word;
  if (kind == "interval") {
    std::string n_str;
    hdr >> word >> n_str >> word >> c.count;
    c.n = Int(n_str);
    c.grid = false;
    c.colors.assign(static_cast<std::size_t>(c.n.get_ui()), 0);
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto comma = line.rfind(',');
      Int x(line.substr(0, comma));
      c.colors[x.get_ui() - 1] = std::stoll(line.substr(comma + 1));
    }
    return c;
  }
  if (kind != "grid") throw std::runtime_error("coloring: bad kind");
  std::string side_str;
  hdr >> word >> side_str >> word >> c.dims >> word >> c.count;
  c.side = Int(side_str);
  c.grid = true;
  std::size_t cells = 1;
  for (int i = 0; i < c.dims; ++i) cells *= static_cast<std::size_t>(c.side.get_ui());
  c.colors.assign(cells, 0);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<Int> p;
    std::string tok;
    std::istringstream row(line);
    while (std::getline(row, tok, ',')) p.emplace_back(tok);
    long long col = static_cast<long long>(p.back().get_si());
    p.pop_back();
    c.colors[c.cell_index(p)] = col;
  }
  return c;
}

// ---------------------------------------------------------------------------
// sphere constructions

namespace {

struct level_params {
  Int q;
  long long d = 0;
};

// Parameters for one digit-restricted level: the shared optimizer, with the
// radix bumped until the allowed-digit box [0, q/2^m)^d is nonempty.
level_params rankin_level_params(const Int& n_level, int m, int level_index) {
  chosen_parameters p = choose_parameters(std::max(Int(2), n_level), m, level_index);
  Int pow2m = pow_int(2, static_cast<unsigned long>(m));
  Int q = p.q;
  while (q / pow2m < 2) q += pow2m;
  return {q, p.d};
}

int remaining_levels(int k, int m) {
  int t = 0;
  Int pw = m;
  while (pw < k) {
    pw *= 2;
    ++t;
  }
  return t;
}

// x in [1, n] whose base-q digits all stay below c, with each squared length.
struct box_census {
  std::vector<Int> values;
  std::vector<Int> lengths;
};

box_census census_small_digits(const Int& n, const Int& q, long long d, const Int& c) {
  box_census out;
  Int limit = pow_int(q, static_cast<unsigned long>(d)) - 1;
  if (n < limit) limit = n;
  for (Int x = 1; x <= limit; ++x) {
    digit_vector w = encode(x, q, static_cast<int>(d), digit_mode::standard);
    bool small = true;
    Int len = 0;
    for (const Int& dig : w.digits) {
      if (dig >= c) {
        small = false;
        break;
      }
      len += dig * dig;
    }
    if (!small) continue;
    out.values.push_back(x);
    out.lengths.push_back(len);
  }
  return out;
}

integer_set singleton_or_empty(const Int& n) {
  integer_set s;
  s.universe = n;
  if (n >= 1) s.elements.push_back(1);
  return s;
}

// One level of the degree-halving recursion: restrict digits below q/2^m,
// then keep the preimage of the allowed squared lengths. At the root the
// allowed lengths are the single most popular one (ties to the smallest);
// below the root they come from the next level up.
integer_set rankin_level(const Int& n_level, int k_star, int m, int m_root) {
  int idx = std::max(1, remaining_levels(k_star, m) - 1);
  level_params lp = rankin_level_params(n_level, m, idx);
  Int c = lp.q / pow_int(2, static_cast<unsigned long>(m));
  box_census box = census_small_digits(n_level, lp.q, lp.d, c);
  if (box.values.empty()) return singleton_or_empty(n_level);

  integer_set out;
  out.universe = n_level;
  if (m == m_root) {
    std::map<Int, std::vector<Int>> buckets;
    for (std::size_t i = 0; i < box.values.size(); ++i)
      buckets[box.lengths[i]].push_back(box.values[i]);
    const std::vector<Int>* best = nullptr;
    for (const auto& [len, members] : buckets)
      if (!best || members.size() > best->size()) best = &members;
    out.elements = *best;
    return out;
  }

  Int top = c - 1;
  Int upper_universe = Int(static_cast<long>(lp.d)) * top * top;
  integer_set allowed = rankin_level(upper_universe, k_star, 2 * m, m_root);
  for (std::size_t i = 0; i < box.values.size(); ++i)
    if (std::binary_search(allowed.elements.begin(), allowed.elements.end(), box.lengths[i]))
      out.elements.push_back(box.values[i]);
  if (out.elements.empty()) return singleton_or_empty(n_level);
  return out;
}

}  // namespace

integer_set rankin_kpp_free_set(const Int& n, int k, int m) {
  if (n < 1) throw std::domain_error("rankin_kpp_free_set: need n >= 1");
  if (k < 3) throw std::domain_error("rankin_kpp_free_set: need k >= 3");
  if (m < 1 || (m & (m - 1)) != 0)
    throw std::domain_error("rankin_kpp_free_set: m must be a positive power of two");

  if (m >= k - 1) {
    // every k-tuple interpolates at this degree, so the level imposes no
    // sphere constraint: the whole allowed-digit box qualifies
    level_params lp = rankin_level_params(n, m, 1);
    Int c = lp.q / pow_int(2, static_cast<unsigned long>(m));
    box_census box = census_small_digits(n, lp.q, lp.d, c);
    integer_set out;
    out.universe = n;
    out.elements = std::move(box.values);
    if (out.elements.empty()) return singleton_or_empty(n);
    return out;
  }

  // largest 2^t + 1 <= k; the construction natively supports that many terms
  // and fewer terms inherit freeness
  int k_star = 3;
  while (2 * (k_star - 1) + 1 <= k) k_star = 2 * (k_star - 1) + 1;
  int m_root = (k_star - 1) / 2;
  if (m > m_root)
    throw std::domain_error("rankin_kpp_free_set: degree too high for the recursion root");
  return rankin_level(n, k_star, m, m_root);
}

integer_set behrend_set(const Int& n) {
  if (n < 1) throw std::domain_error("behrend_set: need n >= 1");
  return rankin_kpp_free_set(n, 3, 1);
}

behrend_stats behrend_parameters(const Int& n) {
  level_params lp = rankin_level_params(n, 1, 1);
  behrend_stats st;
  st.q = lp.q;
  st.d = static_cast<int>(lp.d);
  Int c = lp.q / 2;
  box_census box = census_small_digits(n, lp.q, lp.d, c);
  std::map<Int, std::size_t> buckets;
  for (const Int& len : box.lengths) ++buckets[len];
  st.best_length = -1;
  std::size_t best = 0;
  for (const auto& [len, cnt] : buckets)
    if (cnt > best) {
      best = cnt;
      st.best_length = len;
    }
  // ceil((q/2)^d / (d q^2)) evaluated exactly
  Int num = pow_int(lp.q, static_cast<unsigned long>(lp.d));
  Int den = pow_int(2, static_cast<unsigned long>(lp.d)) * Int(static_cast<long>(lp.d)) * lp.q * lp.q;
  mpz_cdiv_q(st.pigeonhole_bound.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return st;
}

// ---------------------------------------------------------------------------
// freeness oracles

verify_result verify_ap_free(const integer_set& a, int k, std::uint64_t budget, int threads) {
  verify_result res;
  if (static_cast<int>(a.elements.size()) < k || k < 2) return res;
  const auto& e = a.elements;
  std::uint64_t pairs = static_cast<std::uint64_t>(e.size()) * e.size();
  if (pairs > budget) {
    res.result = verdict::budget_exceeded;
    return res;
  }
  res.checked = pairs;

  auto scan = [&](std::size_t from, std::size_t to, verify_result& local) {
    for (std::size_t i = from; i < to; ++i) {
      for (std::size_t j = i + 1; j < e.size(); ++j) {
        Int delta = e[j] - e[i];
        Int term = e[j];
        bool all_in = true;
        for (int step = 2; step < k; ++step) {
          term += delta;
          if (!std::binary_search(e.begin(), e.end(), term)) {
            all_in = false;
            break;
          }
        }
        if (all_in) {
          local.result = verdict::violation_found;
          local.witness.clear();
          for (int step = 0; step < k; ++step) local.witness.push_back(e[i] + step * delta);
          return;
        }
      }
    }
  };

  if (threads <= 1) {
    scan(0, e.size(), res);
    return res;
  }
  std::vector<verify_result> partial(threads);
  std::vector<std::thread> pool;
  std::size_t chunk = (e.size() + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    std::size_t from = std::min(e.size(), t * chunk);
    std::size_t to = std::min(e.size(), from + chunk);
    pool.emplace_back(scan, from, to, std::ref(partial[t]));
  }
  for (auto& th : pool) th.join();
  for (auto& p : partial)
    if (p.result == verdict::violation_found) {
      p.checked = res.checked;
      return p;
    }
  return res;
}

verify_result verify_kpp_free(const integer_set& a, int k, int m, std::uint64_t budget) {
  if (m == 1) return verify_ap_free(a, k, budget);
  verify_result res;
  int n = static_cast<int>(a.elements.size());
  if (n < k) return res;

  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  std::vector<Int> terms(k);
  while (true) {
    if (++res.checked > budget) {
      res.result = verdict::budget_exceeded;
      return res;
    }
    for (int i = 0; i < k; ++i) terms[i] = a.elements[comb[i]];
    if (is_kpp(terms, m)) {  // increasing distinct values, hence nontrivial
      res.result = verdict::violation_found;
      res.witness = terms;
      return res;
    }
    int pos = k - 1;
    while (pos >= 0 && comb[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++comb[pos];
    for (int i = pos + 1; i < k; ++i) comb[i] = comb[i - 1] + 1;
  }
  return res;
}

namespace {

Int pack_point(std::span<const Int> p, const Int& side) {
  Int idx = 0;
  for (std::size_t i = p.size(); i-- > 0;) idx = idx * side + (p[i] - 1);
  return idx;
}

}  // namespace

verify_result verify_corner_free(const grid_set& q, std::uint64_t budget) {
  verify_result res;
  std::vector<Int> packed;
  packed.reserve(q.points.size());
  for (const auto& p : q.points) packed.push_back(pack_point(p, q.side));
  std::sort(packed.begin(), packed.end());

  std::vector<Int> shifted(q.dims);
  for (const auto& p : q.points) {
    Int dlo = 1 - p[0], dhi = q.side - p[0];
    for (int i = 1; i < q.dims; ++i) {
      Int lo_i = 1 - p[i], hi_i = q.side - p[i];
      if (lo_i > dlo) dlo = lo_i;
      if (hi_i < dhi) dhi = hi_i;
    }
    for (Int delta = dlo; delta <= dhi; ++delta) {
      if (delta == 0) continue;
      if (++res.checked > budget) {
        res.result = verdict::budget_exceeded;
        return res;
      }
      bool corner = true;
      for (int i = 0; i < q.dims && corner; ++i) {
        shifted = p;
        shifted[i] += delta;
        if (!std::binary_search(packed.begin(), packed.end(), pack_point(shifted, q.side)))
          corner = false;
      }
      if (corner) {
        res.result = verdict::violation_found;
        res.witness = p;
        res.witness.push_back(delta);
        return res;
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// reductions between sets, colorings, and protocols

grid_set corner_set_from_ap_set(const integer_set& a, const Int& n, int k) {
  if (k < 3) throw std::domain_error("corner_set_from_ap_set: need k >= 3");
  grid_set g;
  g.dims = k - 1;
  g.side = Int(k) * k * n;
  Int offset = (Int(k) * k - 1) * n;

  // enumerate the free coordinates x_2..x_{k-1}; x_1 is forced per element
  std::vector<Int> rest(k - 2, 1);
  std::vector<Int> point(k - 1);
  while (true) {
    Int weighted = 0;
    for (int j = 0; j < k - 2; ++j) weighted += Int(j + 2) * rest[j];
    for (const Int& av : a.elements) {
      Int x1 = av + offset - weighted;
      if (x1 < 1 || x1 > g.side) continue;
      point[0] = x1;
      for (int j = 0; j < k - 2; ++j) point[j + 1] = rest[j];
      g.points.push_back(point);
    }
    int pos = 0;
    while (pos < k - 2 && rest[pos] == g.side) {
      rest[pos] = 1;
      ++pos;
    }
    if (pos == k - 2) break;
    ++rest[pos];
  }
  std::sort(g.points.begin(), g.points.end());
  return g;
}

coloring coloring_from_set(const integer_set& a, const Int& n, std::uint64_t seed) {
  if (a.elements.empty()) throw std::domain_error("coloring_from_set: empty set cannot cover");
  coloring c;
  c.grid = false;
  c.n = n;
  std::size_t cells = static_cast<std::size_t>(n.get_ui());

  long double ln_n = n <= 1 ? 1.0L : log2_int(n) * 0.6931471805599453L;
  Int batch_size = Int(static_cast<unsigned long>(
                       std::ceil(2.0L * to_long_double(Rat(n)) * ln_n /
                                 static_cast<long double>(a.elements.size())))) +
                   8;

  seeded_rng rng(seed);
  std::vector<Int> translates;
  std::vector<long long> owner(cells, -1);

  auto try_batch = [&]() -> bool {
    translates.clear();
    translates.push_back(0);
    for (Int i = 1; i < batch_size; ++i) translates.push_back(rng.between(-n, n));
    std::fill(owner.begin(), owner.end(), -1);
    bool all = true;
    for (Int x = 1; x <= n; ++x) {
      long long got = -1;
      for (std::size_t i = 0; i < translates.size(); ++i) {
        Int preimage = x - translates[i];
        if (std::binary_search(a.elements.begin(), a.elements.end(), preimage)) {
          got = static_cast<long long>(i);
          break;
        }
      }
      owner[x.get_ui() - 1] = got;
      if (got < 0) all = false;
    }
    return all;
  };

  bool covered = false;
  for (int attempt = 0; attempt < 8 && !covered; ++attempt) covered = try_batch();
  if (!covered) {
    // deterministic patch: one dedicated translate per remaining gap
    for (Int x = 1; x <= n; ++x) {
      std::size_t cell = x.get_ui() - 1;
      if (owner[cell] >= 0) continue;
      translates.push_back(x - a.elements.front());
      owner[cell] = static_cast<long long>(translates.size()) - 1;
    }
  }

  // dense color ids in order of first translate use
  std::vector<long long> remap(translates.size(), -1);
  c.colors.assign(cells, 0);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    long long t = owner[cell];
    if (remap[t] < 0) remap[t] = c.count++;
    c.colors[cell] = remap[t];
  }
  return c;
}

coloring grid_coloring_from_set(const grid_set& q, std::uint64_t seed) {
  if (q.points.empty()) throw std::domain_error("grid_coloring_from_set: empty set cannot cover");
  coloring c;
  c.grid = true;
  c.dims = q.dims;
  c.side = q.side;
  std::size_t cells = 1;
  for (int i = 0; i < q.dims; ++i) cells *= static_cast<std::size_t>(q.side.get_ui());
  if (cells == 0) {
    c.count = 1;
    return c;
  }

  std::vector<Int> packed;
  packed.reserve(q.points.size());
  for (const auto& p : q.points) packed.push_back(pack_point(p, q.side));
  std::sort(packed.begin(), packed.end());

  long double ln_cells = std::log(static_cast<long double>(cells));
  Int batch_size = Int(static_cast<unsigned long>(std::ceil(
                       2.0L * cells * std::max(1.0L, ln_cells) /
                       static_cast<long double>(q.points.size())))) +
                   8;

  seeded_rng rng(seed);
  std::vector<std::vector<Int>> translates;
  std::vector<long long> owner(cells, -1);

  auto covered_by = [&](std::span<const Int> point, const std::vector<Int>& t) {
    std::vector<Int> pre(q.dims);
    for (int i = 0; i < q.dims; ++i) {
      pre[i] = point[i] - t[i];
      if (pre[i] < 1 || pre[i] > q.side) return false;
    }
    return std::binary_search(packed.begin(), packed.end(), pack_point(pre, q.side));
  };

  auto try_batch = [&]() -> bool {
    translates.assign(1, std::vector<Int>(q.dims, 0));
    for (Int i = 1; i < batch_size; ++i) {
      std::vector<Int> t(q.dims);
      for (int j = 0; j < q.dims; ++j) t[j] = rng.between(-q.side, q.side);
      translates.push_back(std::move(t));
    }
    std::fill(owner.begin(), owner.end(), -1);
    bool all = true;
    std::vector<Int> point(q.dims, 1);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      long long got = -1;
      for (std::size_t i = 0; i < translates.size(); ++i)
        if (covered_by(point, translates[i])) {
          got = static_cast<long long>(i);
          break;
        }
      owner[cell] = got;
      if (got < 0) all = false;
      for (int i = 0; i < q.dims; ++i) {
        if (point[i] < q.side) {
          ++point[i];
          break;
        }
        point[i] = 1;
      }
    }
    return all;
  };

  bool covered = false;
  for (int attempt = 0; attempt < 8 && !covered; ++attempt) covered = try_batch();
  if (!covered) {
    // deterministic patch anchored at the set's first point
    std::vector<Int> point(q.dims, 1);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      if (owner[cell] < 0) {
        std::vector<Int> t(q.dims);
        for (int i = 0; i < q.dims; ++i) t[i] = point[i] - q.points.front()[i];
        translates.push_back(std::move(t));
        owner[cell] = static_cast<long long>(translates.size()) - 1;
      }
      for (int i = 0; i < q.dims; ++i) {
        if (point[i] < q.side) {
          ++point[i];
          break;
        }
        point[i] = 1;
      }
    }
  }

  std::vector<long long> remap(translates.size(), -1);
  c.colors.assign(cells, 0);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    long long t = owner[cell];
    if (remap[t] < 0) remap[t] = c.count++;
    c.colors[cell] = remap[t];
  }
  return c;
}

coloring corner_coloring_from_ap_coloring(const coloring& c, int k) {
  if (c.grid) throw std::domain_error("corner_coloring_from_ap_coloring: need an interval coloring");
  coloring g;
  g.grid = true;
  g.dims = k - 1;
  g.side = c.n / (Int(k) * k);
  std::size_t cells = 1;
  for (int i = 0; i < g.dims; ++i) cells *= static_cast<std::size_t>(g.side.get_ui());
  g.colors.assign(cells, 0);
  if (cells == 0) {
    g.count = 1;
    return g;
  }

  std::vector<long long> remap(c.count, -1);
  std::vector<Int> point(g.dims, 1);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    Int weighted = 0;
    for (int j = 0; j < g.dims; ++j) weighted += Int(j + 1) * point[j];
    long long col = c.colors[static_cast<std::size_t>(weighted.get_ui()) - 1];
    if (remap[col] < 0) remap[col] = g.count++;
    g.colors[cell] = remap[col];
    for (int i = 0; i < g.dims; ++i) {
      if (point[i] < g.side) {
        ++point[i];
        break;
      }
      point[i] = 1;
    }
  }
  return g;
}

coloring ap_coloring_from_protocol(const protocol& p, const interval& domain) {
  if (domain.lo != 1) throw std::domain_error("ap_coloring_from_protocol: domain must start at 1");
  coloring c;
  c.grid = false;
  c.n = domain.hi;
  std::unordered_map<std::string, long long> ids;
  for (Int w = 1; w <= domain.hi; ++w) {
    input_assignment in;
    in.values.assign(p.players, w);
    outcome out = run(p, in);
    std::string key = out.record.to_text();
    auto [it, fresh] = ids.emplace(key, c.count);
    if (fresh) ++c.count;
    c.colors.push_back(it->second);
  }
  return c;
}

protocol protocol_from_ap_coloring(const coloring& c, int k) {
  if (c.grid) throw std::domain_error("protocol_from_ap_coloring: need an interval coloring");
  protocol p;
  p.vis = model::nih;
  p.players = k;
  p.domains.assign(k, interval{1, c.n});
  Int alphabet = Int(static_cast<long>(c.count));
  std::vector<long long> colors = c.colors;

  step announce;
  announce.speaker = 0;
  announce.alphabet = alphabet;
  announce.label = "color.announce";
  announce.emit = [colors](const player_view& view, const transcript&) -> Int {
    return Int(static_cast<long>(colors[view.own().get_ui() - 1]));
  };
  p.steps.push_back(std::move(announce));
  for (int pl = 1; pl < k; ++pl) {
    step vote;
    vote.speaker = pl;
    vote.alphabet = 2;
    vote.is_vote = true;
    vote.label = "color.vote" + std::to_string(pl);
    vote.emit = [colors](const player_view& view, const transcript& tr) -> Int {
      const message& m = tr.find("color.announce");
      return Int(Int(static_cast<long>(colors[view.own().get_ui() - 1])) == m.symbol ? 1 : 0);
    };
    p.steps.push_back(std::move(vote));
  }
  p.declared_cost_bits = ceil_log2(alphabet) + (k - 1);
  return p;
}

coloring corner_coloring_from_protocol(const protocol& p, int k, const Int& n, const Int& side) {
  coloring c;
  c.grid = true;
  c.dims = k - 1;
  c.side = side;
  std::size_t cells = 1;
  for (int i = 0; i < c.dims; ++i) cells *= static_cast<std::size_t>(side.get_ui());
  std::unordered_map<std::string, long long> ids;

  std::vector<Int> point(c.dims, 1);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    input_assignment in;
    in.values.assign(point.begin(), point.end());
    Int sum = 0;
    for (const Int& x : point) sum += x;
    in.values.push_back(n - sum);
    outcome out = run(p, in);
    std::string key = out.record.to_text();
    auto [it, fresh] = ids.emplace(key, c.count);
    if (fresh) ++c.count;
    c.colors.push_back(it->second);
    for (int i = 0; i < c.dims; ++i) {
      if (point[i] < side) {
        ++point[i];
        break;
      }
      point[i] = 1;
    }
  }
  return c;
}

protocol protocol_from_corner_coloring(const coloring& c, int k, const Int& n) {
  if (!c.grid || c.dims != k - 1)
    throw std::domain_error("protocol_from_corner_coloring: need a (k-1)-dimensional grid coloring");
  protocol p;
  p.vis = model::nof;
  p.players = k;
  p.domains.assign(k - 1, interval{1, c.side});
  p.domains.push_back(interval{1, n});
  auto shared = std::make_shared<const coloring>(c);

  step announce;
  announce.speaker = k - 1;
  announce.alphabet = Int(static_cast<long>(c.count));
  announce.label = "corner.announce";
  announce.emit = [shared, k](const player_view& view, const transcript&) -> Int {
    std::vector<Int> point(k - 1);
    for (int i = 0; i < k - 1; ++i) point[i] = view.input(i);
    return Int(static_cast<long>(shared->colors[shared->cell_index(point)]));
  };
  p.steps.push_back(std::move(announce));

  for (int pl = 0; pl < k - 1; ++pl) {
    step vote;
    vote.speaker = pl;
    vote.alphabet = 2;
    vote.is_vote = true;
    vote.label = "corner.vote" + std::to_string(pl + 1);
    vote.emit = [shared, k, n, pl](const player_view& view, const transcript& tr) -> Int {
      // the unique grid point this player can complete: its own coordinate
      // is replaced by the value forcing the total to n
      Int forced = n;
      for (int j = 0; j < k; ++j)
        if (j != pl) forced -= view.input(j);
      if (forced < 1 || forced > shared->side) return Int(0);
      std::vector<Int> point(k - 1);
      for (int i = 0; i < k - 1; ++i) point[i] = i == pl ? forced : view.input(i);
      const message& m = tr.find("corner.announce");
      return Int(Int(static_cast<long>(shared->colors[shared->cell_index(point)])) == m.symbol ? 1 : 0);
    };
    p.steps.push_back(std::move(vote));
  }
  p.declared_cost_bits = ceil_log2(Int(static_cast<long>(c.count))) + (k - 1);
  return p;
}

verify_result verify_coloring_ap_free(const coloring& c, int k, std::uint64_t budget) {
  verify_result res;
  for (long long col = 0; col < c.count; ++col) {
    integer_set cls;
    cls.universe = c.n;
    for (std::size_t i = 0; i < c.colors.size(); ++i)
      if (c.colors[i] == col) cls.elements.push_back(Int(static_cast<unsigned long>(i + 1)));
    verify_result r = verify_ap_free(cls, k, budget);
    res.checked += r.checked;
    if (r.result != verdict::verified_free) {
      r.checked = res.checked;
      return r;
    }
  }
  return res;
}

verify_result verify_coloring_corner_free(const coloring& c, std::uint64_t budget) {
  verify_result res;
  for (long long col = 0; col < c.count; ++col) {
    grid_set cls;
    cls.dims = c.dims;
    cls.side = c.side;
    std::vector<Int> point(c.dims, 1);
    for (std::size_t cell = 0; cell < c.colors.size(); ++cell) {
      if (c.colors[cell] == col) cls.points.push_back(point);
      for (int i = 0; i < c.dims; ++i) {
        if (point[i] < c.side) {
          ++point[i];
          break;
        }
        point[i] = 1;
      }
    }
    verify_result r = verify_corner_free(cls, budget);
    res.checked += r.checked;
    if (r.result != verdict::verified_free) {
      r.checked = res.checked;
      return r;
    }
  }
  return res;
}

}  // namespace exactn
