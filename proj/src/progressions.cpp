#include "exactn/progressions.hpp"

#include <stdexcept>

namespace exactn {

Int l_operator(std::span<const Int> window) {
  if (window.size() < 2) throw std::domain_error("l_operator: window length must be >= 2");
  unsigned long m1 = window.size() - 1;  // m + 1
  Int acc = 0;
  Int binom = 1;  // C(m+1, 0)
  for (unsigned long i = 0; i < window.size(); ++i) {
    if (i % 2 == 0)
      acc += binom * window[i];
    else
      acc -= binom * window[i];
    // C(m+1, i+1) = C(m+1, i) * (m+1-i) / (i+1)
    binom = binom * static_cast<long>(m1 - i) / static_cast<long>(i + 1);
  }
  return acc;
}

bool is_kpp(std::span<const Int> terms, int degree) {
  if (degree < 0) throw std::domain_error("is_kpp: degree must be >= 0");
  if (terms.empty()) throw std::domain_error("is_kpp: need at least one term");
  int k = static_cast<int>(terms.size());
  int window = degree + 2;
  if (k <= degree + 1) return true;  // any k points interpolate
  for (int start = 0; start + window <= k; ++start)
    if (l_operator(terms.subspan(start, window)) != 0) return false;
  return true;
}

bool is_kvecpp(std::span<const std::vector<Int>> terms, int degree) {
  if (terms.empty()) throw std::domain_error("is_kvecpp: need at least one term");
  std::size_t dim = terms.front().size();
  for (const auto& t : terms)
    if (t.size() != dim) throw std::domain_error("is_kvecpp: dimension mismatch");
  std::vector<Int> column(terms.size());
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < terms.size(); ++i) column[i] = terms[i][j];
    if (!is_kpp(column, degree)) return false;
  }
  return true;
}

bool is_trivial(std::span<const Int> terms) {
  if (terms.empty()) return true;
  for (const auto& t : terms)
    if (t != terms.front()) return false;
  return true;
}

bool is_trivial_vec(std::span<const std::vector<Int>> terms) {
  if (terms.empty()) return true;
  for (const auto& t : terms)
    if (t != terms.front()) return false;
  return true;
}

}  // namespace exactn
