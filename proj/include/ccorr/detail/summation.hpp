#pragma once

#include <cstddef>

namespace ccorr::detail {

// Pairwise (cascade) summation of term(i) over [first, last). Error grows as
// O(log n) instead of O(n) for the naive left fold.
template <typename Term>
double pairwise_sum(std::size_t first, std::size_t last, const Term& term) {
  constexpr std::size_t kLeaf = 8;
  if (last - first <= kLeaf) {
    double acc = 0.0;
    for (std::size_t i = first; i < last; ++i) acc += term(i);
    return acc;
  }
  const std::size_t mid = first + (last - first) / 2;
  return pairwise_sum(first, mid, term) + pairwise_sum(mid, last, term);
}

template <typename Term>
double pairwise_mean(std::size_t n, const Term& term) {
  return pairwise_sum(0, n, term) / static_cast<double>(n);
}

}  // namespace ccorr::detail
