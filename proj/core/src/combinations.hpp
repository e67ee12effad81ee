#pragma once

#include <cstddef>
#include <vector>

namespace qmoduli::detail {

// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
// Stops early when f returns false.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) {
    return;
  }
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) {
    pick[i] = i;
  }
  while (true) {
    if (!f(static_cast<const std::vector<std::size_t>&>(pick))) {
      return;
    }
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) {
      --i;
    }
    if (i == 0) {
      return;
    }
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) {
      pick[j] = pick[j - 1] + 1;
    }
  }
}

}  // namespace qmoduli::detail
