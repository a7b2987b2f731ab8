#pragma once

#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace factorlab {

/// Binomial coefficient C(n, r); zero when r is out of [0, n].
inline std::uint64_t binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  std::uint64_t result = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    result = result * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

/// Calls fn(const std::vector<T>&) for every r-subset of `items`, in
/// lexicographic order of positions. Stops early when fn returns false.
template <typename T, typename Fn>
bool for_each_subset_of(const std::vector<T>& items, std::size_t r, Fn&& fn) {
  const std::size_t n = items.size();
  if (r > n) return true;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  std::vector<T> current(r);
  while (true) {
    for (std::size_t i = 0; i < r; ++i) current[i] = items[idx[i]];
    if constexpr (std::is_same_v<decltype(fn(current)), bool>) {
      if (!fn(current)) return false;
    } else {
      fn(current);
    }
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Calls fn for every r-subset of {0, ..., n-1} in lexicographic order.
template <typename Int, typename Fn>
bool for_each_combination(Int n, std::size_t r, Fn&& fn) {
  std::vector<Int> items(static_cast<std::size_t>(n));
  for (Int i = 0; i < n; ++i) items[static_cast<std::size_t>(i)] = i;
  return for_each_subset_of(items, r, std::forward<Fn>(fn));
}

/// Colexicographic rank of a sorted r-subset: sum of C(c_i, i + 1).
template <typename Int>
std::uint64_t colex_rank(const std::vector<Int>& sorted_subset) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < sorted_subset.size(); ++i) {
    rank += binomial(static_cast<std::int64_t>(sorted_subset[i]), static_cast<std::int64_t>(i + 1));
  }
  return rank;
}

}  // namespace factorlab
