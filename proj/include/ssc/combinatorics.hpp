#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace ssc {

// Number of k-subsets of an n-set, saturating instead of overflowing.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    if (result > UINT64_MAX / static_cast<std::uint64_t>(n - k + i)) {
      return UINT64_MAX;
    }
    result = result * static_cast<std::uint64_t>(n - k + i) /
             static_cast<std::uint64_t>(i);
  }
  return result;
}

// Visits all k-subsets of {0,...,n-1} in lexicographic order. The visitor
// returns false to stop early; for_each_combination then returns false.
inline bool for_each_combination(
    int n, int k, const std::function<bool(const std::vector<int>&)>& visit) {
  if (k < 0 || k > n) return true;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!visit(idx)) return false;
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) return true;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace ssc
