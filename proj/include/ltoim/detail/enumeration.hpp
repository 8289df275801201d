#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace ltoim::detail {

// C(n, k), saturated at cap + 1 so callers can test caps without overflow.
inline std::uint64_t count_combinations(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

// Calls fn once per k-subset of {0..n-1}, in lexicographic order.
template <class Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(static_cast<const std::vector<int>&>(idx));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Stable FNV-1a hash of a node set; used to derive per-set RNG substreams.
inline std::uint64_t set_hash(std::span<const int> sorted_ids) {
  std::uint64_t h = 1469598103934665603ULL;
  for (int v : sorted_ids) {
    for (int b = 0; b < 4; ++b) {
      h ^= static_cast<std::uint64_t>((static_cast<unsigned>(v) >> (8 * b)) & 0xFF);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

}  // namespace ltoim::detail
