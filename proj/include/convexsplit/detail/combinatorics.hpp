#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

namespace convexsplit::detail {

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

/// C(n, r), saturating at kSaturated on overflow.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > kSaturated - 1) return kSaturated;
  }
  return static_cast<std::uint64_t>(acc);
}

/// Visits every r-subset of {0..n-1} in lexicographic order.
/// `fn(std::span<const std::size_t>)` returns false to stop early.
/// Returns false iff stopped early.
template <typename Fn>
bool for_each_combination(std::size_t n, std::size_t r, Fn&& fn) {
  if (r > n) return true;
  std::vector<std::size_t> c(r);
  std::iota(c.begin(), c.end(), std::size_t{0});
  for (;;) {
    if (!fn(std::span<const std::size_t>(c))) return false;
    std::size_t i = r;
    while (i > 0 && c[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) return true;
    ++c[i - 1];
    for (std::size_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
  }
}

/// Like for_each_combination, but over r-subsets of an arbitrary increasing pool.
template <typename Fn>
bool for_each_combination_of(std::span<const std::size_t> pool, std::size_t r, Fn&& fn) {
  std::vector<std::size_t> picked(r);
  return for_each_combination(pool.size(), r, [&](std::span<const std::size_t> c) {
    for (std::size_t i = 0; i < r; ++i) picked[i] = pool[c[i]];
    return fn(std::span<const std::size_t>(picked));
  });
}

/// Colexicographic rank of a strictly increasing subset; nullopt on overflow.
inline std::optional<std::uint64_t> colex_rank(std::span<const std::size_t> subset) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    std::uint64_t b = binomial(subset[i], i + 1);
    if (b == kSaturated || rank > kSaturated - 1 - b) return std::nullopt;
    rank += b;
  }
  return rank;
}

/// Number of adjacent unequal pairs in a sign list (entries assumed nonzero).
inline std::size_t sign_changes(std::span<const int> signs) {
  std::size_t changes = 0;
  for (std::size_t i = 1; i < signs.size(); ++i) {
    if (signs[i] != signs[i - 1]) ++changes;
  }
  return changes;
}

/// Result of scanning every k-subset A of a signed sequence for its sign sequence.
struct FlipScan {
  bool flip = true;
  std::vector<std::size_t> subset;   // lexicographically least violating A
  std::vector<std::size_t> others;   // positions not in A, increasing
  std::vector<int> signs;            // sign sequence of A
};

/// Exhaustive flip check over all k-subsets of n positions.
/// `sign_of(std::span<const std::size_t>)` returns the sign of an increasing (k+1)-subset.
template <typename SignFn>
FlipScan flip_scan(std::size_t n, std::size_t k, SignFn&& sign_of) {
  FlipScan out;
  std::vector<std::size_t> tuple(k + 1);
  std::vector<int> seq;
  std::vector<std::size_t> others;
  seq.reserve(n);
  others.reserve(n);
  for_each_combination(n, k, [&](std::span<const std::size_t> a) {
    // sign of {i} u A, with i inserted in increasing order
    auto sign_with = [&](std::size_t i) {
      std::size_t t = 0;
      bool placed = false;
      for (std::size_t x : a) {
        if (!placed && i < x) {
          tuple[t++] = i;
          placed = true;
        }
        tuple[t++] = x;
      }
      if (!placed) tuple[t] = i;
      return sign_of(std::span<const std::size_t>(tuple));
    };
    seq.clear();
    others.clear();
    std::size_t changes = 0;
    for (std::size_t i = 0, ai = 0; i < n; ++i) {
      if (ai < a.size() && a[ai] == i) {
        ++ai;
        continue;
      }
      int s = sign_with(i);
      if (!seq.empty() && s != seq.back()) ++changes;
      seq.push_back(s);
      others.push_back(i);
      if (changes <= 1) continue;
      for (std::size_t r = i + 1; r < n; ++r) {
        if (std::binary_search(a.begin(), a.end(), r)) continue;
        seq.push_back(sign_with(r));
        others.push_back(r);
      }
      out.flip = false;
      out.subset.assign(a.begin(), a.end());
      out.others = others;
      out.signs = seq;
      return false;
    }
    return true;
  });
  return out;
}

} // namespace convexsplit::detail
