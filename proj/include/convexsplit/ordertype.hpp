#pragma once

// Order-type homogeneity, sign sequences of d-subsets and the flip property
// for point sequences.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "convexsplit/detail/combinatorics.hpp"
#include "convexsplit/exactgeom.hpp"

namespace convexsplit {

namespace detail {

inline std::string format_indices(std::span<const std::size_t> idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s + "}";
}

inline void check_increasing(std::span<const std::size_t> idx, std::size_t n,
                             std::size_t expected_size, const char* what) {
  if (idx.size() != expected_size) {
    throw PreconditionError(std::string(what) + ": expected " + std::to_string(expected_size) +
                            " indices, got " + std::to_string(idx.size()));
  }
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= n || (i > 0 && idx[i] <= idx[i - 1])) {
      throw PreconditionError(std::string(what) + ": indices must be strictly increasing and < " +
                              std::to_string(n));
    }
  }
}

/// Orientation of a sorted (d+1)-subset; zero is a general-position error.
inline int checked_sign(const PointSeq& seq, std::span<const std::size_t> idx) {
  int s = seq.orientation(idx);
  if (s == 0) {
    throw GeneralPositionError("zero orientation for " + format_indices(idx),
                               std::vector<std::size_t>(idx.begin(), idx.end()));
  }
  return s;
}

} // namespace detail

/// Sign of the (d+1)-tuple at strictly increasing positions `idx`.
inline int tuple_sign(const PointSeq& seq, std::span<const std::size_t> idx) {
  detail::check_increasing(idx, seq.size(), seq.dim() + 1, "tuple_sign");
  return detail::checked_sign(seq, idx);
}

inline int tuple_sign(const PointSeq& seq, std::initializer_list<std::size_t> idx) {
  return tuple_sign(seq, std::span<const std::size_t>(idx.begin(), idx.size()));
}

struct HomogeneityReport {
  bool homogeneous = true;
  /// Common sign when homogeneous.
  std::optional<int> sign;
  /// Two opposite-sign (d+1)-tuples when not homogeneous: the first tuple in
  /// lexicographic order and the first one disagreeing with it.
  std::optional<std::array<std::vector<std::size_t>, 2>> witnesses;
};

/// Checks all C(n, d+1) tuples for a common orientation sign.
inline HomogeneityReport is_order_type_homogeneous(const PointSeq& seq) {
  const std::size_t d = seq.dim();
  if (seq.size() < d + 1) {
    throw PreconditionError("homogeneity needs at least d+1 = " + std::to_string(d + 1) +
                            " points");
  }
  HomogeneityReport out;
  int first = 0;
  std::vector<std::size_t> first_tuple;
  detail::for_each_combination(seq.size(), d + 1, [&](std::span<const std::size_t> c) {
    int s = detail::checked_sign(seq, c);
    if (first == 0) {
      first = s;
      first_tuple.assign(c.begin(), c.end());
      return true;
    }
    if (s == first) return true;
    out.homogeneous = false;
    out.witnesses = std::array<std::vector<std::size_t>, 2>{
        first_tuple, std::vector<std::size_t>(c.begin(), c.end())};
    return false;
  });
  if (out.homogeneous) out.sign = first;
  return out;
}

/// Sign sequence of a d-subset R: sgn({p_i} u R) for every i outside R, in order.
struct SignSeq {
  std::vector<std::size_t> subset;
  std::vector<std::size_t> positions;  // the i's, increasing
  std::vector<int> entries;
};

inline SignSeq sign_sequence(const PointSeq& seq, std::span<const std::size_t> subset) {
  const std::size_t d = seq.dim();
  detail::check_increasing(subset, seq.size(), d, "sign_sequence");
  SignSeq out;
  out.subset.assign(subset.begin(), subset.end());
  std::vector<std::size_t> tuple(d + 1);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (std::binary_search(subset.begin(), subset.end(), i)) continue;
    auto pos = std::lower_bound(subset.begin(), subset.end(), i) - subset.begin();
    std::copy(subset.begin(), subset.begin() + pos, tuple.begin());
    tuple[static_cast<std::size_t>(pos)] = i;
    std::copy(subset.begin() + pos, subset.end(), tuple.begin() + pos + 1);
    out.positions.push_back(i);
    out.entries.push_back(detail::checked_sign(seq, tuple));
  }
  return out;
}

inline SignSeq sign_sequence(const PointSeq& seq, std::initializer_list<std::size_t> subset) {
  return sign_sequence(seq, std::span<const std::size_t>(subset.begin(), subset.size()));
}

/// Number of indices i with s_i != s_{i+1}; zero entries are rejected.
inline std::size_t count_sign_changes(std::span<const int> signs) {
  for (int s : signs) {
    if (s != 1 && s != -1) throw PreconditionError("sign sequences may only contain +1 and -1");
  }
  return detail::sign_changes(signs);
}

inline std::size_t count_sign_changes(const SignSeq& s) { return count_sign_changes(s.entries); }

inline std::size_t count_sign_changes(std::initializer_list<int> signs) {
  return count_sign_changes(std::span<const int>(signs.begin(), signs.size()));
}

struct FlipReport {
  bool flip = true;
  /// Lexicographically least d-subset whose sign sequence changes sign twice.
  std::optional<SignSeq> witness;
};

/// True iff every d-subset has a sign sequence with at most one sign change.
inline FlipReport is_flip(const PointSeq& seq) {
  const std::size_t d = seq.dim();
  if (seq.size() < d + 1) {
    throw PreconditionError("flip check needs at least d+1 = " + std::to_string(d + 1) +
                            " points");
  }
  // Each (d+1)-tuple occurs in d+1 sign sequences; cache signs by colex rank.
  const std::uint64_t tuples = detail::binomial(seq.size(), d + 1);
  std::vector<signed char> cache;
  if (tuples <= (std::uint64_t{1} << 26)) cache.assign(tuples, 0);
  auto scan = detail::flip_scan(seq.size(), d, [&](std::span<const std::size_t> t) {
    if (cache.empty()) return detail::checked_sign(seq, t);
    auto& slot = cache[*detail::colex_rank(t)];
    if (slot == 0) slot = static_cast<signed char>(detail::checked_sign(seq, t));
    return static_cast<int>(slot);
  });
  FlipReport out;
  if (!scan.flip) {
    out.flip = false;
    out.witness = SignSeq{scan.subset, scan.others, scan.signs};
  }
  return out;
}

} // namespace convexsplit
