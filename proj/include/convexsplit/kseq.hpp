#pragma once

// Abstract k-sequences: a sequence of distinct elements with a +-1 sign on
// every (k+1)-element subset.  Provides the greedy block partition, the
// reduced subsequence, the flip verifier and the c(k) block-count bound.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "convexsplit/detail/combinatorics.hpp"
#include "convexsplit/exactgeom.hpp"
#include "convexsplit/ordertype.hpp"
#include "convexsplit/rational.hpp"

namespace convexsplit {

using ElementId = long long;

/// Sign of a (k+1)-subset given as strictly increasing positions.
using SignOracle = std::function<int(std::span<const std::size_t>)>;

class KSequence {
public:
  KSequence(std::size_t k, std::vector<ElementId> ids, SignOracle oracle)
      : k_(k), ids_(std::move(ids)), oracle_(std::move(oracle)),
        memo_(std::make_shared<Memo>()) {
    if (k_ < 1) throw PreconditionError("k-sequences need k >= 1");
    if (!oracle_) throw PreconditionError("k-sequence needs a sign oracle");
    std::unordered_set<ElementId> seen;
    for (auto id : ids_) {
      if (!seen.insert(id).second) {
        throw PreconditionError("duplicate element id " + std::to_string(id));
      }
    }
  }

  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<ElementId>& ids() const noexcept { return ids_; }

  /// Memoized sign of the (k+1)-subset at strictly increasing `positions`.
  int sign(std::span<const std::size_t> positions) const {
    if (positions.size() != k_ + 1) {
      throw PreconditionError("sign: expected " + std::to_string(k_ + 1) + " positions");
    }
    auto key = detail::colex_rank(positions);
    if (key) {
      std::shared_lock lock(memo_->mutex);
      if (auto it = memo_->table.find(*key); it != memo_->table.end()) return it->second;
    }
    int s = oracle_(positions);
    if (s != 1 && s != -1) {
      throw PreconditionError("sign oracle returned " + std::to_string(s) + " for " +
                              detail::format_indices(positions));
    }
    if (key) {
      std::unique_lock lock(memo_->mutex);
      memo_->table.emplace(*key, static_cast<signed char>(s));
    }
    return s;
  }

  int sign(std::initializer_list<std::size_t> positions) const {
    return sign(std::span<const std::size_t>(positions.begin(), positions.size()));
  }

  /// Subsequence at strictly increasing `positions`; the oracle is the restriction.
  KSequence restrict(std::vector<std::size_t> positions) const {
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (positions[i] >= size() || (i > 0 && positions[i] <= positions[i - 1])) {
        throw PreconditionError("restrict: positions must be strictly increasing and in range");
      }
    }
    std::vector<ElementId> ids;
    ids.reserve(positions.size());
    for (auto p : positions) ids.push_back(ids_[p]);
    auto parent = std::make_shared<KSequence>(*this);
    auto map = std::make_shared<std::vector<std::size_t>>(std::move(positions));
    std::size_t k = k_;
    SignOracle oracle = [parent, map, k](std::span<const std::size_t> sub) {
      std::vector<std::size_t> up(k + 1);
      for (std::size_t i = 0; i <= k; ++i) up[i] = (*map)[sub[i]];
      return parent->sign(up);
    };
    return KSequence(k_, std::move(ids), std::move(oracle));
  }

private:
  struct Memo {
    std::shared_mutex mutex;
    std::unordered_map<std::uint64_t, signed char> table;
  };

  std::size_t k_;
  std::vector<ElementId> ids_;
  SignOracle oracle_;
  std::shared_ptr<Memo> memo_;
};

/// k-sequence of a point sequence in R^d: k = d, sign = orientation.
/// General position is checked lazily; a zero orientation throws.
inline KSequence from_points(const PointSeq& seq) {
  std::vector<ElementId> ids;
  ids.reserve(seq.size());
  for (auto l : seq.labels()) ids.push_back(static_cast<ElementId>(l));
  return KSequence(seq.dim(), std::move(ids), [seq](std::span<const std::size_t> t) {
    return detail::checked_sign(seq, t);
  });
}

/// k-sequence with an explicit, complete sign table keyed by element ids.
inline KSequence from_sign_table(std::size_t k, std::vector<ElementId> ids,
                                 const std::vector<std::pair<std::vector<ElementId>, int>>& table) {
  std::unordered_map<ElementId, std::size_t> pos;
  for (std::size_t i = 0; i < ids.size(); ++i) pos.emplace(ids[i], i);
  const std::uint64_t expected = detail::binomial(ids.size(), k + 1);
  if (expected > (std::uint64_t{1} << 26)) throw PreconditionError("sign table too large");
  auto signs = std::make_shared<std::vector<signed char>>(expected, 0);
  for (const auto& [subset, s] : table) {
    if (subset.size() != k + 1) {
      throw PreconditionError("sign table entry has " + std::to_string(subset.size()) +
                              " elements, expected " + std::to_string(k + 1));
    }
    if (s != 1 && s != -1) throw PreconditionError("sign table entries must be +1 or -1");
    std::vector<std::size_t> p;
    for (auto id : subset) {
      auto it = pos.find(id);
      if (it == pos.end()) throw PreconditionError("unknown element id " + std::to_string(id));
      p.push_back(it->second);
    }
    std::sort(p.begin(), p.end());
    if (std::adjacent_find(p.begin(), p.end()) != p.end()) {
      throw PreconditionError("sign table entry repeats an element");
    }
    auto& slot = (*signs)[*detail::colex_rank(p)];
    if (slot != 0) throw PreconditionError("sign table lists a subset twice");
    slot = static_cast<signed char>(s);
  }
  if (static_cast<std::uint64_t>(std::count(signs->begin(), signs->end(), 0)) != 0) {
    throw PreconditionError("sign table is incomplete: every (k+1)-subset needs a sign");
  }
  return KSequence(k, std::move(ids), [signs](std::span<const std::size_t> t) {
    return static_cast<int>((*signs)[*detail::colex_rank(t)]);
  });
}

/// One block of a greedy partition, as an inclusive position interval.
struct Block {
  std::size_t first = 0;
  std::size_t last = 0;
  /// Common sign of the block's (k+1)-subsets; empty for a last block with <= k elements.
  std::optional<int> sign;
  /// For every block but the last: the lexicographically least k-subset D of
  /// the block with sign(D u {last+1}) != sign.
  std::vector<std::size_t> witness;

  std::size_t size() const noexcept { return last - first + 1; }
};

struct GreedyPartition {
  std::vector<Block> blocks;

  std::size_t m() const noexcept { return blocks.size(); }
};

/// Left-to-right maximal blocks with one-point overlaps.
inline GreedyPartition greedy_partition(const KSequence& s) {
  const std::size_t n = s.size();
  const std::size_t k = s.k();
  if (n == 0) throw PreconditionError("greedy partition of an empty sequence");
  GreedyPartition out;
  std::vector<std::size_t> tuple(k + 1);
  std::vector<std::size_t> pool;
  std::size_t start = 0;
  for (;;) {
    Block b{start, start, std::nullopt, {}};
    std::size_t next = start + 1;
    while (next < n) {
      if (b.size() < k) {
        b.last = next++;
        continue;
      }
      pool.resize(b.size());
      std::iota(pool.begin(), pool.end(), b.first);
      tuple[k] = next;
      bool ok = detail::for_each_combination_of(pool, k, [&](std::span<const std::size_t> d) {
        std::copy(d.begin(), d.end(), tuple.begin());
        int sg = s.sign(tuple);
        if (!b.sign) {
          b.sign = sg;
          return true;
        }
        if (sg == *b.sign) return true;
        b.witness.assign(d.begin(), d.end());
        return false;
      });
      if (!ok) break;
      b.last = next++;
    }
    const bool last = b.last + 1 >= n;
    out.blocks.push_back(std::move(b));
    if (last) break;
    start = out.blocks.back().last;
  }
  return out;
}

/// Reduced subsequence S* together with the kept positions of S.
struct ReducedSequence {
  KSequence sequence;
  std::vector<std::size_t> kept;
  GreedyPartition original;
};

/// Keeps, from every block but the last, its first, second and last element,
/// its witness D_j, and (when those three all lie in D_j) the least-index
/// element not yet kept; from the last block, its first two elements.
inline ReducedSequence reduce(const KSequence& s) {
  auto gp = greedy_partition(s);
  std::vector<char> keep(s.size(), 0);
  for (std::size_t j = 0; j < gp.m(); ++j) {
    const Block& b = gp.blocks[j];
    if (j + 1 == gp.m()) {
      keep[b.first] = 1;
      if (b.size() >= 2) keep[b.first + 1] = 1;
      break;
    }
    if (b.witness.size() != s.k()) {
      throw Error("block " + std::to_string(j) + " has no witness subset");
    }
    const std::size_t named[3] = {b.first, b.first + 1, b.last};
    for (auto p : named) keep[p] = 1;
    for (auto p : b.witness) keep[p] = 1;
    bool inside = std::all_of(std::begin(named), std::end(named), [&](std::size_t p) {
      return std::binary_search(b.witness.begin(), b.witness.end(), p);
    });
    if (inside) {
      for (std::size_t p = b.first; p <= b.last; ++p) {
        if (!keep[p]) {
          keep[p] = 1;
          break;
        }
      }
    }
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]) kept.push_back(i);
  }
  auto reduced = s.restrict(kept);
  return ReducedSequence{std::move(reduced), std::move(kept), std::move(gp)};
}

/// Checked properties of a reduced sequence.
struct ReductionCheck {
  std::size_t m_original = 0;
  std::size_t m_reduced = 0;
  bool same_block_count = false;
  bool block_sizes_ok = false;   // every block has <= k+3 elements
  bool last_block_two = false;   // the last block has exactly 2 elements
  bool window_property = false;  // every 2k+5 window holds a +1 and a -1 (k+1)-subset
  std::optional<std::size_t> failing_window;

  bool ok() const noexcept {
    return same_block_count && block_sizes_ok && last_block_two && window_property;
  }
};

inline ReductionCheck check_reduction(const ReducedSequence& r) {
  const KSequence& s = r.sequence;
  const std::size_t k = s.k();
  auto gp = greedy_partition(s);
  ReductionCheck out;
  out.m_original = r.original.m();
  out.m_reduced = gp.m();
  out.same_block_count = out.m_original == out.m_reduced;
  out.block_sizes_ok = std::all_of(gp.blocks.begin(), gp.blocks.end(),
                                   [&](const Block& b) { return b.size() <= k + 3; });
  out.last_block_two = gp.blocks.back().size() == 2;
  out.window_property = true;
  const std::size_t w = 2 * k + 5;
  for (std::size_t start = 0; start + w <= s.size(); ++start) {
    bool pos = false, neg = false;
    std::vector<std::size_t> pool(w);
    std::iota(pool.begin(), pool.end(), start);
    detail::for_each_combination_of(pool, k + 1, [&](std::span<const std::size_t> t) {
      (s.sign(t) > 0 ? pos : neg) = true;
      return !(pos && neg);
    });
    if (!(pos && neg)) {
      out.window_property = false;
      out.failing_window = start;
      break;
    }
  }
  return out;
}

/// The block-count bound: c(1) = 3, c(k) = 1 + (4k+10) c(k-1) / k, exact.
inline Rational c_bound(std::size_t k) {
  if (k < 1) throw PreconditionError("c_bound needs k >= 1");
  Rational c = 3;
  for (std::size_t i = 2; i <= k; ++i) {
    c = 1 + Rational(4 * i + 10) * c / Rational(i);
    c.canonicalize();
  }
  return c;
}

/// ceil(c_bound(k)), the integer bound on the number of greedy blocks.
inline std::size_t block_bound(std::size_t k) {
  Rational c = ceil(c_bound(k));
  return static_cast<std::size_t>(c.get_num().get_ui());
}

/// Known exact values and bounds, recorded verbatim (not derived here).
struct KnownBounds {
  int c1 = 3;     // c(1)
  int c2_le = 22; // sharper bound on c(2) than the recurrence gives
  int M1 = 3;
  int M2 = 4;
  int M3_le = 22;
};

inline constexpr KnownBounds known_bounds{};

struct FlipVerdict {
  bool flip = true;
  /// Lexicographically least k-subset (positions) whose sign sequence changes twice.
  std::vector<std::size_t> witness;
  std::vector<std::size_t> positions;
  std::vector<int> signs;
};

/// Exhaustive over all k-subsets A: every sign sequence has <= 1 sign change.
inline FlipVerdict verify_flip(const KSequence& s) {
  auto scan = detail::flip_scan(s.size(), s.k(),
                                [&](std::span<const std::size_t> t) { return s.sign(t); });
  return FlipVerdict{scan.flip, scan.subset, scan.others, scan.signs};
}

} // namespace convexsplit
