#pragma once

// Longest order-type homogeneous subsequences and the extraction of a
// super-order-type homogeneous subsequence by repeated convex decomposition.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "convexsplit/crossing.hpp"
#include "convexsplit/detail/combinatorics.hpp"
#include "convexsplit/exactgeom.hpp"
#include "convexsplit/kseq.hpp"
#include "convexsplit/ordertype.hpp"

namespace convexsplit {

/// Checks that every projection to the first k coordinates, k = 1..d, is in
/// general position; the error carries the failing k.
inline void require_super_general_position(const PointSeq& seq) {
  for (std::size_t k = 1; k <= seq.dim(); ++k) {
    auto gp = is_general_position(project(seq, k));
    if (!gp.general) {
      throw GeneralPositionError("not in super-general position: projection to " +
                                     std::to_string(k) + " coordinates has dependent subset " +
                                     detail::format_indices(gp.witness),
                                 gp.witness, k);
    }
  }
}

struct SuperHomogeneityReport {
  bool homogeneous = true;
  /// Least k whose projection is not order-type homogeneous.
  std::optional<std::size_t> failing_k;

  explicit operator bool() const noexcept { return homogeneous; }
};

inline SuperHomogeneityReport is_super_ot_homogeneous(const PointSeq& seq) {
  require_super_general_position(seq);
  SuperHomogeneityReport out;
  for (std::size_t k = 1; k <= seq.dim(); ++k) {
    if (seq.size() < k + 1) break;
    if (!is_order_type_homogeneous(project(seq, k)).homogeneous) {
      out.homogeneous = false;
      out.failing_k = k;
      break;
    }
  }
  return out;
}

struct HomogeneousSubsequence {
  std::vector<std::size_t> indices;
  /// Common sign of the (d+1)-tuples; empty when fewer than d+1 indices.
  std::optional<int> sign;

  std::size_t size() const noexcept { return indices.size(); }
};

namespace detail {

/// Orientation signs of all (d+1)-tuples, indexed by colex rank.
inline std::vector<signed char> tuple_sign_table(const PointSeq& seq) {
  const std::size_t n = seq.size();
  const std::size_t r = seq.dim() + 1;
  std::vector<signed char> table(n >= r ? binomial(n, r) : 0);
  if (n < r) return table;
  for_each_combination(n, r, [&](std::span<const std::size_t> c) {
    table[*colex_rank(c)] = static_cast<signed char>(checked_sign(seq, c));
    return true;
  });
  return table;
}

inline HomogeneousSubsequence whole_sequence(const PointSeq& seq) {
  HomogeneousSubsequence out;
  out.indices.resize(seq.size());
  std::iota(out.indices.begin(), out.indices.end(), std::size_t{0});
  if (seq.size() == seq.dim() + 1) out.sign = checked_sign(seq, out.indices);
  return out;
}

inline bool better_subsequence(const std::vector<std::size_t>& a,
                               const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a < b;
}

/// Planar cup/cap dynamic program.
///
/// A sequence q_0 < q_1 < ... < q_m has all triples of sign s iff every later
/// point lies on the s-side of q_0 q_1, and for each consecutive pair both
/// (q_{j-1}, q_j, q_{j+1}) and (q_0, q_j, q_{j+1}) have sign s.
inline HomogeneousSubsequence longest_planar(const PointSeq& seq) {
  const std::size_t n = seq.size();
  std::vector<int> tri(n * n * n, 0);
  auto at = [n](std::size_t a, std::size_t b, std::size_t c) { return (a * n + b) * n + c; };
  for_each_combination(n, 3, [&](std::span<const std::size_t> c) {
    int s = checked_sign(seq, c);
    // cyclic rotations keep the sign, transpositions flip it
    tri[at(c[0], c[1], c[2])] = tri[at(c[1], c[2], c[0])] = tri[at(c[2], c[0], c[1])] = s;
    tri[at(c[1], c[0], c[2])] = tri[at(c[0], c[2], c[1])] = tri[at(c[2], c[1], c[0])] = -s;
    return true;
  });

  std::vector<std::size_t> best;
  int best_sign = 0;
  // g[p * n + c]: longest continuation (points after c) from chain state (p, c)
  std::vector<std::size_t> g(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (int s : {-1, 1}) {
        const std::size_t bound = n - b + 1;
        if (bound < best.size() ||
            (bound == best.size() && !(best[0] == a && best[1] == b))) {
          continue;
        }
        auto ok = [&](std::size_t p, std::size_t c, std::size_t l) {
          return tri[at(a, b, l)] == s && tri[at(p, c, l)] == s && tri[at(a, c, l)] == s;
        };
        auto extend = [&](std::size_t p, std::size_t c) {
          std::size_t v = 0;
          for (std::size_t l = c + 1; l < n; ++l) {
            if (ok(p, c, l)) v = std::max(v, 1 + g[c * n + l]);
          }
          g[p * n + c] = v;
        };
        for (std::size_t c = n; c-- > b + 1;) {
          for (std::size_t p = b; p < c; ++p) extend(p, c);
        }
        extend(a, b);
        std::vector<std::size_t> chain{a, b};
        std::size_t p = a, c = b;
        std::size_t rest = g[a * n + b];
        while (rest > 0) {
          for (std::size_t l = c + 1; l < n; ++l) {
            if (ok(p, c, l) && g[c * n + l] + 1 == rest) {
              chain.push_back(l);
              p = c;
              c = l;
              --rest;
              break;
            }
          }
        }
        if (chain.size() < 3) continue;
        if (best.empty() || better_subsequence(chain, best)) {
          best = std::move(chain);
          best_sign = s;
        }
      }
    }
  }
  HomogeneousSubsequence out;
  out.indices = std::move(best);
  out.sign = best_sign;
  return out;
}

/// Lex-order depth-first search with a length bound; the first maximum found
/// is the lexicographically least one.
inline HomogeneousSubsequence longest_branch_and_bound(const PointSeq& seq) {
  const std::size_t n = seq.size();
  const std::size_t d = seq.dim();
  const auto table = tuple_sign_table(seq);
  std::vector<std::size_t> chosen, best;
  int best_sign = 0;
  std::vector<std::size_t> tuple(d + 1);

  // Sign of every (d+1)-tuple formed by l and d members of `chosen` must be s.
  auto compatible = [&](std::size_t l, int s) {
    bool ok = true;
    for_each_combination(chosen.size(), d, [&](std::span<const std::size_t> c) {
      for (std::size_t j = 0; j < d; ++j) tuple[j] = chosen[c[j]];
      tuple[d] = l;
      ok = table[*colex_rank(tuple)] == s;
      return ok;
    });
    return ok;
  };

  auto dfs = [&](auto&& self, std::size_t next, int s) -> void {
    if (chosen.size() > best.size()) {
      best = chosen;
      best_sign = s;
    }
    for (std::size_t l = next; l < n; ++l) {
      if (chosen.size() + (n - l) <= best.size()) return;
      int ls = s;
      if (chosen.size() == d) {
        tuple.assign(chosen.begin(), chosen.end());
        tuple.push_back(l);
        ls = table[*colex_rank(tuple)];
        tuple.resize(d + 1);
      } else if (chosen.size() > d && !compatible(l, s)) {
        continue;
      }
      chosen.push_back(l);
      self(self, l + 1, ls);
      chosen.pop_back();
    }
  };
  dfs(dfs, 0, 0);

  HomogeneousSubsequence out;
  out.indices = std::move(best);
  if (out.indices.size() > d) out.sign = best_sign;
  return out;
}

} // namespace detail

/// Exhaustive reference: subsets by decreasing size, each size in lex order.
inline HomogeneousSubsequence longest_ot_homogeneous_brute(const PointSeq& seq) {
  const std::size_t n = seq.size();
  const std::size_t d = seq.dim();
  if (n > 24) throw PreconditionError("brute-force search is limited to n <= 24");
  require_general_position(seq);
  if (n <= d + 1) return detail::whole_sequence(seq);
  const auto table = detail::tuple_sign_table(seq);
  for (std::size_t size = n; size > d; --size) {
    std::optional<HomogeneousSubsequence> found;
    detail::for_each_combination(n, size, [&](std::span<const std::size_t> sub) {
      int first = 0;
      bool ok = true;
      std::vector<std::size_t> t(d + 1);
      detail::for_each_combination(size, d + 1, [&](std::span<const std::size_t> c) {
        for (std::size_t j = 0; j <= d; ++j) t[j] = sub[c[j]];
        int s = table[*detail::colex_rank(t)];
        if (first == 0) first = s;
        ok = s == first;
        return ok;
      });
      if (!ok) return true;
      found = HomogeneousSubsequence{std::vector<std::size_t>(sub.begin(), sub.end()), first};
      return false;
    });
    if (found) return *found;
  }
  return {};
}

/// Longest subsequence whose (d+1)-tuples all share one sign; ties go to the
/// lexicographically least index set.
inline HomogeneousSubsequence longest_ot_homogeneous(const PointSeq& seq) {
  require_general_position(seq);
  if (seq.size() <= seq.dim() + 1) return detail::whole_sequence(seq);
  if (seq.dim() == 2) return detail::longest_planar(seq);
  return detail::longest_branch_and_bound(seq);
}

struct ExtractionStage {
  /// Number of leading coordinates kept in this stage's projection.
  std::size_t k = 0;
  std::size_t input_length = 0;
  std::size_t piece_count = 0;
  /// Index of the chosen (longest, earliest on ties) piece.
  std::size_t piece = 0;
  /// P_i as indices into the original sequence.
  std::vector<std::size_t> output;
};

struct ExtractionTrace {
  std::vector<ExtractionStage> stages;
  /// P_d as indices into the original sequence.
  std::vector<std::size_t> final;
};

/// Starting from an order-type homogeneous P_1 = seq, projects to d-1, d-2, ..., 1
/// coordinates, decomposes each projection into convex pieces and keeps the
/// longest piece.
inline ExtractionTrace super_extract(const PointSeq& seq) {
  require_super_general_position(seq);
  const std::size_t d = seq.dim();
  if (seq.size() >= d + 1 && !is_order_type_homogeneous(seq).homogeneous) {
    throw PreconditionError("super_extract needs an order-type homogeneous input");
  }
  ExtractionTrace trace;
  std::vector<std::size_t> current(seq.size());
  std::iota(current.begin(), current.end(), std::size_t{0});
  for (std::size_t i = 2; i <= d; ++i) {
    const std::size_t k = d - i + 1;
    ExtractionStage stage;
    stage.k = k;
    stage.input_length = current.size();
    if (current.size() < 2) {
      stage.piece_count = current.size();
      stage.output = current;
      trace.stages.push_back(std::move(stage));
      continue;
    }
    auto dec = decompose(PolyPath(project(seq.subsequence(current), k)));
    stage.piece_count = dec.size();
    for (std::size_t j = 1; j < dec.size(); ++j) {
      if (dec.pieces[j].size() > dec.pieces[stage.piece].size()) stage.piece = j;
    }
    const auto& pc = dec.pieces[stage.piece];
    stage.output.assign(current.begin() + static_cast<std::ptrdiff_t>(pc.first),
                        current.begin() + static_cast<std::ptrdiff_t>(pc.last) + 1);
    current = stage.output;
    trace.stages.push_back(std::move(stage));
  }
  trace.final = std::move(current);
  return trace;
}

} // namespace convexsplit
