#pragma once

// Seeded generators and slow, independent reference implementations used to
// check the library.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "convexsplit/convexsplit.hpp"

namespace support {

using namespace convexsplit;

class Gen {
public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(eng_);
  }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational(long range, long den) {
    return Rational(integer(-range * den, range * den), den);
  }

  Point point(std::size_t d, long range = 20, long den = 1) {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < d; ++i) c.push_back(rational(range, den));
    return Point(std::move(c));
  }

  /// Rejection-sampled sequence in general position.
  PointSeq general_seq(std::size_t d, std::size_t n, long range = 20, long den = 1) {
    for (;;) {
      std::vector<Point> pts;
      for (std::size_t i = 0; i < n; ++i) pts.push_back(point(d, range, den));
      PointSeq s(d, std::move(pts));
      if (is_general_position(s)) return s;
    }
  }

  std::mt19937_64& engine() { return eng_; }

private:
  std::mt19937_64 eng_;
};

inline PointSeq moment_points(std::size_t d, const std::vector<Rational>& ts) {
  std::vector<Point> pts;
  for (const auto& t : ts) pts.push_back(moment_curve(d)(t));
  return PointSeq(d, std::move(pts));
}

inline std::vector<Rational> integer_params(long from, long to) {
  std::vector<Rational> ts;
  for (long t = from; t <= to; ++t) ts.emplace_back(t);
  return ts;
}

/// Determinant sign of the (d+1)x(d+1) matrix with columns (1, p_j), by
/// Gaussian elimination over the rationals.
inline int ref_orientation(const std::vector<Point>& pts) {
  const std::size_t m = pts.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
  for (std::size_t j = 0; j < m; ++j) {
    a[0][j] = 1;
    for (std::size_t i = 1; i < m; ++i) a[i][j] = pts[j][i - 1];
  }
  int s = 1;
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t p = c;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      s = -s;
    }
    if (a[c][c] < 0) s = -s;
    for (std::size_t r = c + 1; r < m; ++r) {
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < m; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return s;
}

inline int ref_sign(const PointSeq& seq, std::span<const std::size_t> idx) {
  std::vector<Point> pts;
  for (auto i : idx) pts.push_back(seq[i]);
  return ref_orientation(pts);
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  if (r > n) return out;
  std::vector<std::size_t> c(r);
  std::iota(c.begin(), c.end(), std::size_t{0});
  for (;;) {
    out.push_back(c);
    std::size_t i = r;
    while (i > 0 && c[i - 1] == n - r + i - 1) --i;
    if (i == 0) return out;
    ++c[i - 1];
    for (std::size_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
  }
}

inline bool ref_homogeneous(const PointSeq& seq) {
  int first = 0;
  for (const auto& t : subsets(seq.size(), seq.dim() + 1)) {
    int s = ref_sign(seq, t);
    if (first == 0) first = s;
    if (s != first) return false;
  }
  return true;
}

inline bool ref_homogeneous_range(const PointSeq& seq, std::size_t first, std::size_t last) {
  std::vector<std::size_t> idx(last - first + 1);
  std::iota(idx.begin(), idx.end(), first);
  if (idx.size() <= seq.dim()) return true;
  return ref_homogeneous(seq.subsequence(idx));
}

inline std::size_t ref_changes(const std::vector<int>& s) {
  std::size_t c = 0;
  for (std::size_t i = 1; i < s.size(); ++i) c += s[i] != s[i - 1];
  return c;
}

/// Every k-subset's sign sequence, computed from a sign function on sorted (k+1)-sets.
template <class SignFn>
bool ref_flip(std::size_t n, std::size_t k, SignFn sign) {
  for (const auto& r : subsets(n, k)) {
    std::vector<int> seq;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::find(r.begin(), r.end(), i) != r.end()) continue;
      std::vector<std::size_t> t = r;
      t.push_back(i);
      std::sort(t.begin(), t.end());
      seq.push_back(sign(t));
    }
    if (ref_changes(seq) > 1) return false;
  }
  return true;
}

inline bool ref_flip(const PointSeq& seq) {
  return ref_flip(seq.size(), seq.dim(),
                  [&](const std::vector<std::size_t>& t) { return ref_sign(seq, t); });
}

/// Fewest pieces in a one-point-overlap subdivision into homogeneous ranges,
/// by dynamic programming over all cut positions.
template <class Homog>
std::size_t ref_min_pieces(std::size_t n, Homog homog) {
  if (n <= 1) return 1;
  std::vector<std::size_t> best(n, SIZE_MAX);
  best[0] = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (best[i] != SIZE_MAX && homog(i, j)) best[j] = std::min(best[j], best[i] + 1);
    }
  }
  return best[n - 1];
}

inline std::size_t ref_min_pieces(const PointSeq& seq) {
  return ref_min_pieces(seq.size(), [&](std::size_t i, std::size_t j) {
    return ref_homogeneous_range(seq, i, j);
  });
}

inline std::size_t sign_changes_of(const std::vector<int>& sides) {
  std::size_t c = 0;
  for (std::size_t i = 1; i < sides.size(); ++i) c += sides[i] != sides[i - 1];
  return c;
}

/// Exact maximum crossing number of a path in R^1: a generic point c crosses
/// every edge whose endpoints straddle it.
inline std::size_t ref_max_crossings_1d(const PointSeq& seq) {
  std::vector<Rational> xs;
  for (const auto& p : seq.points()) xs.push_back(p[0]);
  std::vector<Rational> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  std::size_t best = 0;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    Rational c = (sorted[i] + sorted[i + 1]) / 2;
    std::vector<int> sides;
    for (const auto& x : xs) sides.push_back(x < c ? -1 : 1);
    best = std::max(best, sign_changes_of(sides));
  }
  return best;
}

/// Exact maximum crossing number of a planar path over generic lines.
///
/// The order of the vertices along a normal direction u only changes when u is
/// perpendicular to some p_i - p_j.  One direction strictly inside every arc
/// between consecutive critical directions, and every threshold between
/// consecutive projections, covers all side patterns of generic lines.
inline std::size_t ref_max_crossings_2d(const PointSeq& seq) {
  const std::size_t n = seq.size();
  if (n < 2) return 0;
  using Vec = std::pair<Rational, Rational>;
  std::vector<Vec> crit;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational dx = seq[j][0] - seq[i][0], dy = seq[j][1] - seq[i][1];
      crit.emplace_back(Rational(-dy), dx);
      crit.emplace_back(dy, Rational(-dx));
    }
  }
  auto half = [](const Vec& v) { return (v.second > 0 || (v.second == 0 && v.first > 0)) ? 0 : 1; };
  auto cross = [](const Vec& a, const Vec& b) -> Rational { return a.first * b.second - a.second * b.first; };
  std::sort(crit.begin(), crit.end(), [&](const Vec& a, const Vec& b) {
    if (half(a) != half(b)) return half(a) < half(b);
    return cross(a, b) > 0;
  });
  std::vector<Vec> dirs;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    const Vec& a = crit[i];
    const Vec& b = crit[(i + 1) % crit.size()];
    if (cross(a, b) == 0) continue;
    if (cross(a, b) > 0) {
      dirs.emplace_back(a.first + b.first, a.second + b.second);
    } else {
      dirs.emplace_back(Rational(-a.second), a.first);
    }
  }
  std::size_t best = 1;
  for (const auto& u : dirs) {
    std::vector<Rational> proj;
    for (const auto& p : seq.points()) proj.push_back(u.first * p[0] + u.second * p[1]);
    std::vector<Rational> sorted = proj;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (sorted[i] == sorted[i + 1]) continue;
      Rational c = (sorted[i] + sorted[i + 1]) / 2;
      std::vector<int> sides;
      for (const auto& v : proj) sides.push_back(v < c ? -1 : 1);
      best = std::max(best, sign_changes_of(sides));
    }
  }
  return best;
}

/// Random hyperplane through no vertex (rejection sampled).
inline Hyperplane random_hyperplane(Gen& g, const PointSeq& seq, long range = 20) {
  for (;;) {
    std::vector<Rational> normal;
    bool nonzero = false;
    for (std::size_t i = 0; i < seq.dim(); ++i) {
      normal.push_back(g.rational(5, 7));
      nonzero = nonzero || normal.back() != 0;
    }
    if (!nonzero) continue;
    Hyperplane h(normal, g.rational(range, 13));
    bool clear = true;
    for (const auto& p : seq.points()) clear = clear && side_of(h, p) != 0;
    if (clear) return h;
  }
}

/// Random (k+1)-subset sign table as a k-sequence on ids 0..n-1.
inline KSequence random_ksequence(Gen& g, std::size_t k, std::size_t n) {
  std::vector<std::pair<std::vector<ElementId>, int>> table;
  for (const auto& t : subsets(n, k + 1)) {
    table.emplace_back(std::vector<ElementId>(t.begin(), t.end()), g.coin() ? 1 : -1);
  }
  std::vector<ElementId> ids(n);
  std::iota(ids.begin(), ids.end(), ElementId{0});
  return from_sign_table(k, ids, table);
}

/// Sign table from a bit mask over the (k+1)-subsets of 0..n-1 in lexicographic order.
inline KSequence ksequence_from_mask(std::size_t k, std::size_t n, std::uint64_t mask) {
  std::vector<std::pair<std::vector<ElementId>, int>> table;
  std::size_t bit = 0;
  for (const auto& t : subsets(n, k + 1)) {
    table.emplace_back(std::vector<ElementId>(t.begin(), t.end()), (mask >> bit) & 1 ? 1 : -1);
    ++bit;
  }
  std::vector<ElementId> ids(n);
  std::iota(ids.begin(), ids.end(), ElementId{0});
  return from_sign_table(k, ids, table);
}

/// Flip k-sequence reached by a random walk from a constant table: single
/// sign changes are proposed and kept only while the result stays flip.
inline KSequence random_flip_ksequence(Gen& g, std::size_t k, std::size_t n, std::size_t steps = 0) {
  const auto tuples = subsets(n, k + 1);
  std::vector<int> signs(tuples.size(), g.coin() ? 1 : -1);
  std::vector<ElementId> ids(n);
  std::iota(ids.begin(), ids.end(), ElementId{0});
  auto build = [&] {
    std::vector<std::pair<std::vector<ElementId>, int>> table;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      table.emplace_back(std::vector<ElementId>(tuples[i].begin(), tuples[i].end()), signs[i]);
    }
    return from_sign_table(k, ids, table);
  };
  if (tuples.empty()) return build();
  if (steps == 0) steps = 3 * tuples.size();
  for (std::size_t it = 0; it < steps; ++it) {
    std::size_t i = g.index(0, tuples.size() - 1);
    signs[i] = -signs[i];
    if (!verify_flip(build()).flip) signs[i] = -signs[i];
  }
  return build();
}

/// Random affine image of moment-curve samples in R^d; order-type homogeneous.
inline std::optional<PointSeq> random_homogeneous(Gen& g, std::size_t d, std::size_t n) {
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d));
  std::vector<Rational> b(d);
  for (auto& row : a) {
    for (auto& x : row) x = g.rational(3, 5);
  }
  for (auto& x : b) x = g.rational(3, 5);
  std::vector<Point> pts;
  std::vector<Rational> ts;
  Rational t = 0;
  for (std::size_t i = 0; i < n; ++i) {
    t += Rational(g.integer(1, 9), 10);
    ts.push_back(t);
  }
  auto base = moment_points(d, ts);
  for (const auto& p : base.points()) {
    std::vector<Rational> c(d);
    for (std::size_t r = 0; r < d; ++r) {
      c[r] = b[r];
      for (std::size_t s = 0; s < d; ++s) c[r] += a[r][s] * p[s];
    }
    pts.emplace_back(std::move(c));
  }
  PointSeq seq(d, std::move(pts));
  if (!is_general_position(seq)) return std::nullopt;
  return seq;
}

} // namespace support
