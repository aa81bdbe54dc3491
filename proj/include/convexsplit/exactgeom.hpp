#pragma once

// Exact orientation predicates, general position, hyperplanes and projection.
//
// Every sign is computed from integer data: each point p with rational
// coordinates is lifted to a homogeneous integer vector (w, w*p_1, ..., w*p_d)
// with w > 0 the least common denominator.  The orientation determinant of
// d+1 points has columns (1, p_j); scaling column j by w_j > 0 leaves its sign
// unchanged, so signs are read off integer determinants computed by
// fraction-free (Bareiss) elimination.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "convexsplit/detail/combinatorics.hpp"
#include "convexsplit/errors.hpp"
#include "convexsplit/rational.hpp"

namespace convexsplit {

class Point {
public:
  Point() = default;
  explicit Point(std::vector<Rational> coords) : coords_(std::move(coords)) {
    for (auto& c : coords_) c.canonicalize();
  }
  Point(std::initializer_list<Rational> coords) : Point(std::vector<Rational>(coords)) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Rational>& coords() const noexcept { return coords_; }

  friend bool operator==(const Point& a, const Point& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const Point& a, const Point& b) { return a.coords_ < b.coords_; }

private:
  std::vector<Rational> coords_;
};

/// Builds a point from textual coordinates ("1/2", "3", "0.25").
inline Point parse_point(std::initializer_list<std::string_view> coords) {
  std::vector<Rational> out;
  out.reserve(coords.size());
  for (auto c : coords) out.push_back(parse_rational(c));
  return Point(std::move(out));
}

namespace detail {

/// Homogeneous integer lift (w, w*x_1, ..., w*x_d), w > 0.
inline std::vector<Integer> lift(const Point& p) {
  Integer w = 1;
  for (const auto& c : p.coords()) {
    mpz_lcm(w.get_mpz_t(), w.get_mpz_t(), c.get_den_mpz_t());
  }
  std::vector<Integer> out;
  out.reserve(p.dim() + 1);
  out.push_back(w);
  for (const auto& c : p.coords()) {
    Integer scaled = w / c.get_den();
    out.push_back(c.get_num() * scaled);
  }
  return out;
}

/// Exact determinant of a row-major n x n integer matrix (destroys `a`).
inline Integer bareiss_det(std::vector<Integer>& a, std::size_t n) {
  if (n == 0) return 1;
  int s = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p * n + k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[p * n + j], a[k * n + j]);
      s = -s;
    }
    const Integer& piv = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer& x = a[i * n + j];
        x = x * piv - a[i * n + k] * a[k * n + j];
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = piv;
  }
  Integer det = a[n * n - 1];
  return s < 0 ? Integer(-det) : det;
}

inline int bareiss_sign(std::vector<Integer>& a, std::size_t n) {
  return sgn(bareiss_det(a, n));
}

/// Rank of a row-major r x c integer matrix (destroys `a`).
inline std::size_t integer_rank(std::vector<Integer>& a, std::size_t r, std::size_t c) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < c && rank < r; ++col) {
    std::size_t p = rank;
    while (p < r && a[p * c + col] == 0) ++p;
    if (p == r) continue;
    if (p != rank) {
      for (std::size_t j = 0; j < c; ++j) std::swap(a[p * c + j], a[rank * c + j]);
    }
    for (std::size_t i = rank + 1; i < r; ++i) {
      if (a[i * c + col] == 0) continue;
      Integer f = a[i * c + col];
      Integer g = 0;
      for (std::size_t j = col; j < c; ++j) {
        a[i * c + j] = a[i * c + j] * a[rank * c + col] - f * a[rank * c + j];
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a[i * c + j].get_mpz_t());
      }
      if (g > 1) {
        for (std::size_t j = col; j < c; ++j) {
          mpz_divexact(a[i * c + j].get_mpz_t(), a[i * c + j].get_mpz_t(), g.get_mpz_t());
        }
      }
    }
    ++rank;
  }
  return rank;
}

/// Orientation sign of lifted columns, in the given order.
inline int lifted_orientation(std::span<const std::vector<Integer>* const> cols) {
  const std::size_t n = cols.size();
  if (n == 2) {
    // det [[w0, w1], [X0, X1]]
    Integer t = (*cols[0])[0] * (*cols[1])[1] - (*cols[1])[0] * (*cols[0])[1];
    return sgn(t);
  }
  if (n == 3) {
    const auto& a = *cols[0];
    const auto& b = *cols[1];
    const auto& c = *cols[2];
    Integer t = a[0] * (b[1] * c[2] - c[1] * b[2]) - b[0] * (a[1] * c[2] - c[1] * a[2]) +
                c[0] * (a[1] * b[2] - b[1] * a[2]);
    return sgn(t);
  }
  std::vector<Integer> m(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < n; ++r) m[r * n + j] = (*cols[j])[r];
  }
  return bareiss_sign(m, n);
}

inline std::size_t lifted_rank(std::span<const std::vector<Integer>* const> rows) {
  if (rows.empty()) return 0;
  const std::size_t c = rows.front()->size();
  std::vector<Integer> m;
  m.reserve(rows.size() * c);
  for (auto* row : rows) m.insert(m.end(), row->begin(), row->end());
  return integer_rank(m, rows.size(), c);
}

/// Coefficients (c_0, ..., c_d) with orientation(D ++ [x]) = sign(c . lift(x)).
/// `cols` are the lifts of the d spanning points.
inline std::vector<Integer> spanning_form(std::span<const std::vector<Integer>* const> cols) {
  const std::size_t d = cols.size();
  std::vector<Integer> form(d + 1);
  std::vector<Integer> minor(d * d);
  for (std::size_t skip = 0; skip <= d; ++skip) {
    for (std::size_t j = 0; j < d; ++j) {
      std::size_t rr = 0;
      for (std::size_t r = 0; r <= d; ++r) {
        if (r == skip) continue;
        minor[rr * d + j] = (*cols[j])[r];
        ++rr;
      }
    }
    Integer m = bareiss_det(minor, d);
    // cofactor of entry (skip, d) in the (d+1)x(d+1) matrix
    form[skip] = ((skip + d) % 2 == 0) ? m : Integer(-m);
  }
  return form;
}

inline int form_side(const std::vector<Integer>& form, const std::vector<Integer>& lifted) {
  Integer acc = 0;
  for (std::size_t i = 0; i < form.size(); ++i) {
    mpz_addmul(acc.get_mpz_t(), form[i].get_mpz_t(), lifted[i].get_mpz_t());
  }
  return sgn(acc);
}

struct IntegerHash {
  std::size_t operator()(const Integer& z) const noexcept {
    std::size_t h = static_cast<std::size_t>(mpz_size(z.get_mpz_t())) * 0x9e3779b97f4a7c15ULL;
    if (mpz_size(z.get_mpz_t()) > 0) h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), 0));
    return h ^ static_cast<std::size_t>(sgn(z) + 1);
  }
};

struct DirectionHash {
  std::size_t operator()(const std::pair<Integer, Integer>& d) const noexcept {
    IntegerHash h;
    return h(d.first) * 31 + h(d.second);
  }
};

/// Canonical primitive direction from lifted planar point p to q; (0,0) iff p == q.
/// Directions are identified up to sign, so u and -u collide.
inline std::pair<Integer, Integer> planar_direction(const std::vector<Integer>& p,
                                                    const std::vector<Integer>& q) {
  Integer a = q[1] * p[0] - p[1] * q[0];
  Integer b = q[2] * p[0] - p[2] * q[0];
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (g == 0) return {Integer(0), Integer(0)};
  mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), g.get_mpz_t());
  if (a < 0 || (a == 0 && b < 0)) {
    a = -a;
    b = -b;
  }
  return {std::move(a), std::move(b)};
}

} // namespace detail

/// An ordered sequence of points in R^dim with optional original labels.
///
/// Immutable after construction; copies share the cached integer lifts.
class PointSeq {
public:
  explicit PointSeq(std::size_t dim, std::vector<Point> points = {},
                    std::vector<std::size_t> labels = {})
      : dim_(dim), points_(std::move(points)), labels_(std::move(labels)) {
    if (dim_ == 0) throw DimensionError("point sequences need dimension >= 1");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i].dim() != dim_) {
        throw DimensionError("point " + std::to_string(i) + " has dimension " +
                             std::to_string(points_[i].dim()) + ", expected " +
                             std::to_string(dim_));
      }
    }
    if (labels_.empty()) {
      labels_.resize(points_.size());
      std::iota(labels_.begin(), labels_.end(), std::size_t{0});
    } else if (labels_.size() != points_.size()) {
      throw PreconditionError("label count does not match point count");
    }
    auto lifts = std::make_shared<std::vector<std::vector<Integer>>>();
    lifts->reserve(points_.size());
    for (const auto& p : points_) lifts->push_back(detail::lift(p));
    lifts_ = std::move(lifts);
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const noexcept { return points_; }
  const std::vector<std::size_t>& labels() const noexcept { return labels_; }
  const std::vector<Integer>& lifted(std::size_t i) const { return (*lifts_)[i]; }

  /// Orientation of the d+1 points at `idx`, taken in the order given.
  int orientation(std::span<const std::size_t> idx) const {
    if (idx.size() != dim_ + 1) {
      throw DimensionError("orientation needs exactly d+1 = " + std::to_string(dim_ + 1) +
                           " points, got " + std::to_string(idx.size()));
    }
    std::vector<const std::vector<Integer>*> cols(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) cols[j] = &lifted(idx[j]);
    return detail::lifted_orientation(cols);
  }

  /// True iff the points at `idx` are affinely independent.
  bool affinely_independent(std::span<const std::size_t> idx) const {
    if (idx.size() > dim_ + 1) return false;
    std::vector<const std::vector<Integer>*> rows(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) rows[j] = &lifted(idx[j]);
    return detail::lifted_rank(rows) == idx.size();
  }

  /// Subsequence at increasing positions `idx`; labels are carried over.
  PointSeq subsequence(std::span<const std::size_t> idx) const {
    std::vector<Point> pts;
    std::vector<std::size_t> labels;
    pts.reserve(idx.size());
    labels.reserve(idx.size());
    for (auto i : idx) {
      pts.push_back(points_.at(i));
      labels.push_back(labels_.at(i));
    }
    return PointSeq(dim_, std::move(pts), std::move(labels));
  }

  PointSeq reversed() const {
    std::vector<Point> pts(points_.rbegin(), points_.rend());
    std::vector<std::size_t> labels(labels_.rbegin(), labels_.rend());
    return PointSeq(dim_, std::move(pts), std::move(labels));
  }

private:
  std::size_t dim_;
  std::vector<Point> points_;
  std::vector<std::size_t> labels_;
  std::shared_ptr<const std::vector<std::vector<Integer>>> lifts_;
};

/// Orientation sign of d+1 points in R^d: sign of det with columns (1, p_j).
inline int orientation(std::span<const Point> tuple) {
  if (tuple.empty()) throw DimensionError("orientation of an empty tuple");
  const std::size_t d = tuple.front().dim();
  if (d == 0 || tuple.size() != d + 1) {
    throw DimensionError("orientation needs d+1 points of dimension d");
  }
  std::vector<std::vector<Integer>> lifts;
  lifts.reserve(tuple.size());
  for (const auto& p : tuple) {
    if (p.dim() != d) throw DimensionError("orientation: mixed point dimensions");
    lifts.push_back(detail::lift(p));
  }
  std::vector<const std::vector<Integer>*> cols;
  for (const auto& l : lifts) cols.push_back(&l);
  return detail::lifted_orientation(cols);
}

inline int orientation(std::initializer_list<Point> tuple) {
  return orientation(std::span<const Point>(tuple.begin(), tuple.size()));
}

struct GeneralPositionResult {
  bool general = true;
  /// A minimal affinely dependent subset (lexicographically least among the
  /// smallest ones) when `general` is false.
  std::vector<std::size_t> witness;

  explicit operator bool() const noexcept { return general; }
};

namespace detail {

inline std::optional<std::vector<std::size_t>> least_duplicate_pair(const PointSeq& seq) {
  std::map<Point, std::size_t> first;
  std::optional<std::vector<std::size_t>> best;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    auto [it, inserted] = first.emplace(seq[j], j);
    if (inserted) continue;
    // the first repeat of each class pairs with that class's first index
    std::vector<std::size_t> cand{it->second, j};
    if (!best || cand < *best) best = cand;
  }
  return best;
}

inline std::optional<std::vector<std::size_t>> least_collinear_triple(const PointSeq& seq) {
  const std::size_t n = seq.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::unordered_map<std::pair<Integer, Integer>, std::size_t, DirectionHash> first;
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t j = i + 1; j < n; ++j) {
      auto dir = planar_direction(seq.lifted(i), seq.lifted(j));
      auto [it, inserted] = first.emplace(std::move(dir), j);
      if (inserted) continue;
      std::pair<std::size_t, std::size_t> cand{it->second, j};
      if (!best || cand < *best) best = cand;
    }
    if (best) return std::vector<std::size_t>{i, best->first, best->second};
  }
  return std::nullopt;
}

inline bool planar_general_position_fast(const PointSeq& seq) {
  const std::size_t n = seq.size();
  std::unordered_map<std::pair<Integer, Integer>, std::size_t, DirectionHash> seen;
  for (std::size_t i = 0; i < n; ++i) {
    seen.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      auto dir = planar_direction(seq.lifted(i), seq.lifted(j));
      if (dir.first == 0 && dir.second == 0) return false;
      if (!seen.emplace(std::move(dir), j).second) return false;
    }
  }
  return true;
}

} // namespace detail

/// Checks that every subset of at most d+1 points is affinely independent.
inline GeneralPositionResult is_general_position(const PointSeq& seq) {
  const std::size_t n = seq.size();
  const std::size_t d = seq.dim();
  GeneralPositionResult out;
  if (n < 2) return out;

  if (auto dup = detail::least_duplicate_pair(seq)) {
    out.general = false;
    out.witness = *dup;
    return out;
  }
  if (d == 1) return out;

  if (d == 2) {
    if (detail::planar_general_position_fast(seq)) return out;
    if (auto tri = detail::least_collinear_triple(seq)) {
      out.general = false;
      out.witness = *tri;
    }
    return out;
  }

  // Any dependent subset of size <= d extends to a dependent (d+1)-subset, so
  // when n >= d+1 nonzero orientations everywhere certify general position.
  bool all_nonzero = true;
  if (n >= d + 1) {
    detail::for_each_combination(n, d + 1, [&](std::span<const std::size_t> c) {
      all_nonzero = seq.orientation(c) != 0;
      return all_nonzero;
    });
    if (all_nonzero) return out;
  } else {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (seq.affinely_independent(all)) return out;
  }
  for (std::size_t s = 3; s <= std::min(n, d + 1); ++s) {
    bool found = false;
    detail::for_each_combination(n, s, [&](std::span<const std::size_t> c) {
      if (seq.affinely_independent(c)) return true;
      out.witness.assign(c.begin(), c.end());
      found = true;
      return false;
    });
    if (found) {
      out.general = false;
      return out;
    }
  }
  return out;
}

/// Throws GeneralPositionError carrying the witness when `seq` is degenerate.
inline void require_general_position(const PointSeq& seq) {
  auto gp = is_general_position(seq);
  if (!gp.general) {
    std::string msg = "points not in general position: affinely dependent subset {";
    for (std::size_t i = 0; i < gp.witness.size(); ++i) {
      msg += (i ? "," : "") + std::to_string(gp.witness[i]);
    }
    throw GeneralPositionError(msg + "}", gp.witness);
  }
}

/// Affine hyperplane {x : <normal, x> = offset}.
class Hyperplane {
public:
  Hyperplane(std::vector<Rational> normal, Rational offset)
      : normal_(std::move(normal)), offset_(std::move(offset)) {
    if (normal_.empty()) throw DimensionError("hyperplane normal must have dimension >= 1");
    bool nonzero = std::any_of(normal_.begin(), normal_.end(),
                               [](const Rational& r) { return sgn(r) != 0; });
    if (!nonzero) throw PreconditionError("hyperplane normal must be nonzero");
  }

  std::size_t dim() const noexcept { return normal_.size(); }
  const std::vector<Rational>& normal() const noexcept { return normal_; }
  const Rational& offset() const noexcept { return offset_; }

  /// Integer form (c_0, ..., c_d) with side(x) = sign(c . lift(x)).
  std::vector<Integer> integer_form() const {
    Integer den = offset_.get_den();
    for (const auto& a : normal_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.get_den_mpz_t());
    std::vector<Integer> form;
    form.reserve(normal_.size() + 1);
    Rational c0 = -offset_ * Rational(den);
    form.push_back(c0.get_num());
    for (const auto& a : normal_) {
      Rational ci = a * Rational(den);
      form.push_back(ci.get_num());
    }
    return form;
  }

private:
  std::vector<Rational> normal_;
  Rational offset_;
};

/// Sign of <normal, p> - offset.
inline int side_of(const Hyperplane& h, const Point& p) {
  if (p.dim() != h.dim()) throw DimensionError("side_of: dimension mismatch");
  Rational acc = -h.offset();
  for (std::size_t i = 0; i < p.dim(); ++i) acc += h.normal()[i] * p[i];
  return sgn(acc);
}

namespace detail {

inline Hyperplane hyperplane_from_form(const std::vector<Integer>& form) {
  std::vector<Rational> normal;
  normal.reserve(form.size() - 1);
  for (std::size_t i = 1; i < form.size(); ++i) normal.emplace_back(form[i]);
  bool nonzero = std::any_of(normal.begin(), normal.end(),
                             [](const Rational& r) { return sgn(r) != 0; });
  if (!nonzero) {
    std::vector<std::size_t> all(normal.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    throw GeneralPositionError("spanning points are affinely dependent", std::move(all));
  }
  return Hyperplane(std::move(normal), Rational(-form[0]));
}

} // namespace detail

/// The hyperplane through d affinely independent points of R^d, oriented so
/// that side_of(h, x) == orientation(pts ++ [x]).
inline Hyperplane span_hyperplane(std::span<const Point> pts) {
  if (pts.empty()) throw DimensionError("span_hyperplane needs d points");
  const std::size_t d = pts.front().dim();
  if (pts.size() != d) {
    throw DimensionError("span_hyperplane needs exactly d = " + std::to_string(d) + " points");
  }
  std::vector<std::vector<Integer>> lifts;
  for (const auto& p : pts) {
    if (p.dim() != d) throw DimensionError("span_hyperplane: mixed point dimensions");
    lifts.push_back(detail::lift(p));
  }
  std::vector<const std::vector<Integer>*> cols;
  for (const auto& l : lifts) cols.push_back(&l);
  return detail::hyperplane_from_form(detail::spanning_form(cols));
}

inline Hyperplane span_hyperplane(std::initializer_list<Point> pts) {
  return span_hyperplane(std::span<const Point>(pts.begin(), pts.size()));
}

/// Truncates every point to its first k coordinates; order and labels are kept.
inline PointSeq project(const PointSeq& seq, std::size_t k) {
  if (k < 1 || k > seq.dim()) {
    throw PreconditionError("projection dimension " + std::to_string(k) +
                            " outside [1, " + std::to_string(seq.dim()) + "]");
  }
  if (k == seq.dim()) return seq;
  std::vector<Point> pts;
  pts.reserve(seq.size());
  for (const auto& p : seq.points()) {
    pts.emplace_back(std::vector<Rational>(p.coords().begin(), p.coords().begin() + k));
  }
  return PointSeq(k, std::move(pts), seq.labels());
}

/// Incrementally grows a point set while keeping it in general position.
class GeneralPositionBuilder {
public:
  explicit GeneralPositionBuilder(std::size_t dim) : dim_(dim) {
    if (dim_ == 0) throw DimensionError("dimension must be >= 1");
  }

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<Point>& points() const noexcept { return points_; }

  /// Appends `p` iff the enlarged set stays in general position.
  bool try_append(const Point& p) {
    if (p.dim() != dim_) throw DimensionError("try_append: dimension mismatch");
    auto lp = detail::lift(p);
    if (!admissible(lp)) return false;
    points_.push_back(p);
    lifts_.push_back(std::move(lp));
    return true;
  }

private:
  bool admissible(const std::vector<Integer>& lp) const {
    const std::size_t n = lifts_.size();
    if (dim_ == 2) {
      std::unordered_map<std::pair<Integer, Integer>, std::size_t, detail::DirectionHash> seen;
      for (std::size_t j = 0; j < n; ++j) {
        auto dir = detail::planar_direction(lp, lifts_[j]);
        if (dir.first == 0 && dir.second == 0) return false;
        if (!seen.emplace(std::move(dir), j).second) return false;
      }
      return true;
    }
    if (n + 1 <= dim_ + 1) {
      std::vector<const std::vector<Integer>*> rows;
      for (const auto& l : lifts_) rows.push_back(&l);
      rows.push_back(&lp);
      return detail::lifted_rank(rows) == rows.size();
    }
    std::vector<const std::vector<Integer>*> cols(dim_ + 1);
    cols[dim_] = &lp;
    return detail::for_each_combination(n, dim_, [&](std::span<const std::size_t> c) {
      for (std::size_t j = 0; j < dim_; ++j) cols[j] = &lifts_[c[j]];
      return detail::lifted_orientation(cols) != 0;
    });
  }

  std::size_t dim_;
  std::vector<Point> points_;
  std::vector<std::vector<Integer>> lifts_;
};

} // namespace convexsplit
