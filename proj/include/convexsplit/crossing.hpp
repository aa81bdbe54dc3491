#pragma once

// Hyperplane crossing numbers of polygonal paths, the convexity test and the
// decomposition of a path into a minimum number of convex pieces.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "convexsplit/detail/combinatorics.hpp"
#include "convexsplit/exactgeom.hpp"
#include "convexsplit/kseq.hpp"
#include "convexsplit/ordertype.hpp"

namespace convexsplit {

/// Polygonal path p_0 p_1 ... p_{n-1} through a general-position point sequence.
class PolyPath {
public:
  explicit PolyPath(PointSeq seq) : seq_(std::move(seq)) {
    if (seq_.size() < 2) throw PreconditionError("a polygonal path needs at least 2 vertices");
    require_general_position(seq_);
  }

  const PointSeq& vertices() const noexcept { return seq_; }
  std::size_t size() const noexcept { return seq_.size(); }
  std::size_t dim() const noexcept { return seq_.dim(); }

private:
  PointSeq seq_;
};

/// Number of points where the path meets h: vertices on h plus edges whose
/// endpoints lie strictly on opposite sides.
inline std::size_t crossings_with(const PolyPath& path, const Hyperplane& h) {
  const auto& seq = path.vertices();
  if (h.dim() != seq.dim()) throw DimensionError("crossings_with: dimension mismatch");
  auto form = h.integer_form();
  std::vector<int> sides(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) sides[i] = detail::form_side(form, seq.lifted(i));
  std::size_t count = 0;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    if (sides[i] == 0) ++count;
    if (i + 1 == sides.size()) break;
    if (sides[i] == 0 && sides[i + 1] == 0) {
      throw EdgeOnHyperplaneError("hyperplane contains edge " + std::to_string(i), i);
    }
    if (sides[i] * sides[i + 1] < 0) ++count;
  }
  return count;
}

/// Hyperplane achieving a crossing count: either the hyperplane spanned by the
/// vertices in `subset` (direct), or a generic perturbation of it that puts
/// each subset vertex on the side given in `sides`.
struct CrossingWitness {
  std::vector<std::size_t> subset;
  bool perturbed = false;
  std::vector<int> sides;
};

struct CrossingReport {
  std::size_t max_crossings = 0;
  CrossingWitness witness;
};

namespace detail {

/// Side of every vertex w.r.t. the hyperplane spanned by `subset` (zero on it).
inline std::vector<int> spanned_sides(const PointSeq& seq, std::span<const std::size_t> subset) {
  const std::size_t d = seq.dim();
  std::vector<int> sides(seq.size(), 0);
  if (subset.size() < d) return sides;
  std::vector<const std::vector<Integer>*> cols(d);
  for (std::size_t j = 0; j < d; ++j) cols[j] = &seq.lifted(subset[j]);
  auto form = spanning_form(cols);
  for (std::size_t i = 0, si = 0; i < seq.size(); ++i) {
    if (si < subset.size() && subset[si] == i) {
      ++si;
      continue;
    }
    sides[i] = form_side(form, seq.lifted(i));
    if (sides[i] == 0) {
      std::vector<std::size_t> bad(subset.begin(), subset.end());
      bad.insert(std::upper_bound(bad.begin(), bad.end(), i), i);
      throw GeneralPositionError("vertex lies on a hyperplane spanned by d other vertices", bad);
    }
  }
  return sides;
}

inline bool subset_contains_edge(std::span<const std::size_t> subset) {
  for (std::size_t i = 1; i < subset.size(); ++i) {
    if (subset[i] == subset[i - 1] + 1) return true;
  }
  return false;
}

inline std::size_t direct_count(std::span<const int> sides, std::size_t on_plane) {
  std::size_t count = on_plane;
  for (std::size_t i = 1; i < sides.size(); ++i) {
    if (sides[i] * sides[i - 1] < 0) ++count;
  }
  return count;
}

/// Sides in {-1,+1}^r encoded by bit i (set = +1) of `code`, bit r-1 first.
inline int perturbed_side(std::uint32_t code, std::size_t r, std::size_t i) {
  return ((code >> (r - 1 - i)) & 1u) ? 1 : -1;
}

struct Candidate {
  std::size_t count = 0;
  std::uint64_t order = 0;  // enumeration index of the subset
  bool perturbed = false;
  std::uint32_t code = 0;
  std::vector<std::size_t> subset;
};

inline bool better(const Candidate& a, const std::optional<Candidate>& b) {
  if (!b) return true;
  if (a.count != b->count) return a.count > b->count;
  if (a.order != b->order) return a.order < b->order;
  if (a.perturbed != b->perturbed) return !a.perturbed;
  return a.code < b->code;
}

/// Best candidate among the subsets whose enumeration index is = part (mod parts).
inline std::optional<Candidate> crossing_scan(const PointSeq& seq, std::size_t part,
                                              std::size_t parts) {
  const std::size_t n = seq.size();
  const std::size_t d = seq.dim();
  const std::size_t r = std::min(d, n);
  std::optional<Candidate> best;
  std::vector<int> full(n);
  std::uint64_t index = 0;
  for_each_combination(n, r, [&](std::span<const std::size_t> subset) {
    const std::uint64_t order = index++;
    if (order % parts != part) return true;
    auto sides = spanned_sides(seq, subset);
    if (r == d && !subset_contains_edge(subset)) {
      Candidate c{direct_count(sides, d), order, false, 0, {}};
      if (better(c, best)) {
        c.subset.assign(subset.begin(), subset.end());
        best = std::move(c);
      }
    }
    for (std::uint32_t code = 0; code < (1u << r); ++code) {
      full = sides;
      for (std::size_t j = 0; j < r; ++j) full[subset[j]] = perturbed_side(code, r, j);
      Candidate c{sign_changes(full), order, true, code, {}};
      if (better(c, best)) {
        c.subset.assign(subset.begin(), subset.end());
        best = std::move(c);
      }
    }
    return true;
  });
  return best;
}

} // namespace detail

/// Maximum number of crossings of the path with a hyperplane containing no edge.
///
/// Enumerates every d-subset D of vertices: the hyperplane h(D) itself (when it
/// contains no edge) and its 2^d generic perturbations, in which each vertex of
/// D is pushed to a chosen side.  Ties go to the lexicographically least D,
/// direct before perturbed, then the least side pattern (-1 before +1).
/// Work is split over `threads` workers; the result does not depend on it.
inline CrossingReport max_crossings(const PolyPath& path, unsigned threads = 1) {
  const auto& seq = path.vertices();
  threads = std::max(1u, threads);
  std::vector<std::optional<detail::Candidate>> partial(threads);
  if (threads == 1) {
    partial[0] = detail::crossing_scan(seq, 0, 1);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          partial[t] = detail::crossing_scan(seq, t, threads);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::optional<detail::Candidate> best;
  for (auto& c : partial) {
    if (c && detail::better(*c, best)) best = std::move(c);
  }
  CrossingReport out;
  out.max_crossings = best->count;
  out.witness.subset = best->subset;
  out.witness.perturbed = best->perturbed;
  if (best->perturbed) {
    const std::size_t r = best->subset.size();
    for (std::size_t j = 0; j < r; ++j) {
      out.witness.sides.push_back(detail::perturbed_side(best->code, r, j));
    }
  }
  return out;
}

/// Recomputes the crossing count described by a witness.
inline std::size_t evaluate_witness(const PolyPath& path, const CrossingWitness& w) {
  const auto& seq = path.vertices();
  const std::size_t r = std::min(seq.dim(), seq.size());
  if (w.subset.size() != r) throw PreconditionError("witness subset has the wrong size");
  detail::check_increasing(w.subset, seq.size(), r, "evaluate_witness");
  auto sides = detail::spanned_sides(seq, w.subset);
  if (!w.perturbed) {
    if (r != seq.dim() || detail::subset_contains_edge(w.subset)) {
      throw PreconditionError("direct witness hyperplane contains an edge");
    }
    return detail::direct_count(sides, r);
  }
  if (w.sides.size() != r) throw PreconditionError("witness needs one side per subset vertex");
  for (std::size_t j = 0; j < r; ++j) {
    if (w.sides[j] != 1 && w.sides[j] != -1) throw PreconditionError("witness sides must be +-1");
    sides[w.subset[j]] = w.sides[j];
  }
  return detail::sign_changes(sides);
}

namespace detail {

/// Rational solution of A x = b (A row-major rows x cols), free variables set to 0.
inline std::optional<std::vector<Rational>> solve_affine(std::vector<Rational> a,
                                                         std::vector<Rational> b,
                                                         std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t p = row;
    while (p < rows && sgn(a[p * cols + col]) == 0) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a[p * cols + j], a[row * cols + j]);
    std::swap(b[p], b[row]);
    Rational inv = 1 / a[row * cols + col];
    for (std::size_t j = 0; j < cols; ++j) a[row * cols + j] *= inv;
    b[row] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || sgn(a[i * cols + col]) == 0) continue;
      Rational f = a[i * cols + col];
      for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] -= f * a[row * cols + j];
      b[i] -= f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < rows; ++i) {
    if (sgn(b[i]) != 0) return std::nullopt;
  }
  std::vector<Rational> x(cols, 0);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
  return x;
}

} // namespace detail

/// An explicit hyperplane realizing the witness: h(D) itself, or h(D) tilted by
/// a small affine function that is +-1 on D, so that no vertex lies on it.
inline Hyperplane realize_witness(const PolyPath& path, const CrossingWitness& w) {
  const auto& seq = path.vertices();
  const std::size_t d = seq.dim();
  const std::size_t r = std::min(d, seq.size());
  if (w.subset.size() != r) throw PreconditionError("witness subset has the wrong size");
  detail::check_increasing(w.subset, seq.size(), r, "realize_witness");

  // base affine function h(x) = c0 + sum c_i x_i (identically zero when r < d)
  std::vector<Rational> base(d + 1, 0);
  if (r == d) {
    std::vector<const std::vector<Integer>*> cols(d);
    for (std::size_t j = 0; j < d; ++j) cols[j] = &seq.lifted(w.subset[j]);
    auto form = detail::spanning_form(cols);
    for (std::size_t i = 0; i <= d; ++i) base[i] = Rational(form[i]);
  }
  auto eval = [&](const std::vector<Rational>& f, const Point& p) {
    Rational acc = f[0];
    for (std::size_t i = 0; i < d; ++i) acc += f[i + 1] * p[i];
    return acc;
  };
  if (!w.perturbed) return Hyperplane({base.begin() + 1, base.end()}, -base[0]);

  // tilt g with g(p_j) = sides[j] on the subset
  std::vector<Rational> a(r * (d + 1));
  std::vector<Rational> rhs(r);
  for (std::size_t j = 0; j < r; ++j) {
    const Point& p = seq[w.subset[j]];
    a[j * (d + 1)] = 1;
    for (std::size_t i = 0; i < d; ++i) a[j * (d + 1) + i + 1] = p[i];
    rhs[j] = w.sides.at(j);
  }
  auto g = detail::solve_affine(std::move(a), std::move(rhs), r, d + 1);
  if (!g) throw GeneralPositionError("witness subset is affinely dependent", w.subset);

  Rational delta = 1;
  for (std::size_t i = 0, si = 0; i < seq.size(); ++i) {
    if (si < r && w.subset[si] == i) {
      ++si;
      continue;
    }
    Rational gv = abs(eval(*g, seq[i]));
    if (sgn(gv) == 0) continue;
    Rational bound = abs(eval(base, seq[i])) / (2 * gv);
    if (bound < delta) delta = bound;
  }
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<Rational> f(d + 1);
    for (std::size_t i = 0; i <= d; ++i) f[i] = base[i] + delta * (*g)[i];
    bool nonzero = std::any_of(f.begin() + 1, f.end(), [](const Rational& x) { return sgn(x) != 0; });
    if (nonzero) return Hyperplane({f.begin() + 1, f.end()}, -f[0]);
    delta /= 2;
  }
  throw Error("could not realize perturbed witness hyperplane");
}

/// Convexity of the path, decided by order-type homogeneity of its vertices.
/// Paths with at most d vertices are convex by convention.
inline bool is_convex(const PolyPath& path) {
  if (path.size() <= path.dim()) return true;
  return is_order_type_homogeneous(path.vertices()).homogeneous;
}

/// A maximal convex piece of a path: vertices first..last (inclusive).
struct Piece {
  std::size_t first = 0;
  std::size_t last = 0;
  /// Common orientation of the piece's (d+1)-tuples; empty if it has <= d vertices.
  std::optional<int> sign;

  std::size_t size() const noexcept { return last - first + 1; }
};

struct ConvexDecomposition {
  std::vector<Piece> pieces;

  std::size_t size() const noexcept { return pieces.size(); }
};

/// Minimum subdivision into convex pieces sharing endpoints, via the greedy
/// partition of the vertex sequence's orientation signs.
inline ConvexDecomposition decompose(const PolyPath& path) {
  auto gp = greedy_partition(from_points(path.vertices()));
  ConvexDecomposition out;
  out.pieces.reserve(gp.m());
  for (const auto& b : gp.blocks) out.pieces.push_back(Piece{b.first, b.last, b.sign});
  return out;
}

} // namespace convexsplit
