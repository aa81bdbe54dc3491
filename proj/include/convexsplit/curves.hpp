#pragma once

// Parameterized curves with exact rational evaluation, epsilon-sampling into
// general-position polygonal paths, and curve decomposition.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "convexsplit/crossing.hpp"
#include "convexsplit/exactgeom.hpp"
#include "convexsplit/rational.hpp"

namespace convexsplit {

/// A curve gamma: [lo, hi] -> R^dim with an exact evaluator.
struct CurveSpec {
  std::string name;
  std::size_t dim = 0;
  Rational lo;
  Rational hi;
  std::function<Point(const Rational&)> evaluator;

  Point operator()(const Rational& t) const { return evaluator(t); }
};

/// Coefficients c_0, c_1, ... of c_0 + c_1 t + c_2 t^2 + ...
using Polynomial = std::vector<Rational>;

inline Rational evaluate(const Polynomial& p, const Rational& t) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

/// (t, t^2, ..., t^d) on [0, 1].
inline CurveSpec moment_curve(std::size_t d) {
  if (d < 1) throw PreconditionError("moment curve needs d >= 1");
  return CurveSpec{"moment", d, 0, 1, [d](const Rational& t) {
                     std::vector<Rational> c(d);
                     Rational power = t;
                     for (std::size_t i = 0; i < d; ++i) {
                       c[i] = power;
                       power *= t;
                     }
                     return Point(std::move(c));
                   }};
}

/// Graph of x (1 - x^2)^2 on [-1, 1].
inline CurveSpec quintic_curve() {
  return CurveSpec{"quintic", 2, -1, 1, [](const Rational& t) {
                     Rational u = 1 - t * t;
                     return Point{t, Rational(t * u * u)};
                   }};
}

/// Polynomial curve with one coefficient list per coordinate.
inline CurveSpec polynomial_curve(std::vector<Polynomial> coords, Rational lo = 0,
                                  Rational hi = 1) {
  if (coords.empty()) throw PreconditionError("polynomial curve needs at least one coordinate");
  if (!(lo < hi)) throw PreconditionError("curve domain needs lo < hi");
  const std::size_t d = coords.size();
  return CurveSpec{"poly", d, std::move(lo), std::move(hi),
                   [coords = std::move(coords)](const Rational& t) {
                     std::vector<Rational> c;
                     c.reserve(coords.size());
                     for (const auto& p : coords) c.push_back(evaluate(p, t));
                     return Point(std::move(c));
                   }};
}

/// The parabola y = t^2 on [-1, 1] with `dents` small inward bumps.
///
/// Dent j is centered at c_j = -1 + (2j+1)/dents with half-width w = 1/(4 dents)
/// and adds depth * (1 - s^2)^2, s = (t - c_j)/w, on |s| < 1.  The bump is C^1 at
/// its ends, and when depth > w^2/2 its middle is concave, so each dent forces
/// two extra convex pieces.  Requires 0 < depth <= w.
inline CurveSpec dented_arc(std::size_t dents, Rational depth) {
  if (dents < 1) throw PreconditionError("dented arc needs at least one dent");
  const Rational w(1, 4 * dents);
  if (sgn(depth) <= 0) throw PreconditionError("dent depth must be positive");
  if (depth > w) {
    throw PreconditionError("dent depth " + to_string(depth) + " exceeds the dent half-width " +
                            to_string(w));
  }
  const Rational m(dents);
  return CurveSpec{"dented_arc", 2, -1, 1, [dents, m, w, depth](const Rational& t) {
                     Rational y = t * t;
                     // index of the cell [-1 + 2j/m, -1 + 2(j+1)/m) containing t
                     Rational cell = (t + 1) * m / 2;
                     Rational j = floor(cell);
                     if (j >= Rational(dents)) j = Rational(dents - 1);
                     Rational c = -1 + (2 * j + 1) / m;
                     Rational s = (t - c) / w;
                     if (abs(s) < 1) {
                       Rational b = 1 - s * s;
                       y += depth * b * b;
                     }
                     return Point{t, y};
                   }};
}

/// Named builtin curve parameters (unused fields are ignored).
struct CurveParams {
  std::optional<std::size_t> d;
  std::optional<std::size_t> dents;
  std::optional<Rational> depth;
  std::optional<std::vector<Polynomial>> coeffs;
  std::optional<Rational> lo;
  std::optional<Rational> hi;
};

inline CurveSpec builtin(std::string_view name, const CurveParams& params = {}) {
  if (name == "moment") return moment_curve(params.d.value_or(2));
  if (name == "quintic") return quintic_curve();
  if (name == "dented_arc") {
    return dented_arc(params.dents.value_or(5), params.depth.value_or(Rational(1, 100)));
  }
  if (name == "poly") {
    if (!params.coeffs) throw PreconditionError("poly curve needs coefficients");
    return polynomial_curve(*params.coeffs, params.lo.value_or(0), params.hi.value_or(1));
  }
  throw PreconditionError("unknown curve '" + std::string(name) + "'");
}

/// Seeded splitmix64 stream; identical on every platform.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi].
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return lo + next() % (hi - lo + 1);
  }

private:
  std::uint64_t state_;
};

struct SampleOptions {
  /// Extra attempts per cell after the first one fails.
  std::size_t retry_budget = 32;
  /// Jitter offsets are u / jitter_denominator of a cell, 0 < u < jitter_denominator.
  std::uint64_t jitter_denominator = 4096;
  /// Refuse to create more cells than this.
  std::size_t max_samples = 200000;
};

/// Parameters t_1 < ... < t_n meeting every length-eps subinterval, and their path.
struct EpsSample {
  Rational eps;
  std::vector<Rational> params;
  PolyPath path;
  std::size_t retries = 0;
};

/// One jittered parameter per cell of width <= eps/2, each accepted only if
/// the images stay in general position (re-jittered otherwise).
inline EpsSample epsilon_sample(const CurveSpec& curve, const Rational& eps, std::uint64_t seed,
                                const SampleOptions& opts = {}) {
  if (sgn(eps) <= 0) throw PreconditionError("eps must be positive");
  if (!(curve.lo < curve.hi)) throw PreconditionError("curve domain needs lo < hi");
  if (opts.jitter_denominator < 2) throw PreconditionError("jitter denominator must be >= 2");
  const Rational length = curve.hi - curve.lo;
  Rational cells_q = ceil(2 * length / eps);
  if (cells_q > Rational(static_cast<unsigned long>(opts.max_samples))) {
    throw PreconditionError("eps = " + to_string(eps) + " needs " + to_string(cells_q) +
                            " samples, more than the limit " + std::to_string(opts.max_samples));
  }
  const std::size_t cells = cells_q.get_num().get_ui();
  const Rational width = length / Rational(static_cast<unsigned long>(cells));
  const Rational den(static_cast<unsigned long>(opts.jitter_denominator));

  SplitMix64 rng(seed);
  GeneralPositionBuilder builder(curve.dim);
  std::vector<Rational> params;
  params.reserve(cells);
  std::size_t retries = 0;
  for (std::size_t c = 0; c < cells; ++c) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt <= opts.retry_budget; ++attempt) {
      Rational u(static_cast<unsigned long>(rng.uniform(1, opts.jitter_denominator - 1)));
      Rational t = curve.lo + width * (Rational(static_cast<unsigned long>(c)) + u / den);
      Point p = curve(t);
      if (p.dim() != curve.dim) throw DimensionError("curve evaluator returned a wrong dimension");
      if (builder.try_append(p)) {
        params.push_back(t);
        placed = true;
        break;
      }
      ++retries;
    }
    if (!placed) {
      throw SamplingError("no general-position sample found in cell " + std::to_string(c) +
                              " after " + std::to_string(opts.retry_budget) +
                              " retries; the curve may contain a segment or be degenerate",
                          c);
    }
  }
  PolyPath path(PointSeq(curve.dim, builder.points()));
  return EpsSample{eps, std::move(params), std::move(path), retries};
}

struct CurveDecomposition {
  EpsSample sample;
  ConvexDecomposition decomposition;
  /// Parameters of the vertices shared by consecutive pieces.
  std::vector<Rational> cuts;
  /// [lo, cut_1], [cut_1, cut_2], ..., [cut_{m-1}, hi].
  std::vector<std::pair<Rational, Rational>> subintervals;
};

inline CurveDecomposition decompose_curve(const CurveSpec& curve, const Rational& eps,
                                          std::uint64_t seed, const SampleOptions& opts = {}) {
  auto sample = epsilon_sample(curve, eps, seed, opts);
  auto dec = decompose(sample.path);
  std::vector<Rational> cuts;
  for (std::size_t i = 0; i + 1 < dec.pieces.size(); ++i) {
    cuts.push_back(sample.params[dec.pieces[i].last]);
  }
  std::vector<std::pair<Rational, Rational>> intervals;
  Rational left = curve.lo;
  for (const auto& c : cuts) {
    intervals.emplace_back(left, c);
    left = c;
  }
  intervals.emplace_back(left, curve.hi);
  return CurveDecomposition{std::move(sample), std::move(dec), std::move(cuts),
                            std::move(intervals)};
}

} // namespace convexsplit
