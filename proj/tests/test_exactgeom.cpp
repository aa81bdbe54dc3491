#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "support.hpp"

using namespace convexsplit;
using support::Gen;

namespace {

Point P(long x, long y) { return Point{Rational(x), Rational(y)}; }

int parity(std::vector<std::size_t> perm) {
  int s = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    while (perm[i] != i) {
      std::swap(perm[i], perm[perm[i]]);
      s = -s;
    }
  }
  return s;
}

} // namespace

TEST(Rational, ParsesFractionsDecimalsAndIntegers) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-0.125"), Rational(-1, 8));
  EXPECT_EQ(parse_rational("1e-2"), Rational(1, 100));
  EXPECT_EQ(parse_rational("+42"), Rational(42));
  EXPECT_EQ(parse_rational(" -7/14 "), Rational(-1, 2));
  EXPECT_THROW(parse_rational("7/-14"), ParseError);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_EQ(to_string(Rational(619, 3)), "619/3");
  EXPECT_EQ(to_string(Rational(-4)), "-4");
}

TEST(Rational, DoublesConvertExactly) {
  EXPECT_EQ(rational_from_double(0.1), Rational(3602879701896397, Integer("36028797018963968")));
  EXPECT_EQ(rational_from_double(-2.5), Rational(-5, 2));
  EXPECT_THROW(rational_from_double(std::numeric_limits<double>::quiet_NaN()), ParseError);
}

TEST(Orientation, StandardExamples) {
  EXPECT_EQ(orientation({P(0, 0), P(1, 0), P(0, 1)}), 1);
  EXPECT_EQ(orientation({P(0, 0), P(0, 1), P(1, 0)}), -1);
  EXPECT_EQ(orientation({P(0, 0), P(1, 1), P(2, 2)}), 0);
  EXPECT_THROW(orientation({P(0, 0), P(1, 1)}), DimensionError);
  EXPECT_THROW(orientation({P(0, 0), P(1, 1), Point{Rational(1)}}), DimensionError);
}

TEST(Orientation, AgreesWithRationalEliminationUpToDimensionFour) {
  Gen g(11);
  for (int it = 0; it < 400; ++it) {
    std::size_t d = g.index(1, 4);
    std::vector<Point> pts;
    for (std::size_t i = 0; i <= d; ++i) pts.push_back(g.point(d, it % 3 == 0 ? 2 : 30, g.integer(1, 9)));
    ASSERT_EQ(orientation(pts), support::ref_orientation(pts));
  }
}

TEST(Orientation, PermutationMultipliesByParity) {
  Gen g(12);
  for (int it = 0; it < 200; ++it) {
    std::size_t d = g.index(1, 4);
    std::vector<Point> pts;
    for (std::size_t i = 0; i <= d; ++i) pts.push_back(g.point(d, 50, 3));
    int base = orientation(pts);
    std::vector<std::size_t> perm(d + 1);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), g.engine());
    std::vector<Point> permuted;
    for (auto i : perm) permuted.push_back(pts[i]);
    ASSERT_EQ(orientation(permuted), base * parity(perm));
  }
}

TEST(Orientation, InvariantUnderTranslationAndPositiveScaling) {
  Gen g(13);
  for (int it = 0; it < 200; ++it) {
    std::size_t d = g.index(1, 4);
    std::vector<Point> pts;
    for (std::size_t i = 0; i <= d; ++i) pts.push_back(g.point(d, 10, 2));
    Point shift = g.point(d, 100, 7);
    Rational scale(g.integer(1, 50), g.integer(1, 50));
    std::vector<Point> moved;
    for (const auto& p : pts) {
      std::vector<Rational> c;
      for (std::size_t i = 0; i < d; ++i) c.push_back(scale * p[i] + shift[i]);
      moved.emplace_back(std::move(c));
    }
    ASSERT_EQ(orientation(moved), orientation(pts));
  }
}

TEST(GeneralPosition, Examples) {
  auto moment = support::moment_points(3, support::integer_params(1, 5));
  EXPECT_TRUE(is_general_position(moment).general);

  PointSeq collinear(2, {P(0, 0), P(1, 1), P(2, 2), P(0, 1)});
  auto r = is_general_position(collinear);
  EXPECT_FALSE(r.general);
  EXPECT_EQ(r.witness, (std::vector<std::size_t>{0, 1, 2}));

  EXPECT_TRUE(is_general_position(PointSeq(2)).general);

  PointSeq dup(2, {P(0, 0), P(3, 1), P(0, 0)});
  r = is_general_position(dup);
  EXPECT_FALSE(r.general);
  EXPECT_EQ(r.witness, (std::vector<std::size_t>{0, 2}));
  EXPECT_THROW(require_general_position(dup), GeneralPositionError);
}

TEST(GeneralPosition, CoplanarQuadrupleInSpace) {
  PointSeq s(3, {Point{Rational(0), Rational(0), Rational(0)}, Point{Rational(1), Rational(0), Rational(0)},
                 Point{Rational(0), Rational(1), Rational(0)}, Point{Rational(1), Rational(1), Rational(0)},
                 Point{Rational(0), Rational(0), Rational(1)}});
  auto r = is_general_position(s);
  EXPECT_FALSE(r.general);
  EXPECT_EQ(r.witness, (std::vector<std::size_t>{0, 1, 2, 3}));

  // three collinear points are a smaller dependent set and are preferred
  PointSeq c(3, {Point{Rational(0), Rational(0), Rational(0)}, Point{Rational(1), Rational(1), Rational(1)},
                 Point{Rational(2), Rational(2), Rational(2)}});
  r = is_general_position(c);
  EXPECT_FALSE(r.general);
  EXPECT_EQ(r.witness, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(GeneralPosition, MatchesSubsetEnumerationAndIsOrderInvariant) {
  Gen g(14);
  for (int it = 0; it < 300; ++it) {
    std::size_t d = g.index(2, 3);
    std::size_t n = g.index(2, 8);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(g.point(d, 2));
    PointSeq s(d, pts);
    // reference: every subset of size <= d+1 has full affine rank; for
    // subsets of size d+1 this is a nonzero orientation, smaller ones extend
    bool ref = true;
    for (std::size_t r = 2; r <= std::min(n, d + 1) && ref; ++r) {
      for (const auto& sub : support::subsets(n, r)) {
        if (!s.affinely_independent(sub)) ref = false;
      }
    }
    ASSERT_EQ(is_general_position(s).general, ref);
    std::shuffle(pts.begin(), pts.end(), g.engine());
    ASSERT_EQ(is_general_position(PointSeq(d, pts)).general, ref);
    if (!ref) {
      auto w = is_general_position(s).witness;
      ASSERT_FALSE(s.affinely_independent(w));
    }
  }
}

TEST(GeneralPosition, BuilderMatchesBatchCheck) {
  Gen g(15);
  for (int it = 0; it < 100; ++it) {
    std::size_t d = g.index(1, 3);
    GeneralPositionBuilder b(d);
    std::vector<Point> accepted;
    for (int k = 0; k < 12; ++k) {
      Point p = g.point(d, 3);
      std::vector<Point> trial = accepted;
      trial.push_back(p);
      bool expected = is_general_position(PointSeq(d, trial)).general;
      ASSERT_EQ(b.try_append(p), expected);
      if (expected) accepted.push_back(p);
    }
    ASSERT_EQ(b.points(), accepted);
  }
}

TEST(Hyperplane, SpanExamples) {
  auto h = span_hyperplane({P(0, 0), P(1, 0)});
  EXPECT_EQ(h.normal()[0], 0);
  EXPECT_NE(h.normal()[1], 0);
  EXPECT_EQ(h.offset(), 0);

  auto plane = span_hyperplane({Point{Rational(1), Rational(0), Rational(0)},
                                Point{Rational(0), Rational(1), Rational(0)},
                                Point{Rational(0), Rational(0), Rational(1)}});
  EXPECT_EQ(plane.normal()[0], plane.normal()[1]);
  EXPECT_EQ(plane.normal()[1], plane.normal()[2]);
  EXPECT_EQ(plane.offset(), plane.normal()[0]);

  EXPECT_THROW(span_hyperplane({P(0, 0), P(0, 0)}), GeneralPositionError);
}

TEST(Hyperplane, SideOfExamples) {
  Hyperplane xaxis({Rational(0), Rational(1)}, Rational(0));
  EXPECT_EQ(side_of(xaxis, P(0, 1)), 1);
  EXPECT_EQ(side_of(xaxis, P(5, 0)), 0);
  EXPECT_EQ(side_of(xaxis, P(0, -3)), -1);
  EXPECT_THROW(side_of(xaxis, Point{Rational(1)}), DimensionError);
  EXPECT_THROW(Hyperplane({Rational(0), Rational(0)}, Rational(1)), PreconditionError);
}

TEST(Hyperplane, SideOfSpanEqualsOrientation) {
  Gen g(16);
  for (int it = 0; it < 300; ++it) {
    std::size_t d = g.index(1, 4);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < d; ++i) pts.push_back(g.point(d, 10, 3));
    PointSeq s(d, pts);
    std::vector<std::size_t> all(d);
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (!s.affinely_independent(all)) continue;
    auto h = span_hyperplane(pts);
    for (int k = 0; k < 5; ++k) {
      Point x = k == 0 ? pts[g.index(0, d - 1)] : g.point(d, 10, 3);
      std::vector<Point> tuple = pts;
      tuple.push_back(x);
      ASSERT_EQ(side_of(h, x), orientation(tuple));
    }
  }
}

TEST(Project, TruncatesAndKeepsLabels) {
  PointSeq s(3, {Point{Rational(1), Rational(1), Rational(1)}, Point{Rational(2), Rational(4), Rational(8)}},
             {7, 9});
  auto p = project(s, 2);
  EXPECT_EQ(p.dim(), 2u);
  EXPECT_EQ(p[0], P(1, 1));
  EXPECT_EQ(p[1], P(2, 4));
  EXPECT_EQ(p.labels(), (std::vector<std::size_t>{7, 9}));
  EXPECT_EQ(project(s, 3).points(), s.points());
  EXPECT_THROW(project(s, 0), PreconditionError);
  EXPECT_THROW(project(s, 4), PreconditionError);

  auto m = project(support::moment_points(3, support::integer_params(0, 4)), 2);
  for (const auto& q : m.points()) EXPECT_EQ(q[1], q[0] * q[0]);
}

TEST(PointSeq, RejectsMixedDimensions) {
  EXPECT_THROW(PointSeq(2, {P(0, 0), Point{Rational(1)}}), DimensionError);
  EXPECT_THROW(PointSeq(0), DimensionError);
}
