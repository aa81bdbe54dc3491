#include <gtest/gtest.h>

#include "support.hpp"

using namespace convexsplit;
using support::Gen;

namespace {

Point P(const char* x, const char* y) { return parse_point({x, y}); }

PolyPath zigzag() { return PolyPath(PointSeq(2, {P("0", "0"), P("1", "1"), P("2", "0"), P("3", "1")})); }

PolyPath parabola() {
  return PolyPath(support::moment_points(2, support::integer_params(0, 5)));
}

Hyperplane horizontal(const char* y) { return Hyperplane({Rational(0), Rational(1)}, parse_rational(y)); }

} // namespace

TEST(CrossingsWith, Examples) {
  EXPECT_EQ(crossings_with(zigzag(), horizontal("1/2")), 3u);
  EXPECT_EQ(crossings_with(parabola(), horizontal("-1")), 0u);
  EXPECT_EQ(crossings_with(parabola(), horizontal("1/2")), 1u);
  EXPECT_EQ(crossings_with(parabola(), horizontal("0")), 1u);
  EXPECT_EQ(crossings_with(parabola(), horizontal("10")), 1u);
  EXPECT_EQ(crossings_with(parabola(), Hyperplane({Rational(-4), Rational(1)}, Rational(-1, 2))), 2u);
  EXPECT_THROW(crossings_with(parabola(), Hyperplane({Rational(1)}, Rational(0))), DimensionError);
}

TEST(CrossingsWith, EdgeOnHyperplaneIsAnError) {
  PolyPath p(PointSeq(2, {P("0", "0"), P("1", "0"), P("2", "1")}));
  try {
    crossings_with(p, horizontal("0"));
    FAIL() << "expected EdgeOnHyperplaneError";
  } catch (const EdgeOnHyperplaneError& e) {
    EXPECT_EQ(e.edge(), 0u);
  }
}

TEST(PolyPath, Preconditions) {
  EXPECT_THROW(PolyPath(PointSeq(2, {P("0", "0")})), PreconditionError);
  EXPECT_THROW(PolyPath(PointSeq(2, {P("0", "0"), P("1", "1"), P("2", "2")})), GeneralPositionError);
}

TEST(MaxCrossings, Zigzag) {
  auto z = zigzag();
  auto r = max_crossings(z);
  EXPECT_EQ(r.max_crossings, 3u);
  EXPECT_EQ(evaluate_witness(z, r.witness), 3u);
  EXPECT_EQ(crossings_with(z, realize_witness(z, r.witness)), 3u);
  EXPECT_EQ(r.witness.subset, (std::vector<std::size_t>{0, 2}));
  EXPECT_TRUE(r.witness.perturbed);
}

TEST(MaxCrossings, MomentCurvesCrossAtMostD) {
  EXPECT_EQ(max_crossings(parabola()).max_crossings, 2u);
  PolyPath m3(support::moment_points(3, support::integer_params(0, 6)));
  EXPECT_EQ(max_crossings(m3).max_crossings, 3u);
  PolyPath line(PointSeq(1, {Point{Rational(0)}, Point{Rational(2)}, Point{Rational(5)}}));
  EXPECT_EQ(max_crossings(line).max_crossings, 1u);
}

TEST(MaxCrossings, AgreesWithPlanarReference) {
  Gen g(41);
  for (int it = 0; it < 300; ++it) {
    auto s = g.general_seq(2, g.index(2, 8), 10);
    PolyPath p(s);
    auto r = max_crossings(p);
    ASSERT_EQ(r.max_crossings, support::ref_max_crossings_2d(s));
    ASSERT_EQ(evaluate_witness(p, r.witness), r.max_crossings);
    ASSERT_EQ(crossings_with(p, realize_witness(p, r.witness)), r.max_crossings);
  }
}

TEST(MaxCrossings, AgreesWithLineReference) {
  Gen g(42);
  for (int it = 0; it < 200; ++it) {
    auto s = g.general_seq(1, g.index(2, 10), 30);
    ASSERT_EQ(max_crossings(PolyPath(s)).max_crossings, support::ref_max_crossings_1d(s));
  }
}

TEST(MaxCrossings, NoRandomHyperplaneDoesBetter) {
  Gen g(43);
  for (int it = 0; it < 20; ++it) {
    std::size_t d = g.index(2, 3);
    auto s = g.general_seq(d, g.index(d + 2, 9), 6);
    PolyPath p(s);
    auto r = max_crossings(p);
    for (int h = 0; h < 10000; ++h) {
      ASSERT_LE(crossings_with(p, support::random_hyperplane(g, s, 6)), r.max_crossings);
    }
    EXPECT_EQ(crossings_with(p, realize_witness(p, r.witness)), r.max_crossings);
  }
}

TEST(MaxCrossings, ThreadCountDoesNotChangeTheResult) {
  Gen g(44);
  for (int it = 0; it < 30; ++it) {
    std::size_t d = g.index(2, 3);
    PolyPath p(g.general_seq(d, g.index(d + 1, 10)));
    auto a = max_crossings(p, 1);
    auto b = max_crossings(p, 4);
    ASSERT_EQ(a.max_crossings, b.max_crossings);
    ASSERT_EQ(a.witness.subset, b.witness.subset);
    ASSERT_EQ(a.witness.perturbed, b.witness.perturbed);
    ASSERT_EQ(a.witness.sides, b.witness.sides);
  }
}

TEST(Convexity, HomogeneousIffAtMostDCrossings) {
  Gen g(45);
  int convex = 0;
  for (int it = 0; it < 300; ++it) {
    std::size_t d = g.index(1, 3);
    std::size_t n = g.index(d + 1, d + 5);
    std::optional<PointSeq> h;
    if (it % 3 == 0) h = support::random_homogeneous(g, d, n);
    PolyPath p(h ? *h : g.general_seq(d, n));
    bool c = is_convex(p);
    convex += c;
    ASSERT_EQ(c, support::ref_homogeneous(p.vertices()));
    ASSERT_EQ(c, max_crossings(p).max_crossings <= d);
  }
  EXPECT_GE(convex, 50);
}

TEST(Decompose, ZigzagAndParabola) {
  auto z = decompose(zigzag());
  ASSERT_EQ(z.size(), 2u);
  EXPECT_EQ(z.pieces[0].last, 2u);
  EXPECT_EQ(z.pieces[1].first, 2u);
  EXPECT_EQ(decompose(parabola()).size(), 1u);
}

TEST(Decompose, PiecesAreConvexMaximalAndFewest) {
  Gen g(46);
  for (int it = 0; it < 200; ++it) {
    std::size_t d = g.index(1, 3);
    auto s = g.general_seq(d, g.index(2, 9));
    PolyPath p(s);
    auto dec = decompose(p);
    ASSERT_EQ(dec.size(), support::ref_min_pieces(s));
    ASSERT_EQ(dec.pieces.front().first, 0u);
    ASSERT_EQ(dec.pieces.back().last, s.size() - 1);
    for (std::size_t j = 0; j < dec.size(); ++j) {
      const auto& pc = dec.pieces[j];
      if (j > 0) {
        ASSERT_EQ(pc.first, dec.pieces[j - 1].last);
      }
      ASSERT_TRUE(support::ref_homogeneous_range(s, pc.first, pc.last));
      if (j + 1 < dec.size()) {
        ASSERT_FALSE(support::ref_homogeneous_range(s, pc.first, pc.last + 1));
      }
    }
  }
}
