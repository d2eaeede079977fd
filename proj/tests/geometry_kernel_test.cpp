#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace ehrhart_local;
using namespace ehrhart_local::testing;

namespace {

ConvexPoly centeredSquare() {
  Rational h(1, 2);
  return ConvexPoly::box({-h, -h}, {h, h});
}

ConvexPoly polyOf(const LatticePolygon& p) {
  std::vector<Vec2> vs;
  for (IVec2 v : p.vertices()) vs.push_back(Vec2(v));
  return ConvexPoly::fromVertices(vs);
}

}  // namespace

TEST(EpsScalar, LexicographicOrder) {
  EpsScalar a(1, -5), b(1, 2), c(makeRational(3, 2));
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
  EXPECT_EQ(EpsScalar(0, 1).sign(), 1);
  EXPECT_EQ(EpsScalar(0, -1).sign(), -1);
  EXPECT_EQ(EpsScalar(0, 0).sign(), 0);
}

TEST(EpsScalar, FirstOrderArithmetic) {
  EpsScalar a(2, 3), b(makeRational(1, 2), -1);
  EXPECT_EQ(a + b, EpsScalar(makeRational(5, 2), 2));
  EXPECT_EQ(a - b, EpsScalar(makeRational(3, 2), 4));
  EXPECT_EQ(a * Rational(2), EpsScalar(4, 6));
  EXPECT_EQ(a * EpsScalar(3), EpsScalar(6, 9));
  EXPECT_THROW(a * b, std::domain_error);
  EXPECT_THROW(a / Rational(0), std::domain_error);
}

TEST(Primitive, Examples) {
  EXPECT_EQ(primitive({4, 6}), (IVec2{2, 3}));
  EXPECT_EQ(primitive({1, 1}), (IVec2{1, 1}));
  EXPECT_EQ(primitive({0, -8}), (IVec2{0, -1}));
  EXPECT_THROW(primitive({0, 0}), std::invalid_argument);
  EXPECT_EQ(primitiveDirection({makeRational(1, 2), makeRational(-3, 4)}), (IVec2{2, -3}));
}

TEST(Intersect, SquareWithItself) {
  PolySet sq(centeredSquare());
  PolySet r = intersect(sq, sq);
  EXPECT_EQ(area(r), 1);
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_EQ(r.cells[0], centeredSquare());
}

TEST(Intersect, NeighbouringTranslatesMeetInASegment) {
  PolySet a(centeredSquare());
  PolySet b = a.translated({1, 0});
  PolySet r = intersect(a, b);
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_EQ(r.cells[0].dimension(), 1);
  EXPECT_EQ(area(r), 0);
}

TEST(Intersect, TriangleWithUnitSquare) {
  ConvexPoly s = polyOf(triangleS());
  ConvexPoly sq = ConvexPoly::box({0, 0}, {1, 1});
  Rational got = area(intersect(PolySet(s), PolySet(sq)));
  std::vector<Halfplane> hs = edgeHalfplanes(s.vertices());
  for (const auto& h : edgeHalfplanes(sq.vertices())) hs.push_back(h);
  EXPECT_EQ(got, sliceArea(hs));
  EXPECT_EQ(got, makeRational(1, 4));
}

TEST(Subtract, IdentityAndSelf) {
  PolySet a(centeredSquare());
  EXPECT_EQ(area(subtract(a, PolySet{})), 1);
  EXPECT_EQ(area(subtract(a, a)), 0);
  EXPECT_TRUE(subtract(a, a).empty());
}

TEST(Subtract, StripMinusTwoInteriorSquares) {
  PolySet strip(ConvexPoly::box({-5, 0}, {5, 1}));
  PolySet holes(std::vector<ConvexPoly>{ConvexPoly::box({-3, 0}, {-2, 1}), ConvexPoly::box({1, 0}, {2, 1})});
  PolySet r = subtract(strip, holes);
  EXPECT_EQ(area(r), area(strip) - 2);
  for (const auto& c : r.cells) EXPECT_EQ(c.dimension(), 2);
}

TEST(Area, Examples) {
  EXPECT_EQ(area(PolySet(polyOf(triangleS()))), makeRational(3, 2));
  EXPECT_EQ(area(PolySet(centeredSquare())), 1);
  EXPECT_EQ(area(PolySet{}), 0);
}

TEST(Area, InvariantUnderVertexRotation) {
  std::vector<Vec2> vs = polyOf(triangleS()).vertices();
  for (int i = 0; i < 3; ++i) {
    std::rotate(vs.begin(), vs.begin() + 1, vs.end());
    EXPECT_EQ(ConvexPoly::fromVertices(vs).area(), makeRational(3, 2));
  }
}

TEST(LineSection, Examples) {
  PolySet sq(centeredSquare());
  EXPECT_EQ(lineSectionLength(sq, RationalLine::through({0, 0}, {1, 0})), 1);
  EXPECT_EQ(lineSectionLength(sq, RationalLine::through({0, 0}, {1, 1})), 1);
  // A boundary edge lying on the line counts once in closed mode. Shifting by
  // eps*u moves cells down, so the axis then belongs to the upper box only.
  PolySet two(std::vector<ConvexPoly>{ConvexPoly::box({0, 0}, {1, 1}), ConvexPoly::box({0, -1}, {1, 0})});
  RationalLine axis = RationalLine::through({0, 0}, {1, 0});
  EXPECT_EQ(lineSectionLength(two, axis), 1);
  Vec2 u{-1, makeRational(-1, 1009)};
  EXPECT_EQ(lineSectionLength(PolySet(ConvexPoly::box({0, 0}, {1, 1})), axis, &u), 1);
  EXPECT_EQ(lineSectionLength(PolySet(ConvexPoly::box({0, -1}, {1, 0})), axis, &u), 0);
  EXPECT_EQ(lineSectionLength(two, axis, &u), 1);
}

TEST(LineSection, RayRestriction) {
  PolySet sq(centeredSquare());
  EXPECT_EQ(lineSectionLength(sq, RationalLine::through({0, 0}, {1, 0}), nullptr, Rational(0)), makeRational(1, 2));
}

TEST(Polarity, Examples) {
  Cone2 ray = Cone2::ray({1, -1});
  EXPECT_EQ(polarFconeFromNormalCone(ray), Cone2::halfplane({1, -1}));
  EXPECT_TRUE(Cone2::halfplane({1, -1}).contains({1, 2}));  // x1 <= x2
  EXPECT_EQ(polarFconeFromNormalCone(Cone2::point()).kind(), ConeKind::Plane);
  Cone2 n = Cone2::generatedBy({{1, -1}, {1, 2}});
  EXPECT_EQ(polarFconeFromNormalCone(n), Cone2::wedge({1, -1}, {1, 2}));
}

TEST(Polarity, MatchesBruteForceOnGrid) {
  std::vector<IVec2> gens{{1, -1}, {1, 2}};
  Cone2 polar = Cone2::generatedBy(gens).polar();
  for (std::int64_t x = -6; x <= 6; ++x)
    for (std::int64_t y = -6; y <= 6; ++y) {
      bool expected = dot(gens[0], IVec2{x, y}) <= 0 && dot(gens[1], IVec2{x, y}) <= 0;
      EXPECT_EQ(polar.contains(Vec2(IVec2{x, y})), expected) << x << "," << y;
    }
}

TEST(Polarity, InvolutionOnRandomPolygonFaces) {
  std::mt19937_64 rng(20260101);
  for (int i = 0; i < 30; ++i) {
    LatticePolygon p = randomLatticePolygon(rng);
    EXPECT_EQ(Cone2::plane().polar().polar(), Cone2::plane());
    for (std::size_t j = 0; j < p.size(); ++j) {
      Cone2 h = p.fconeOfEdge(j);
      Cone2 w = p.fconeOfVertex(j);
      EXPECT_EQ(h.polar().kind(), ConeKind::Ray);
      EXPECT_EQ(h.polar().polar(), h);
      EXPECT_EQ(w.polar().polar(), w);
      EXPECT_EQ(normalConeFromFcone(w), Cone2::generatedBy({p.edge(j + p.size() - 1).normal, p.edge(j).normal}));
    }
  }
}

TEST(Cone2, LinealSpaces) {
  EXPECT_EQ(Cone2::plane().linealDimension(), 2);
  EXPECT_EQ(Cone2::halfplane({1, -1}).linealDimension(), 1);
  EXPECT_EQ(Cone2::halfplane({1, -1}).linealLine()->direction, (IVec2{1, 1}));
  EXPECT_EQ(Cone2::wedge({1, 0}, {0, 1}).linealDimension(), 0);
  EXPECT_THROW(Cone2::wedge({1, 1}, {-2, -2}), std::invalid_argument);
}

TEST(LatticePoints, Examples) {
  auto pts = latticePointsIn(PolySet(polyOf(triangleS())));
  std::vector<IVec2> expected{{0, 2}, {1, 0}, {1, 1}, {2, 1}};
  EXPECT_EQ(pts, expected);
  EXPECT_EQ(latticePointsIn(triangleS().dilated(8)).size(), 109u);
  EXPECT_TRUE(latticePointsIn(PolySet{}).empty());
}

TEST(LatticePoints, HalfOpenTileHasExactlyOnePoint) {
  Vec2 u{-1, makeRational(-1, 1009)};
  for (std::int64_t x = -3; x <= 3; ++x) {
    ConvexPoly t = centeredSquare().translated({makeRational(x, 2), makeRational(x, 3)});
    EXPECT_EQ(latticePointsIn(t, &u).size(), 1u);
  }
}

TEST(LatticePoints, UnboundedInputIsRejected) {
  std::vector<Halfplane> hs{{{1, 0}, 0}, {{0, 1}, 0}};
  EXPECT_THROW(latticePointsIn(std::span<const Halfplane>(hs)), std::domain_error);
}

TEST(LatticePoints, AgreesWithNaiveScanOnRandomPolygons) {
  std::mt19937_64 rng(424242);
  for (int i = 0; i < 100; ++i) {
    LatticePolygon p = randomLatticePolygon(rng, -20, 20);
    EXPECT_EQ(static_cast<std::int64_t>(latticePointsIn(p.dilated(1)).size()), naiveCount(p.vertices(), 1));
  }
}

TEST(BooleanOps, AreaBookkeepingOnRandomRationalPolygons) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 60; ++i) {
    ConvexPoly a = randomRationalPolygon(rng);
    ConvexPoly b = randomRationalPolygon(rng);
    PolySet inter = intersect(PolySet(a), PolySet(b));
    PolySet diff = subtract(PolySet(a), PolySet(b));
    EXPECT_EQ(a.area(), sliceArea(edgeHalfplanes(a.vertices())));
    EXPECT_EQ(area(a), area(inter) + area(diff));
    std::vector<Halfplane> both = edgeHalfplanes(a.vertices());
    for (const auto& h : edgeHalfplanes(b.vertices())) both.push_back(h);
    EXPECT_EQ(area(inter), sliceArea(both));
    // The union of the difference pieces and the intersection is a.
    PolySet reunion = diff;
    for (const auto& c : inter.cells) reunion.cells.push_back(c);
    EXPECT_EQ(area(reunion), a.area());
    EXPECT_EQ(area(subtract(PolySet(a), reunion)), 0);
  }
}

TEST(BooleanOps, ShiftNeverChangesMeasures) {
  std::mt19937_64 rng(7);
  Vec2 u{-1, makeRational(-1, 1013)};
  for (int i = 0; i < 40; ++i) {
    ConvexPoly a = randomRationalPolygon(rng);
    RationalLine L = RationalLine::through(a.vertices()[0], a.vertices()[1] + Vec2{makeRational(1, 3), 0});
    Rational closed = lineSectionLength(PolySet(a), L);
    Rational shifted = lineSectionLength(PolySet(a), L, &u);
    // Lines through the interior see the same length either way.
    if (closed > 0 && a.clipped(Halfplane{{L.direction.y, -L.direction.x}, dot(Vec2{L.direction.y, -L.direction.x}, L.origin)})
                              .area() != a.area())
      EXPECT_EQ(closed, shifted);
  }
}
