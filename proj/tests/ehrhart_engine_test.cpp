#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace ehrhart_local;
using namespace ehrhart_local::testing;

namespace {

std::vector<DomainPolicy> policies() { return {DomainPolicy::cube(), DomainPolicy::dv(hexagonalGram())}; }

EhrhartPolynomial poly(std::initializer_list<Rational> lowToHigh) { return {std::vector<Rational>(lowToHigh)}; }

// |Z^d ∩ tP| for a box [0,1]^d is (t+1)^d, for the standard simplex binom(t+d, d).
std::int64_t binom(std::int64_t n, std::int64_t k) {
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::int64_t> faceCounts(const TilingReport& r, char kind) {
  std::vector<std::int64_t> out;
  for (const auto& f : r.perFace)
    if (f.face[0] == kind) out.push_back(f.count);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(BruteForce, TriangleCounts) {
  EXPECT_EQ(bruteForceCount(triangleS(), 1), 4);
  EXPECT_EQ(bruteForceCount(triangleS(), 8), 109);
  EXPECT_EQ(bruteForceCount(triangleS(), 4), 31);
  EXPECT_EQ(bruteForceCount(triangleS(), 0), 1);
  EXPECT_THROW(bruteForceCount(triangleS(), -1), std::invalid_argument);
}

TEST(BruteForce, AgreesWithNaiveScan) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 40; ++i) {
    LatticePolygon p = randomLatticePolygon(rng, -5, 5);
    for (std::int64_t t : {0, 1, 2, 3}) EXPECT_EQ(bruteForceCount(p, t), naiveCount(p.vertices(), t));
  }
}

TEST(BruteForce, HigherDimensionalPolytopes) {
  LatticePolytope cube3({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  LatticePolytope simplex4({{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  for (std::int64_t t = 0; t <= 4; ++t) {
    EXPECT_EQ(cube3.count(t), (t + 1) * (t + 1) * (t + 1));
    EXPECT_EQ(simplex4.count(t), binom(t + 4, 4));
  }
  EXPECT_EQ(ehrhartByBruteForce(cube3), poly({1, 3, 3, 1}));
  // Reeve tetrahedron of height 3, E(t) = t^3/2 + t^2 + 3t/2 + 1.
  LatticePolytope reeve({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 3}});
  EXPECT_EQ(reeve.count(1), 4);
  EXPECT_EQ(ehrhartByBruteForce(reeve), poly({1, makeRational(3, 2), 1, makeRational(1, 2)}));
  EXPECT_THROW(LatticePolytope({{0, 0, 0, 0, 0}, {1, 0, 0, 0, 0}}), std::invalid_argument);
}

TEST(Interpolation, Examples) {
  std::vector<Integer> s{1, 4, 10};
  EXPECT_EQ(interpolateEhrhart(s, 2), poly({1, makeRational(3, 2), makeRational(3, 2)}));
  EXPECT_EQ(ehrhartByBruteForce(triangleS()), poly({1, makeRational(3, 2), makeRational(3, 2)}));
  EXPECT_EQ(ehrhartByBruteForce(unitSquare()), poly({1, 2, 1}));
  std::vector<Integer> bad{1, 4, 10, 20};
  EXPECT_THROW(interpolateEhrhart(bad, 2), std::domain_error);
  EXPECT_THROW(interpolateEhrhart(s, 3), std::invalid_argument);
}

TEST(Interpolation, DegeneratePolygonIsRejected) {
  EXPECT_THROW(LatticePolygon({{0, 0}, {1, 1}, {2, 2}}), std::invalid_argument);
  EXPECT_THROW(LatticePolygon({{0, 0}, {1, 0}}), std::invalid_argument);
}

TEST(LocalFormula, TriangleBothViews) {
  MuTable t = buildMuTable(triangleS(), DomainPolicy::cube(), 0);
  EhrhartPolynomial expected = poly({1, makeRational(3, 2), makeRational(3, 2)});
  EXPECT_EQ(localFormulaCoefficients(t), expected);
  auto normal = muByCone(t, ConeView::Normal);
  EXPECT_EQ(localFormulaCoefficients(triangleS(), normal, ConeView::Normal), expected);
  std::map<std::string, Rational> partial = normal;
  partial.erase(partial.begin());
  EXPECT_THROW(localFormulaCoefficients(triangleS(), partial, ConeView::Normal), std::out_of_range);
}

TEST(LocalFormula, SquareAndDvTriangle) {
  EXPECT_EQ(localFormulaCoefficients(buildMuTable(unitSquare(), DomainPolicy::cube(), 0)), poly({1, 2, 1}));
  EXPECT_EQ(localFormulaCoefficients(buildMuTable(triangleS(), DomainPolicy::dv(hexagonalGram()), 0)),
            ehrhartByBruteForce(triangleS()));
}

TEST(LocalFormula, RandomPolygonsMatchTheOracle) {
  std::mt19937_64 rng(777);
  for (int i = 0; i < 20; ++i) {
    LatticePolygon p = randomLatticePolygon(rng);
    EhrhartPolynomial oracle = ehrhartByBruteForce(p);
    for (const auto& policy : policies()) {
      MuTable t = buildMuTable(p, policy, 0);
      EhrhartPolynomial local = localFormulaCoefficients(t);
      EXPECT_EQ(local, oracle) << policy.name() << " " << local.toString() << " vs " << oracle.toString();
      // e1 is half the lattice perimeter for centrally symmetric domains.
      Rational perimeter = 0;
      for (const auto& e : p.edges()) perimeter += Rational(e.latticeLength);
      EXPECT_EQ(local.coeffs[1], perimeter / 2);
    }
  }
}

TEST(FeasiblePoints, TriangleAtEight) {
  MuTable t = buildMuTable(triangleS(), DomainPolicy::cube(), 0);
  EXPECT_EQ(feasiblePoints(t, "P", 8).size(), 70u);
  std::vector<std::size_t> edges;
  for (std::size_t i = 0; i < 3; ++i) edges.push_back(feasiblePoints(t, LatticePolygon::edgeId(i), 8).size());
  std::sort(edges.begin(), edges.end());
  EXPECT_EQ(edges, (std::vector<std::size_t>{6, 6, 7}));
  for (std::size_t i = 0; i < 3; ++i) {
    auto pts = feasiblePoints(t, LatticePolygon::vertexId(i), 8);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(pts[0], 8 * triangleS().vertex(i));
  }
}

TEST(FeasiblePoints, AllLieInTheDilate) {
  MuTable t = buildMuTable(triangleS(), DomainPolicy::cube(), 0);
  for (const auto& f : t.faces)
    for (IVec2 z : feasiblePoints(t, f.id, 8)) EXPECT_TRUE(triangleS().contains(z, 8)) << f.id;
}

TEST(Eq1, TriangleAtEight) {
  MuTable t = buildMuTable(triangleS(), DomainPolicy::cube(), 0);
  TilingReport r = verifyEq1(t, 8);
  EXPECT_TRUE(r.matched);
  EXPECT_EQ(r.total, 109);
  EXPECT_EQ(r.latticeCount, 109);
  EXPECT_EQ(faceCounts(r, 'P'), (std::vector<std::int64_t>{70}));
  EXPECT_EQ(faceCounts(r, 'e'), (std::vector<std::int64_t>{6, 6, 7}));
  EXPECT_EQ(faceCounts(r, 'v'), (std::vector<std::int64_t>{1, 1, 1}));
  Rational sum = 0;
  for (const auto& f : r.perFace) {
    EXPECT_EQ(f.contribution, f.v * Rational(f.count));
    sum += f.contribution;
  }
  EXPECT_EQ(sum, r.total);
}

TEST(Eq1, SquareAtFive) {
  TilingReport r = verifyEq1(buildMuTable(unitSquare(), DomainPolicy::cube(), 0), 5);
  EXPECT_TRUE(r.matched);
  EXPECT_EQ(r.total, 36);
}

TEST(Eq1, SmallDilationsAreFlagged) {
  MuTable t = buildMuTable(triangleS(), DomainPolicy::cube(), 0);
  for (std::int64_t d = 0; d <= 12; ++d) {
    TilingReport r = verifyEq1(t, d);
    EXPECT_EQ(r.latticeCount, bruteForceCount(triangleS(), d));
    EXPECT_EQ(r.belowT0, !r.matched);
  }
  EXPECT_EQ(detectT0(t, 12), 2);
}

TEST(Eq2, TriangleAtEight) {
  MuTable t = buildMuTable(triangleS(), DomainPolicy::cube(), 0);
  Eq2Report whole = verifyEq2(t, "P", 8);
  EXPECT_EQ(whole.relativeVolume, 96);
  EXPECT_TRUE(whole.matchedCountG);
  EXPECT_FALSE(whole.matchedCountF);
  for (std::size_t i = 0; i < 3; ++i) {
    Eq2Report e = verifyEq2(t, LatticePolygon::edgeId(i), 8);
    EXPECT_EQ(e.relativeVolume, 8);
    EXPECT_TRUE(e.matchedCountG) << e.face;
    Eq2Report v = verifyEq2(t, LatticePolygon::vertexId(i), 8);
    EXPECT_EQ(v.relativeVolume, 1);
    EXPECT_EQ(v.countF, 1);
    EXPECT_TRUE(v.matchedCountG);
    EXPECT_TRUE(v.matchedCountF);
  }
}

TEST(Tiling, TriangleAtEight) {
  MuTable t = buildMuTable(triangleS(), DomainPolicy::cube(), 0);
  TilingCheck c = verifyTiling(t, 8, boundingBox(triangleS(), 8).inflated(2));
  EXPECT_TRUE(c.matched) << (c.failures.empty() ? "" : c.failures.front());
  EXPECT_EQ(c.coveredArea, c.windowArea);
  EXPECT_EQ(c.badTiles, 0);
}

TEST(Tiling, ShiftedWindowAtLargerDilation) {
  for (const auto& policy : policies()) {
    MuTable t = buildMuTable(triangleS(), policy, 0);
    Box w = boundingBox(triangleS(), 13).inflated(1).shifted({-9, 6});
    TilingCheck c = verifyTiling(t, 13, w);
    EXPECT_TRUE(c.matched) << policy.name() << (c.failures.empty() ? "" : " " + c.failures.front());
  }
}

TEST(Tiling, BelowThresholdIsReported) {
  MuTable t = buildMuTable(triangleS(), DomainPolicy::cube(), 0);
  EXPECT_TRUE(verifyTiling(t, 0, boundingBox(triangleS(), 1)).belowT0);
  TilingCheck c = verifyTiling(t, 1, boundingBox(triangleS(), 1).inflated(2));
  EXPECT_FALSE(c.matched);
  EXPECT_TRUE(c.belowT0);
}

TEST(DomainComplex, UnionOfTilesHasAreaEqualToTheCount) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 6; ++i) {
    LatticePolygon p = randomLatticePolygon(rng, -3, 3);
    for (const auto& policy : policies()) {
      Context ctx(policy, std::vector<IVec2>{}, 0);
      for (std::int64_t t = 1; t <= 6; t += 5) {
        auto pts = latticePointsIn(p.dilated(t));
        // Area of the union, adding one tile at a time minus its earlier
        // neighbours (tiles farther apart than 2 * radius cannot meet).
        const std::int64_t reach = 2 * ctx.tileRadius();
        Rational a = 0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
          PolySet near;
          for (std::size_t k = 0; k < j; ++k)
            if (std::abs(pts[k].x - pts[j].x) <= reach && std::abs(pts[k].y - pts[j].y) <= reach)
              near.cells.push_back(ctx.tileAt(pts[k]));
          a += area(subtract(PolySet(ctx.tileAt(pts[j])), near));
        }
        EXPECT_EQ(a, Rational(static_cast<long>(pts.size())));
      }
    }
  }
}
