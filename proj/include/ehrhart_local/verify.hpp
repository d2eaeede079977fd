#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ehrhart_local/ehrhart.hpp"
#include "ehrhart_local/mu_table.hpp"

namespace ehrhart_local {

/// The feasible points of the dilated face tf. For tP: lattice points whose
/// ε-shifted tile lies in the interior of tP. For an edge from va to vb with
/// lattice length l: the points t*va + k*d with k in the X-set of va and
/// t*l - k in the X-set of vb. For a vertex: t*v.
inline std::vector<IVec2> feasiblePoints(const MuTable& tab, const std::string& faceId, std::int64_t t) {
  const LatticePolygon& P = tab.polygon;
  const std::size_t n = P.size();
  std::vector<IVec2> out;
  if (faceId == LatticePolygon::polygonId()) {
    for (IVec2 z : latticePointsIn(P.dilated(t))) {
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i) inside = tab.edgeRegions[i]->tileInside(z - t * P.edge(i).from);
      if (inside) out.push_back(z);
    }
    return out;
  }
  const FaceRecord& f = tab.face(faceId);
  const std::size_t i = std::stoul(faceId.substr(1));
  if (f.dim == 0) return {t * P.vertex(i)};
  const PolygonEdge& e = P.edge(i);
  const XSet& fromStart = tab.xset(i, i);
  const XSet& fromEnd = tab.xset(i + 1, i);
  const std::int64_t len = t * e.latticeLength;
  for (std::int64_t k = 0; k <= len; ++k)
    if (fromStart.contains(k) && fromEnd.contains(len - k)) out.push_back(t * e.from + k * e.direction);
  return out;
}

struct FaceCount {
  std::string face;
  std::int64_t count = 0;
  Rational v;
  Rational contribution;
};

/// Σ_f v_f · |feasible(tf)| against the lattice point count of tP.
struct TilingReport {
  std::int64_t t = 0;
  std::vector<FaceCount> perFace;
  Rational total;
  std::int64_t latticeCount = 0;
  bool matched = false;
  bool belowT0 = false;  // mismatch: t is below the threshold of the tiling
};

inline TilingReport verifyEq1(const MuTable& tab, std::int64_t t) {
  TilingReport r;
  r.t = t;
  for (const auto& f : tab.faces) {
    FaceCount fc{f.id, static_cast<std::int64_t>(feasiblePoints(tab, f.id, t).size()), f.v, 0};
    fc.contribution = fc.v * Rational(fc.count);
    r.total += fc.contribution;
    r.perFace.push_back(fc);
  }
  r.latticeCount = bruteForceCount(tab.polygon, t);
  r.matched = r.total == Rational(r.latticeCount);
  r.belowT0 = !r.matched;
  return r;
}

struct Eq2Term {
  std::string face;  // g <= f
  Rational w;        // w^g_f, 1 for g = f
  std::int64_t countG = 0;
};

/// relvol(tf) against Σ_{g<=f} w^g_f·|feasible(tg)| and against the variant
/// that multiplies every term by |feasible(tf)|.
struct Eq2Report {
  std::string face;
  std::int64_t t = 0;
  Rational relativeVolume;
  std::vector<Eq2Term> terms;
  std::int64_t countF = 0;
  Rational sumWithCountG;
  Rational sumWithCountF;
  bool matchedCountG = false;
  bool matchedCountF = false;
};

inline Eq2Report verifyEq2(const MuTable& tab, const std::string& faceId, std::int64_t t) {
  const LatticePolygon& P = tab.polygon;
  const std::size_t n = P.size();
  Eq2Report r;
  r.face = faceId;
  r.t = t;
  std::vector<std::string> lower{faceId};
  if (faceId == LatticePolygon::polygonId()) {
    r.relativeVolume = P.area() * Rational(t * t);
    for (std::size_t i = 0; i < n; ++i) lower.push_back(LatticePolygon::edgeId(i));
    for (std::size_t i = 0; i < n; ++i) lower.push_back(LatticePolygon::vertexId(i));
  } else if (tab.face(faceId).dim == 1) {
    const std::size_t i = std::stoul(faceId.substr(1));
    r.relativeVolume = Rational(t * P.edge(i).latticeLength);
    lower.push_back(LatticePolygon::vertexId(i));
    lower.push_back(LatticePolygon::vertexId((i + 1) % n));
  } else {
    r.relativeVolume = 1;
  }
  r.countF = static_cast<std::int64_t>(feasiblePoints(tab, faceId, t).size());
  for (const auto& g : lower) {
    Eq2Term term{g, 1, static_cast<std::int64_t>(feasiblePoints(tab, g, t).size())};
    if (g != faceId) {
      auto w = tab.face(g).wFor(faceId);
      if (!w) throw std::logic_error("missing correction volume of " + g + " for " + faceId);
      term.w = *w;
    }
    r.sumWithCountG += term.w * Rational(term.countG);
    r.sumWithCountF += term.w * Rational(r.countF);
    r.terms.push_back(term);
  }
  r.matchedCountG = r.sumWithCountG == r.relativeVolume;
  r.matchedCountF = r.sumWithCountF == r.relativeVolume;
  return r;
}

/// Integer box [lo, hi].
struct Box {
  IVec2 lo, hi;
  ConvexPoly poly() const { return ConvexPoly::box(Vec2(lo), Vec2(hi)); }
  Rational area() const { return Rational((hi.x - lo.x) * (hi.y - lo.y)); }
  Box inflated(std::int64_t m) const { return {{lo.x - m, lo.y - m}, {hi.x + m, hi.y + m}}; }
  Box shifted(IVec2 s) const { return {lo + s, hi + s}; }
};

inline Box boundingBox(const LatticePolygon& p, std::int64_t t) {
  Box b{t * p.vertex(0), t * p.vertex(0)};
  for (IVec2 v : p.vertices()) {
    b.lo = {std::min(b.lo.x, t * v.x), std::min(b.lo.y, t * v.y)};
    b.hi = {std::max(b.hi.x, t * v.x), std::max(b.hi.y, t * v.y)};
  }
  return b;
}

/// A placed region piece: which face's region and where it was anchored.
struct PlacedPiece {
  std::string face;
  IVec2 anchor;
  ConvexPoly poly;
};

/// All pieces of the translated regions {x + R(f) : x feasible for tf} that
/// lie in tile z.
class TilingAssembly {
 public:
  TilingAssembly(const MuTable& tab, std::int64_t t) : tab_(tab), t_(t) {
    auto interior = feasiblePoints(tab, "P", t);
    interior_.insert(interior.begin(), interior.end());
    for (std::size_t i = 0; i < tab.polygon.size(); ++i) {
      const PolygonEdge& e = tab.polygon.edge(i);
      edgeRegions_.push_back(tab.edgeRegions[i]->withDirection(e.direction));
      std::set<std::int64_t> ks;
      for (IVec2 x : feasiblePoints(tab, LatticePolygon::edgeId(i), t)) {
        IVec2 rel = x - t * e.from;
        ks.insert(e.direction.x != 0 ? rel.x / e.direction.x : rel.y / e.direction.y);
      }
      edgeMembers_.push_back(std::move(ks));
    }
  }

  std::vector<PlacedPiece> piecesAt(IVec2 z) const {
    const LatticePolygon& P = tab_.polygon;
    std::vector<PlacedPiece> out;
    if (interior_.count(z)) out.push_back({"P", z, tab_.ctx->tileAt(z)});
    for (std::size_t i = 0; i < P.size(); ++i) {
      const HalfplaneRegion& h = edgeRegions_[i];
      IVec2 anchor = t_ * P.edge(i).from;
      IVec2 rel = z - anchor;
      if (h.tileInside(rel)) continue;
      auto [k0, k1] = h.stripsMeeting(rel);
      for (std::int64_t k = k0; k <= k1; ++k) {
        if (!edgeMembers_[i].count(k)) continue;
        ConvexPoly p = h.piece(rel, k);
        if (!p.empty()) out.push_back({LatticePolygon::edgeId(i), anchor + k * P.edge(i).direction, p.translated(Vec2(anchor))});
      }
    }
    for (std::size_t j = 0; j < P.size(); ++j) {
      IVec2 anchor = t_ * P.vertex(j);
      for (auto& p : tab_.vertexRegions[j]->regionTile(z - anchor))
        out.push_back({LatticePolygon::vertexId(j), anchor, p.translated(Vec2(anchor))});
    }
    return out;
  }

 private:
  const MuTable& tab_;
  std::int64_t t_;
  std::set<IVec2> interior_;
  std::vector<HalfplaneRegion> edgeRegions_;
  std::vector<std::set<std::int64_t>> edgeMembers_;
};

struct TilingCheck {
  std::int64_t t = 0;
  Box window;
  std::int64_t tilesChecked = 0;
  Rational coveredArea;  // Σ area of pieces clipped to the window
  Rational windowArea;
  std::int64_t badTiles = 0;
  std::vector<std::string> failures;  // first few, "(x,y): reason"
  bool matched = false;
  bool belowT0 = false;
};

/// Every tile meeting the window is cut into pieces of exactly one translated
/// region each (areas sum to the tile area, pairwise overlaps have zero
/// area), and the pieces clipped to the window add up to the window area.
inline TilingCheck verifyTiling(const MuTable& tab, std::int64_t t, const Box& window) {
  TilingCheck c;
  c.t = t;
  c.window = window;
  c.windowArea = window.area();
  if (t <= 0) {
    c.belowT0 = true;
    return c;
  }
  TilingAssembly asmb(tab, t);
  const ConvexPoly win = window.poly();
  const Rational tileArea = tab.ctx->tile().area();
  const std::int64_t r = tab.ctx->tileRadius();
  auto fail = [&](IVec2 z, const std::string& why) {
    ++c.badTiles;
    if (c.failures.size() < 8) c.failures.push_back("(" + std::to_string(z.x) + "," + std::to_string(z.y) + "): " + why);
  };
  for (std::int64_t x = window.lo.x - r; x <= window.hi.x + r; ++x) {
    for (std::int64_t y = window.lo.y - r; y <= window.hi.y + r; ++y) {
      IVec2 z{x, y};
      ConvexPoly tile = tab.ctx->tileAt(z);
      if (tile.intersection(win).dimension() < 2) continue;
      ++c.tilesChecked;
      auto pieces = asmb.piecesAt(z);
      Rational sum = 0;
      for (const auto& p : pieces) {
        sum += p.poly.area();
        c.coveredArea += p.poly.intersection(win).area();
      }
      if (sum != tileArea) fail(z, "piece areas sum to " + toString(sum));
      for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j)
          if (pieces[i].poly.intersection(pieces[j].poly).dimension() == 2)
            fail(z, pieces[i].face + " overlaps " + pieces[j].face);
    }
  }
  c.matched = c.badTiles == 0 && c.coveredArea == c.windowArea;
  c.belowT0 = !c.matched;
  return c;
}

/// Smallest t in [1, tMax] from which the weighted feasible-point count matches for every
/// tested dilation up to tMax.
inline std::optional<std::int64_t> detectT0(const MuTable& tab, std::int64_t tMax) {
  std::optional<std::int64_t> t0;
  for (std::int64_t t = tMax; t >= 1; --t) {
    if (!verifyEq1(tab, t).matched) break;
    t0 = t;
  }
  return t0;
}

}  // namespace ehrhart_local
