#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <vector>

#include "ehrhart_local/halfplane_region.hpp"

namespace ehrhart_local {

/// Translation set {k * step : k in members} on a boundary ray: finitely many
/// explicit indices below `tailStart`, then every k >= tailStart.
struct XSet {
  IVec2 step;
  std::vector<std::int64_t> explicitMembers;  // sorted, all < tailStart
  std::int64_t tailStart = 0;

  bool contains(std::int64_t k) const {
    if (k >= tailStart) return true;
    return std::binary_search(explicitMembers.begin(), explicitMembers.end(), k);
  }
  /// Members in [0, kmax].
  std::int64_t countUpTo(std::int64_t kmax) const {
    std::int64_t c = 0;
    for (auto k : explicitMembers)
      if (k <= kmax) ++c;
    if (kmax >= tailStart) c += kmax - tailStart + 1;
    return c;
  }
};

/// Measures of a wedge region, certified in a box window.
struct WedgeMeasures {
  Rational v, w1, w2, wPlane;
  bool boundaryClear = false;
};

/// R(W) for the pointed wedge W = {<n1,x> <= 0, <n2,x> <= 0}: the plane minus
/// the tiles inside W, minus the X-set translates of both facet regions.
/// Ray i is spanned by d_i, the primitive direction on facet line i pointing
/// into W.
class WedgeRegion {
 public:
  WedgeRegion(const HalfplaneRegion& h1, const HalfplaneRegion& h2)
      : ctx_(&h1.context()), h1_(orient(h1, h2.normal())), h2_(orient(h2, h1.normal())) {
    if (cross(h1.normal(), h2.normal()) == 0) throw std::invalid_argument("wedge facets are parallel");
    x1_ = computeXSet(h1_, h2_);
    x2_ = computeXSet(h2_, h1_);
    std::set<std::int64_t> bad1, bad2;
    findConflicts(bad1, bad2);
    finishXSet(x1_, h1_, h2_, bad1);
    finishXSet(x2_, h2_, h1_, bad2);
    certify();
  }

  Cone2 cone() const { return Cone2::wedge(h1_.normal(), h2_.normal()); }
  const HalfplaneRegion& facet(int i) const { return i == 0 ? h1_ : h2_; }
  const XSet& xset(int i) const { return i == 0 ? x1_ : x2_; }
  IVec2 ray(int i) const { return facet(i).direction(); }

  const Rational& v() const { return m_.v; }
  /// Relative length of R(W) on ray i.
  const Rational& w(int i) const { return i == 0 ? m_.w1 : m_.w2; }
  const Rational& wPlane() const { return m_.wPlane; }
  Rational mu(const Rational& mu1, const Rational& mu2) const { return m_.v - m_.w1 * mu1 - m_.w2 * mu2 - m_.wPlane; }

  std::int64_t window() const { return window_; }
  /// Number of membership decisions whose outcome was fixed by ε alone.
  std::size_t epsDecisions() const { return epsDecisions_; }

  bool tileInside(IVec2 z) const { return h1_.tileInside(z) && h2_.tileInside(z); }

  /// Pieces of R(W) in tile z.
  std::vector<ConvexPoly> regionTile(IVec2 z) const {
    bool in1 = h1_.tileInside(z);
    bool in2 = h2_.tileInside(z);
    if (in1 && in2) return {};
    std::vector<ConvexPoly> pieces{ctx_->tileAt(z)};
    if (!in1) removeStrips(pieces, h1_, x1_, z);
    if (!in2) removeStrips(pieces, h2_, x2_, z);
    return pieces;
  }

  /// Measures with the window box of half-width n around the apex.
  WedgeMeasures measureInWindow(std::int64_t n) const {
    WedgeMeasures m;
    std::vector<ConvexPoly> all;
    const std::int64_t ring = n - ctx_->tileRadius() - 1;
    m.boundaryClear = true;
    for (IVec2 z : candidateTiles(n)) {
      auto pieces = regionTile(z);
      if (pieces.empty()) continue;
      if (std::max(std::abs(z.x), std::abs(z.y)) >= ring) m.boundaryClear = false;
      bool inW = dot(h1_.normal(), z) <= 0 && dot(h2_.normal(), z) <= 0;
      for (auto& p : pieces) {
        if (inW) m.v += p.area();
        m.wPlane += p.clipped(Halfplane{Vec2(h1_.normal()), 0}).clipped(Halfplane{Vec2(h2_.normal()), 0}).area();
        all.push_back(std::move(p));
      }
    }
    PolySet set(std::move(all));
    const Vec2& u = ctx_->u();
    m.w1 = lineSectionLength(set, {Vec2{0, 0}, h1_.direction()}, &u, Rational(0));
    m.w2 = lineSectionLength(set, {Vec2{0, 0}, h2_.direction()}, &u, Rational(0));
    return m;
  }

 private:
  static HalfplaneRegion orient(const HalfplaneRegion& h, IVec2 otherNormal) {
    IVec2 d = h.direction();
    return h.withDirection(dot(otherNormal, d) < 0 ? d : -d);
  }

  // Condition (i) for x = k*d of `h`: the ε-shifted pieces of x + R(h), cut to
  // the open facet halfplane, lie in the open halfplane of `other`. Vertices
  // created on the facet line may touch the other boundary.
  bool interiorCondition(const HalfplaneRegion& h, IVec2 otherNormal, std::int64_t k) {
    const Vec2 n1(h.normal());
    const Vec2 n2(otherNormal);
    const Vec2& u = ctx_->u();
    const Vec2 x(static_cast<std::int64_t>(k) * h.direction());
    const EpsScalar zero;
    for (const auto& tp : h.innerPieces()) {
      const auto& vs = tp.poly.vertices();
      const std::size_t m = vs.size();
      std::vector<EpsVec2> pts;
      std::vector<EpsScalar> f;
      pts.reserve(m);
      for (const auto& q : vs) {
        pts.push_back(EpsVec2::shifted(q + x, u));
        f.push_back(dot(n1, pts.back()));
      }
      auto check = [&](const EpsVec2& r, bool created) {
        EpsScalar val = dot(n2, r);
        if (val.value() == 0) ++epsDecisions_;
        return created ? val <= zero : val < zero;
      };
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = (i + 1) % m;
        bool pin = f[i] < zero;
        bool qin = f[j] < zero;
        if (f[i].value() == 0) ++epsDecisions_;
        if (pin && !check(pts[i], false)) return false;
        if (pin != qin) {
          Rational den = f[i].value() - f[j].value();
          EpsScalar t = f[i] / den;
          Vec2 e = vs[j] - vs[i];
          EpsVec2 r{pts[i].x + t * e.x, pts[i].y + t * e.y};
          if (!check(r, true)) return false;
        }
      }
    }
    return true;
  }

  // Indices below the bound from which condition (i) holds by a size argument.
  XSet computeXSet(const HalfplaneRegion& h, const HalfplaneRegion& other) {
    XSet xs;
    xs.step = h.direction();
    const Vec2 n2(other.normal());
    Rational m2;
    bool any = false;
    for (const auto& tp : h.innerPieces()) {
      ConvexPoly c = tp.poly.clipped(Halfplane{Vec2(h.normal()), 0});
      for (const auto& q : c.vertices()) {
        Rational val = dot(n2, q);
        if (!any || val > m2) m2 = val;
        any = true;
      }
    }
    const Rational slope = -dot(n2, Vec2(h.direction()));  // > 0
    xs.tailStart = (!any || m2 < 0) ? 0 : toInt64(floorOf(m2 / slope)) + 1;
    for (std::int64_t k = 0; k < xs.tailStart; ++k)
      if (interiorCondition(h, other.normal(), k)) xs.explicitMembers.push_back(k);
    return xs;
  }

  // Condition (ii): k*d1 + R(H1) and m*d2 + R(H2) overlap in positive area for
  // some m >= 0 (and symmetrically). Overlaps are confined to a bounded
  // polygon near the apex.
  void findConflicts(std::set<std::int64_t>& bad1, std::set<std::int64_t>& bad2) {
    std::vector<Halfplane> hs;
    for (const HalfplaneRegion* h : {&h1_, &h2_}) {
      Vec2 n(h->normal());
      hs.push_back({-n, h->tileDepth() + h->normalMax()});
      hs.push_back({-h->stripNormal(), h->stripWidth() / 2 + ctx_->maxOverTile(h->stripNormal())});
    }
    conflictZone_ = ConvexPoly::fromHalfplanes(hs);
    for (IVec2 z : latticePointsIn(conflictZone_)) {
      if (h1_.tileInside(z) || h2_.tileInside(z)) continue;
      auto [k0, k1] = h1_.stripsMeeting(z);
      auto [m0, m1] = h2_.stripsMeeting(z);
      k0 = std::max<std::int64_t>(k0, 0);
      m0 = std::max<std::int64_t>(m0, 0);
      for (std::int64_t k = k0; k <= k1; ++k) {
        ConvexPoly p = h1_.piece(z, k);
        if (p.empty()) continue;
        for (std::int64_t m = m0; m <= m1; ++m) {
          if (bad1.count(k) && bad2.count(m)) continue;
          if (p.clipped(h2_.stripHalfplanes(m)).dimension() == 2) {
            bad1.insert(k);
            bad2.insert(m);
          }
        }
      }
    }
  }

  void finishXSet(XSet& xs, const HalfplaneRegion& h, const HalfplaneRegion& other, const std::set<std::int64_t>& bad) {
    std::int64_t k0 = xs.tailStart;
    if (!bad.empty()) k0 = std::max(k0, *bad.rbegin() + 1);
    std::vector<std::int64_t> members;
    for (std::int64_t k = 0; k < k0; ++k) {
      bool ok = k < xs.tailStart ? std::binary_search(xs.explicitMembers.begin(), xs.explicitMembers.end(), k)
                                 : interiorCondition(h, other.normal(), k);
      if (ok && !bad.count(k)) members.push_back(k);
    }
    while (!members.empty() && members.back() == k0 - 1) {
      members.pop_back();
      --k0;
    }
    xs.explicitMembers = std::move(members);
    xs.tailStart = k0;
  }

  void removeStrips(std::vector<ConvexPoly>& pieces, const HalfplaneRegion& h, const XSet& xs, IVec2 z) const {
    auto [k0, k1] = h.stripsMeeting(z);
    for (std::int64_t k = std::max<std::int64_t>(k0, 0); k <= k1 && !pieces.empty(); ++k) {
      if (!xs.contains(k)) continue;
      auto hs = h.stripHalfplanes(k);
      std::vector<ConvexPoly> next;
      for (const auto& p : pieces) {
        for (const auto& side : hs) {
          ConvexPoly q = p.clipped(side.flipped());
          if (q.dimension() == 2) next.push_back(std::move(q));
        }
      }
      pieces = std::move(next);
    }
  }

  // Tiles that can meet W and are not inside both open facet halfplanes.
  std::vector<IVec2> candidateTiles(std::int64_t n) const {
    std::set<IVec2> out;
    const Rational r(n);
    for (int i = 0; i < 2; ++i) {
      const HalfplaneRegion& a = i == 0 ? h1_ : h2_;
      const HalfplaneRegion& b = i == 0 ? h2_ : h1_;
      std::vector<Halfplane> hs{{-Vec2(a.normal()), a.normalMax()},
                                {Vec2(a.normal()), -a.normalMin()},
                                {Vec2(b.normal()), -b.normalMin()},
                                {{1, 0}, r},
                                {{-1, 0}, r},
                                {{0, 1}, r},
                                {{0, -1}, r}};
      for (IVec2 z : latticePointsIn(ConvexPoly::fromHalfplanes(hs))) out.insert(z);
    }
    return {out.begin(), out.end()};
  }

  void certify() {
    std::int64_t base = 4 * (ctx_->tileRadius() + 1);
    for (const auto& v : conflictZone_.vertices())
      base = std::max(base, toInt64(ceilOf(std::max(absOf(v.x), absOf(v.y)))) + ctx_->tileRadius() + 2);
    for (const HalfplaneRegion* h : {&h1_, &h2_}) {
      const XSet& xs = h == &h1_ ? x1_ : x2_;
      IVec2 d = h->direction();
      std::int64_t reach = (xs.tailStart + 1) * std::max(std::abs(d.x), std::abs(d.y));
      base = std::max(base, reach + 2 * ctx_->tileRadius() + 2);
    }
    const std::int64_t cap = 64 * base;
    for (std::int64_t n = base; n <= cap; n *= 2) {
      WedgeMeasures a = measureInWindow(n);
      if (!a.boundaryClear) continue;
      WedgeMeasures b = measureInWindow(2 * n);
      if (b.boundaryClear && a.v == b.v && a.w1 == b.w1 && a.w2 == b.w2 && a.wPlane == b.wPlane) {
        m_ = a;
        window_ = n;
        return;
      }
    }
    throw ConstructionError("wedge region touches the window boundary at the cap");
  }

  const Context* ctx_;
  HalfplaneRegion h1_;
  HalfplaneRegion h2_;
  XSet x1_, x2_;
  ConvexPoly conflictZone_;
  WedgeMeasures m_;
  std::int64_t window_ = 0;
  std::size_t epsDecisions_ = 0;
};

}  // namespace ehrhart_local
