#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ehrhart_local/convex_poly.hpp"

namespace ehrhart_local {

/// Finite union of convex polygons with pairwise zero-area overlaps.
struct PolySet {
  std::vector<ConvexPoly> cells;

  PolySet() = default;
  PolySet(ConvexPoly p) {
    if (!p.empty()) cells.push_back(std::move(p));
  }
  PolySet(std::vector<ConvexPoly> cs) : cells(std::move(cs)) {}

  bool empty() const { return cells.empty(); }

  PolySet translated(const Vec2& t) const {
    PolySet r;
    r.cells.reserve(cells.size());
    for (const auto& c : cells) r.cells.push_back(c.translated(t));
    return r;
  }
};

inline Rational area(const PolySet& a) {
  Rational s = 0;
  for (const auto& c : a.cells) s += c.area();
  return s;
}

/// Intersection of closures. Lower-dimensional cells are kept so that line
/// sections can still see them; area() ignores them.
inline PolySet intersect(const PolySet& a, const PolySet& b) {
  PolySet r;
  for (const auto& p : a.cells) {
    for (const auto& q : b.cells) {
      ConvexPoly c = p.intersection(q);
      if (!c.empty()) r.cells.push_back(std::move(c));
    }
  }
  return r;
}

/// a minus b, as convex pieces cut along the halfplanes of b. Pieces of zero
/// area are dropped.
inline std::vector<ConvexPoly> subtract(const ConvexPoly& a, const ConvexPoly& b) {
  if (a.dimension() < 2) return {};
  if (b.dimension() < 2) return {a};
  std::vector<ConvexPoly> out;
  ConvexPoly rest = a;
  for (const auto& h : b.halfplanes()) {
    ConvexPoly outside = rest.clipped(h.flipped());
    if (outside.dimension() == 2) out.push_back(std::move(outside));
    rest = rest.clipped(h);
    if (rest.dimension() < 2) break;
  }
  return out;
}

inline PolySet subtract(const PolySet& a, const PolySet& b) {
  std::vector<ConvexPoly> cur;
  for (const auto& c : a.cells)
    if (c.dimension() == 2) cur.push_back(c);
  for (const auto& q : b.cells) {
    if (q.dimension() < 2) continue;
    std::vector<ConvexPoly> next;
    for (const auto& p : cur) {
      if (p.intersection(q).dimension() < 2) {
        next.push_back(p);
        continue;
      }
      for (auto& piece : subtract(p, q)) next.push_back(std::move(piece));
    }
    cur = std::move(next);
  }
  return PolySet(std::move(cur));
}

/// Parametrization of a rational line by its primitive lattice direction, so
/// that parameter length equals relative length.
struct RationalLine {
  Vec2 origin;
  IVec2 direction;

  static RationalLine through(const Vec2& a, const Vec2& b) {
    if (a == b) throw std::invalid_argument("line through coincident points");
    return {a, primitiveDirection(b - a)};
  }
  Vec2 at(const Rational& s) const { return origin + s * Vec2(direction); }
};

/// One-dimensional relative measure of a ∩ L. With `shift`, each cell is read
/// as its closure moved by ε·shift, so cells that only touch L contribute
/// nothing; overlapping sections of different cells are counted once.
/// `sMin`/`sMax` restrict the (unshifted) parameter range, e.g. to a ray.
inline Rational lineSectionLength(const PolySet& a, const RationalLine& L, const Vec2* shift = nullptr,
                                  const std::optional<Rational>& sMin = std::nullopt,
                                  const std::optional<Rational>& sMax = std::nullopt) {
  std::vector<std::pair<Rational, Rational>> spans;
  const Vec2 d(L.direction);
  for (const auto& c : a.cells) {
    LineInterval iv = c.lineSection(L.origin, d, shift);
    if (!iv.feasible) continue;
    if (!iv.lo || !iv.hi) throw std::domain_error("unbounded line section");
    EpsScalar lo = *iv.lo;
    EpsScalar hi = *iv.hi;
    if (sMin && lo < EpsScalar(*sMin)) lo = EpsScalar(*sMin);
    if (sMax && EpsScalar(*sMax) < hi) hi = EpsScalar(*sMax);
    if (lo < hi && lo.value() < hi.value()) spans.emplace_back(lo.value(), hi.value());
  }
  std::sort(spans.begin(), spans.end());
  Rational total = 0;
  std::optional<std::pair<Rational, Rational>> cur;
  for (auto& s : spans) {
    if (cur && s.first <= cur->second) {
      if (s.second > cur->second) cur->second = s.second;
      continue;
    }
    if (cur) total += cur->second - cur->first;
    cur = s;
  }
  if (cur) total += cur->second - cur->first;
  return total;
}

/// Lattice points of a bounded convex set, row by row. With `shift`, a point z
/// counts iff z - ε·shift lies in the closed set.
inline std::vector<IVec2> latticePointsIn(const ConvexPoly& p, const Vec2* shift = nullptr) {
  std::vector<IVec2> pts;
  if (p.empty()) return pts;
  const auto hs = p.halfplanes();
  const std::int64_t x0 = toInt64(ceilOf(p.bboxMin().x));
  const std::int64_t x1 = toInt64(floorOf(p.bboxMax().x));
  const Vec2 up{0, 1};
  for (std::int64_t x = x0; x <= x1; ++x) {
    LineInterval iv = p.lineSection(Vec2{Rational(x), Rational(0)}, up, shift);
    if (!iv.feasible || !iv.lo || !iv.hi) continue;
    Integer ylo = ceilOf(iv.lo->value());
    if (ylo == iv.lo->value() && iv.lo->eps() > 0) ylo += 1;
    Integer yhi = floorOf(iv.hi->value());
    if (yhi == iv.hi->value() && iv.hi->eps() < 0) yhi -= 1;
    for (Integer y = ylo; y <= yhi; ++y) pts.push_back({x, toInt64(y)});
  }
  return pts;
}

inline std::vector<IVec2> latticePointsIn(const PolySet& a, const Vec2* shift = nullptr) {
  std::set<IVec2> seen;
  for (const auto& c : a.cells)
    for (auto z : latticePointsIn(c, shift)) seen.insert(z);
  return {seen.begin(), seen.end()};
}

/// Lattice points of an H-described set; throws if it is unbounded.
inline std::vector<IVec2> latticePointsIn(std::span<const Halfplane> hs, const Vec2* shift = nullptr) {
  return latticePointsIn(ConvexPoly::fromHalfplanes(hs), shift);
}

}  // namespace ehrhart_local
