#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehrhart_local/vec2.hpp"

namespace ehrhart_local {

/// Rank-1 sublattice on a rational line through the origin.
struct LineLattice {
  IVec2 direction;  // primitive

  explicit LineLattice(IVec2 d) : direction(primitive(d)) {}
  bool contains(IVec2 z) const { return cross(direction, z) == 0; }
  /// Coordinate of a lattice point on the line in units of `direction`.
  std::int64_t indexOf(IVec2 z) const {
    if (!contains(z)) throw std::invalid_argument("point is not on the line");
    return direction.x != 0 ? z.x / direction.x : z.y / direction.y;
  }
  friend bool operator==(const LineLattice& a, const LineLattice& b) {
    return a.direction == b.direction || a.direction == -b.direction;
  }
};

enum class ConeKind { Point, Ray, Halfplane, Wedge, Plane };

inline const char* toString(ConeKind k) {
  switch (k) {
    case ConeKind::Point: return "point";
    case ConeKind::Ray: return "ray";
    case ConeKind::Halfplane: return "halfplane";
    case ConeKind::Wedge: return "wedge";
    case ConeKind::Plane: return "plane";
  }
  return "?";
}

/// Rational cone in the plane with apex at the origin, given by constraints
/// <n, x> <= 0 with primitive integer normals.
class Cone2 {
 public:
  static Cone2 plane() { return Cone2(ConeKind::Plane, {}); }
  static Cone2 point() { return Cone2(ConeKind::Point, {}); }
  static Cone2 halfplane(IVec2 n) { return Cone2(ConeKind::Halfplane, {primitive(n)}); }
  static Cone2 wedge(IVec2 n1, IVec2 n2) {
    n1 = primitive(n1);
    n2 = primitive(n2);
    if (cross(n1, n2) == 0) throw std::invalid_argument("wedge normals must be linearly independent");
    return Cone2(ConeKind::Wedge, {n1, n2});
  }
  static Cone2 ray(IVec2 r) {
    r = primitive(r);
    Cone2 c(ConeKind::Ray, {perp(r), -perp(r), -r});
    c.rayDir_ = r;
    return c;
  }

  /// Cone generated by the given vectors. Covers the cases that occur as
  /// normal cones of polygon faces and their polars.
  static Cone2 generatedBy(std::vector<IVec2> gens) {
    gens.erase(std::remove(gens.begin(), gens.end(), IVec2{0, 0}), gens.end());
    for (auto& g : gens) g = primitive(g);
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    if (gens.empty()) return point();
    if (gens.size() == 1) return ray(gens[0]);
    if (gens.size() == 2 && cross(gens[0], gens[1]) != 0) {
      // Constraint for generator a: normal to a, negative on the other generator.
      auto side = [](IVec2 a, IVec2 b) {
        IVec2 m = perp(a);
        return dot(m, b) < 0 ? m : -m;
      };
      return wedge(side(gens[0], gens[1]), side(gens[1], gens[0]));
    }
    throw std::invalid_argument("generators do not span a pointed cone or a ray");
  }

  ConeKind kind() const { return kind_; }
  const std::vector<IVec2>& constraints() const { return constraints_; }

  /// Extreme rays: Ray -> its direction; Wedge -> r_i on the boundary line of
  /// constraint i, pointing into the other constraint's halfplane.
  std::vector<IVec2> generators() const {
    if (kind_ == ConeKind::Ray) return {rayDir_};
    if (kind_ != ConeKind::Wedge) return {};
    return {boundaryRay(0), boundaryRay(1)};
  }

  IVec2 boundaryRay(std::size_t i) const {
    if (kind_ != ConeKind::Wedge) throw std::logic_error("boundaryRay on a non-wedge cone");
    IVec2 r = perp(constraints_[i]);
    return dot(constraints_[1 - i], r) < 0 ? r : -r;
  }

  bool contains(const Vec2& x) const {
    return std::all_of(constraints_.begin(), constraints_.end(),
                       [&](IVec2 n) { return dot(n, x) <= 0; });
  }
  bool containsInInterior(const Vec2& x) const {
    if (kind_ == ConeKind::Ray || kind_ == ConeKind::Point) return false;
    return std::all_of(constraints_.begin(), constraints_.end(),
                       [&](IVec2 n) { return dot(n, x) < 0; });
  }

  /// Dimension of the lineality space.
  int linealDimension() const {
    switch (kind_) {
      case ConeKind::Plane: return 2;
      case ConeKind::Halfplane: return 1;
      default: return 0;
    }
  }
  /// Lattice on the lineality line of a halfplane.
  std::optional<LineLattice> linealLine() const {
    if (kind_ != ConeKind::Halfplane) return std::nullopt;
    return LineLattice(perp(constraints_[0]));
  }

  /// {x : <y, x> <= 0 for all y in this cone}.
  Cone2 polar() const {
    switch (kind_) {
      case ConeKind::Plane: return point();
      case ConeKind::Point: return plane();
      case ConeKind::Halfplane: return ray(constraints_[0]);
      case ConeKind::Ray: return halfplane(rayDir_);
      case ConeKind::Wedge: return wedge(boundaryRay(0), boundaryRay(1));
    }
    throw std::logic_error("unreachable");
  }

  /// Order-independent comparison.
  friend bool operator==(const Cone2& a, const Cone2& b) {
    if (a.kind_ != b.kind_) return false;
    auto ca = a.constraints_;
    auto cb = b.constraints_;
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    return ca == cb;
  }

  /// Canonical text key, e.g. "wedge[(1,-1),(1,2)]" or "ray[(1,-1)]".
  std::string key() const {
    if (kind_ == ConeKind::Ray) return "ray[(" + std::to_string(rayDir_.x) + "," + std::to_string(rayDir_.y) + ")]";
    auto cs = constraints_;
    std::sort(cs.begin(), cs.end());
    std::string s = toString(kind_);
    s += "[";
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (i) s += ",";
      s += "(" + std::to_string(cs[i].x) + "," + std::to_string(cs[i].y) + ")";
    }
    return s + "]";
  }

  friend std::ostream& operator<<(std::ostream& os, const Cone2& c) { return os << c.key(); }

 private:
  Cone2(ConeKind k, std::vector<IVec2> cs) : kind_(k), constraints_(std::move(cs)) {}

  ConeKind kind_ = ConeKind::Plane;
  std::vector<IVec2> constraints_;
  IVec2 rayDir_{};
};

inline Cone2 polarFconeFromNormalCone(const Cone2& normalCone) { return normalCone.polar(); }
inline Cone2 normalConeFromFcone(const Cone2& fcone) { return fcone.polar(); }

}  // namespace ehrhart_local
