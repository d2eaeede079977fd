#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehrhart_local/cone2.hpp"
#include "ehrhart_local/convex_poly.hpp"

namespace ehrhart_local {

struct PolygonEdge {
  IVec2 from, to;
  IVec2 direction;  // primitive, from -> to
  IVec2 normal;     // primitive outer normal
  std::int64_t latticeLength;
};

/// Strictly convex lattice polygon with counterclockwise vertices.
/// Edge i runs from vertex i to vertex i+1.
class LatticePolygon {
 public:
  explicit LatticePolygon(std::vector<IVec2> vertices) : v_(std::move(vertices)) {
    const std::size_t n = v_.size();
    if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    std::int64_t twice = 0;
    for (std::size_t i = 0; i < n; ++i) twice += cross(v_[i], v_[(i + 1) % n]);
    if (twice == 0) throw std::invalid_argument("polygon is degenerate (zero area)");
    if (twice < 0) std::reverse(v_.begin(), v_.end());
    twiceArea_ = twice < 0 ? -twice : twice;
    for (std::size_t i = 0; i < n; ++i) {
      IVec2 a = v_[i], b = v_[(i + 1) % n], c = v_[(i + 2) % n];
      if (a == b) throw std::invalid_argument("repeated vertex");
      if (cross(b - a, c - b) <= 0) throw std::invalid_argument("polygon is not strictly convex");
    }
    for (std::size_t i = 0; i < n; ++i) {
      IVec2 a = v_[i], b = v_[(i + 1) % n];
      IVec2 e = b - a;
      IVec2 d = primitive(e);
      edges_.push_back({a, b, d, {d.y, -d.x}, gcd64(e.x, e.y)});
    }
    // All left turns plus every vertex on the inner side of every edge rules
    // out self-intersecting (multiply wound) vertex cycles.
    for (const auto& e : edges_)
      for (IVec2 p : v_)
        if (dot(e.normal, p - e.from) > 0) throw std::invalid_argument("polygon is not convex");
  }

  std::size_t size() const { return v_.size(); }
  const std::vector<IVec2>& vertices() const { return v_; }
  IVec2 vertex(std::size_t i) const { return v_[i % v_.size()]; }
  const PolygonEdge& edge(std::size_t i) const { return edges_[i % edges_.size()]; }
  const std::vector<PolygonEdge>& edges() const { return edges_; }
  Rational area() const { return makeRational(twiceArea_, 2); }

  /// Feasible cones: plane, halfplane of edge i, wedge at vertex i between
  /// edges i-1 and i.
  Cone2 fconeOfEdge(std::size_t i) const { return Cone2::halfplane(edge(i).normal); }
  Cone2 fconeOfVertex(std::size_t i) const {
    return Cone2::wedge(edge(i + size() - 1).normal, edge(i).normal);
  }
  Cone2 normalConeOfEdge(std::size_t i) const { return fconeOfEdge(i).polar(); }
  Cone2 normalConeOfVertex(std::size_t i) const { return fconeOfVertex(i).polar(); }

  bool contains(IVec2 z, std::int64_t t = 1) const {
    return std::all_of(edges_.begin(), edges_.end(),
                       [&](const PolygonEdge& e) { return dot(e.normal, z) <= t * dot(e.normal, e.from); });
  }

  ConvexPoly dilated(std::int64_t t) const {
    std::vector<Vec2> pts;
    for (IVec2 p : v_) pts.push_back(Vec2(t * p));
    if (t == 0) return ConvexPoly::fromVertices({Vec2{0, 0}});
    return ConvexPoly::fromVertices(std::move(pts));
  }

  std::vector<IVec2> edgeNormals() const {
    std::vector<IVec2> ns;
    for (const auto& e : edges_) ns.push_back(e.normal);
    return ns;
  }

  static std::string polygonId() { return "P"; }
  static std::string edgeId(std::size_t i) { return "e" + std::to_string(i); }
  static std::string vertexId(std::size_t i) { return "v" + std::to_string(i); }

 private:
  std::vector<IVec2> v_;
  std::vector<PolygonEdge> edges_;
  std::int64_t twiceArea_ = 0;
};

}  // namespace ehrhart_local
