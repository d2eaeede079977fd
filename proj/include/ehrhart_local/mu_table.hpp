#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ehrhart_local/lattice_polygon.hpp"
#include "ehrhart_local/wedge_region.hpp"

namespace ehrhart_local {

/// μ on cones, with regions cached by cone.
class MuCalculator {
 public:
  explicit MuCalculator(std::shared_ptr<const Context> ctx) : ctx_(std::move(ctx)) {}

  const std::shared_ptr<const Context>& context() const { return ctx_; }

  std::shared_ptr<const HalfplaneRegion> halfplane(IVec2 n) {
    std::string key = Cone2::halfplane(n).key();
    auto it = halves_.find(key);
    if (it != halves_.end()) return it->second;
    auto r = std::make_shared<const HalfplaneRegion>(ctx_, n);
    halves_.emplace(key, r);
    return r;
  }

  /// Wedge {<n1,x> <= 0, <n2,x> <= 0}; facet order as given.
  std::shared_ptr<const WedgeRegion> wedge(IVec2 n1, IVec2 n2) {
    std::string key = "(" + std::to_string(n1.x) + "," + std::to_string(n1.y) + ")(" + std::to_string(n2.x) +
                      "," + std::to_string(n2.y) + ")";
    auto it = wedges_.find(key);
    if (it != wedges_.end()) return it->second;
    auto r = std::make_shared<const WedgeRegion>(*halfplane(n1), *halfplane(n2));
    wedges_.emplace(key, r);
    return r;
  }

  Rational muForCone(const Cone2& c) {
    switch (c.kind()) {
      case ConeKind::Plane: return 1;
      case ConeKind::Halfplane: return halfplane(c.constraints()[0])->mu();
      case ConeKind::Wedge: {
        IVec2 n1 = c.constraints()[0], n2 = c.constraints()[1];
        return wedge(n1, n2)->mu(halfplane(n1)->mu(), halfplane(n2)->mu());
      }
      default: throw std::invalid_argument("μ is only constructed for plane, halfplane and wedge cones");
    }
  }

 private:
  std::shared_ptr<const Context> ctx_;
  std::map<std::string, std::shared_ptr<const HalfplaneRegion>> halves_;
  std::map<std::string, std::shared_ptr<const WedgeRegion>> wedges_;
};

struct FaceRecord {
  std::string id;
  int dim = 0;
  Cone2 fcone = Cone2::plane();
  Rational mu;
  Rational v;
  std::vector<std::pair<std::string, Rational>> w;  // larger face -> correction volume
  std::vector<std::pair<std::string, XSet>> xsets;   // vertices only: incident edge -> X-set
  std::size_t epsDecisions = 0;
  std::int64_t window = 0;

  std::optional<Rational> wFor(const std::string& g) const {
    for (const auto& [id, val] : w)
      if (id == g) return val;
    return std::nullopt;
  }
};

/// μ, v and w for every face of a polygon under one domain policy.
struct MuTable {
  LatticePolygon polygon;
  std::shared_ptr<const Context> ctx;
  std::vector<FaceRecord> faces;  // P, e0.., v0..
  std::vector<std::shared_ptr<const HalfplaneRegion>> edgeRegions;
  std::vector<std::shared_ptr<const WedgeRegion>> vertexRegions;

  const FaceRecord& face(const std::string& id) const {
    for (const auto& f : faces)
      if (f.id == id) return f;
    throw std::out_of_range("no face " + id);
  }
  const FaceRecord& edgeFace(std::size_t i) const { return face(LatticePolygon::edgeId(i % polygon.size())); }
  const FaceRecord& vertexFace(std::size_t i) const { return face(LatticePolygon::vertexId(i % polygon.size())); }

  /// v - Σ w·μ from the stored parts.
  Rational recomputedMu(const std::string& id) const {
    const FaceRecord& f = face(id);
    Rational r = f.v;
    for (const auto& [g, val] : f.w) r -= val * face(g).mu;
    return r;
  }

  /// X-set of the vertex-i wedge along edge `edgeIndex` (incident).
  const XSet& xset(std::size_t vertex, std::size_t edgeIndex) const {
    const auto& f = vertexFace(vertex);
    std::string e = LatticePolygon::edgeId(edgeIndex % polygon.size());
    for (const auto& [id, xs] : f.xsets)
      if (id == e) return xs;
    throw std::out_of_range("edge " + e + " is not incident to vertex " + f.id);
  }

  std::string provenance() const {
    std::string s = "domain=" + ctx->policy().name();
    if (ctx->policy().kind == DomainPolicy::Kind::Dv) s += " gram=" + ctx->gram().toString();
    s += " eps-direction=(" + toString(ctx->u().x) + "," + toString(ctx->u().y) + ")";
    return s;
  }
};

inline MuTable buildMuTable(const LatticePolygon& poly, const DomainPolicy& policy,
                            int seed = EpsDirection::seedFromEnvironment()) {
  auto normals = poly.edgeNormals();
  MuTable t{poly, Context::make(policy, normals, seed), {}, {}, {}};
  MuCalculator calc(t.ctx);
  const std::size_t n = poly.size();

  FaceRecord whole;
  whole.id = LatticePolygon::polygonId();
  whole.dim = 2;
  whole.mu = 1;
  whole.v = t.ctx->tile().area();
  t.faces.push_back(whole);

  for (std::size_t i = 0; i < n; ++i) {
    auto h = calc.halfplane(poly.edge(i).normal);
    t.edgeRegions.push_back(h);
    FaceRecord f;
    f.id = LatticePolygon::edgeId(i);
    f.dim = 1;
    f.fcone = poly.fconeOfEdge(i);
    f.v = h->v();
    f.w = {{"P", h->w()}};
    f.mu = h->v() - h->w() * whole.mu;
    t.faces.push_back(f);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t prev = (i + n - 1) % n;
    auto wr = calc.wedge(poly.edge(prev).normal, poly.edge(i).normal);
    t.vertexRegions.push_back(wr);
    FaceRecord f;
    f.id = LatticePolygon::vertexId(i);
    f.dim = 0;
    f.fcone = poly.fconeOfVertex(i);
    f.v = wr->v();
    std::string e1 = LatticePolygon::edgeId(prev), e2 = LatticePolygon::edgeId(i);
    f.w = {{e1, wr->w(0)}, {e2, wr->w(1)}, {"P", wr->wPlane()}};
    f.xsets = {{e1, wr->xset(0)}, {e2, wr->xset(1)}};
    f.mu = wr->mu(t.face(e1).mu, t.face(e2).mu);
    f.epsDecisions = wr->epsDecisions();
    f.window = wr->window();
    t.faces.push_back(f);
  }
  return t;
}

}  // namespace ehrhart_local
