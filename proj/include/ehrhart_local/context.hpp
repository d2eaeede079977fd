#pragma once

#include <memory>
#include <span>
#include <vector>

#include "ehrhart_local/fundamental_domain.hpp"
#include "ehrhart_local/perturbation.hpp"

namespace ehrhart_local {

/// Everything a region construction depends on: the tile T of the full
/// lattice, the inner product for strip complements and the ε direction.
class Context {
 public:
  /// `lineNormals` are the normals of all lines whose strips will be built;
  /// the ε direction is chosen generic for them, their strip boundaries and
  /// the tile edges.
  Context(DomainPolicy policy, std::span<const IVec2> lineNormals, int seed = EpsDirection::seedFromEnvironment())
      : policy_(std::move(policy)), tile_(policy_.plane().carrier) {
    std::vector<Vec2> normals;
    for (const auto& h : tile_.halfplanes()) normals.push_back(h.normal);
    for (IVec2 n : lineNormals) {
      normals.push_back(Vec2(n));
      normals.push_back(policy_.strips().apply(Vec2(perp(n))));
    }
    eps_ = EpsDirection::choose(normals, seed);
  }

  static std::shared_ptr<const Context> make(DomainPolicy policy, std::span<const IVec2> lineNormals,
                                             int seed = EpsDirection::seedFromEnvironment()) {
    return std::make_shared<const Context>(std::move(policy), lineNormals, seed);
  }

  const DomainPolicy& policy() const { return policy_; }
  const GramMatrix& gram() const { return policy_.strips(); }
  const ConvexPoly& tile() const { return tile_; }
  ConvexPoly tileAt(IVec2 z) const { return tile_.translated(Vec2(z)); }
  const Vec2& u() const { return eps_.u; }
  const EpsDirection& eps() const { return eps_; }

  Rational maxOverTile(const Vec2& n) const {
    Rational m = dot(n, tile_.vertices().front());
    for (const auto& q : tile_.vertices())
      if (dot(n, q) > m) m = dot(n, q);
    return m;
  }
  Rational minOverTile(const Vec2& n) const { return -maxOverTile(-n); }

  /// Largest |coordinate| of a tile vertex, rounded up.
  std::int64_t tileRadius() const {
    Rational m = 0;
    for (const auto& q : tile_.vertices()) m = std::max({m, absOf(q.x), absOf(q.y)});
    return toInt64(ceilOf(m));
  }

 private:
  DomainPolicy policy_;
  ConvexPoly tile_;
  EpsDirection eps_;
};

}  // namespace ehrhart_local
