#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ehrhart_local/context.hpp"
#include "ehrhart_local/poly_set.hpp"

namespace ehrhart_local {

/// Raised when a region cannot be certified inside the window cap.
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A piece of a region inside one lattice tile z + T.
struct TilePiece {
  IVec2 tile;
  ConvexPoly poly;
};

/// R(H) for the halfplane H = {<n, x> <= 0}: the strip
/// {|<Gd, p>| <= g/2} minus the tiles that lie in the open halfplane.
/// Strip k is the translate by k*d.
class HalfplaneRegion {
 public:
  HalfplaneRegion(std::shared_ptr<const Context> ctx, IVec2 normal)
      : HalfplaneRegion(std::move(ctx), normal, perp(primitive(normal))) {}

  HalfplaneRegion(std::shared_ptr<const Context> ctx, IVec2 normal, IVec2 direction)
      : ctx_(std::move(ctx)), n_(primitive(normal)) {
    if (dot(n_, direction) != 0) throw std::invalid_argument("direction must lie on the boundary line");
    if (!ctx_->eps().isGenericFor(Vec2(n_)))
      throw std::invalid_argument("ε direction is parallel to the boundary line");
    nMax_ = ctx_->maxOverTile(Vec2(n_));
    nMin_ = ctx_->minOverTile(Vec2(n_));
    nu_ = dot(n_, ctx_->u());
    setDirection(direction);
    measure();
  }

  /// Same region, strips indexed along `direction` (= ±d).
  HalfplaneRegion withDirection(IVec2 direction) const {
    HalfplaneRegion r = *this;
    r.setDirection(direction);
    return r;
  }

  const Context& context() const { return *ctx_; }
  IVec2 normal() const { return n_; }
  IVec2 direction() const { return d_; }
  const Vec2& stripNormal() const { return gd_; }
  const Rational& stripWidth() const { return g_; }
  Cone2 cone() const { return Cone2::halfplane(n_); }

  /// max/min of <n, q> over the tile.
  const Rational& normalMax() const { return nMax_; }
  const Rational& normalMin() const { return nMin_; }
  Rational tileDepth() const { return nMax_ - nMin_; }

  /// z + T + εu lies in the open halfplane {<n, x> < 0}.
  bool tileInside(IVec2 z, std::size_t* ties = nullptr) const {
    Rational val = dot(n_, Vec2(z)) + nMax_;
    int s = sgn(val);
    if (s == 0) {
      if (ties) ++*ties;
      return nu_ < 0;
    }
    return s < 0;
  }

  /// Inclusive range of strip indices meeting tile z in positive area.
  std::pair<std::int64_t, std::int64_t> stripsMeeting(IVec2 z) const {
    Rational s = dot(gd_, Vec2(z));
    Rational half(1, 2);
    Integer hi = ceilOf((s + gdMax_) / g_ + half) - 1;
    Integer lo = floorOf((s + gdMin_) / g_ - half) + 1;
    return {toInt64(lo), toInt64(hi)};
  }

  std::array<Halfplane, 2> stripHalfplanes(std::int64_t k) const {
    Rational c = Rational(k) * g_;
    Rational half = g_ / 2;
    return {Halfplane{gd_, c + half}, Halfplane{-gd_, half - c}};
  }

  /// Piece of k*d + R(H) in tile z; empty if there is none.
  ConvexPoly piece(IVec2 z, std::int64_t k) const {
    if (tileInside(z)) return {};
    auto hs = stripHalfplanes(k);
    ConvexPoly p = ctx_->tileAt(z).clipped(hs);
    return p.dimension() == 2 ? p : ConvexPoly{};
  }

  /// Relative domain volume: pieces at tiles z with <n, z> <= 0.
  const Rational& v() const { return v_; }
  /// Correction volume for the plane: area of R(H) ∩ H.
  const Rational& w() const { return w_; }
  Rational mu() const { return v_ - w_; }

  /// Pieces of R(H) whose tiles meet the closed halfplane; every piece of
  /// R(H) ∩ H comes from one of them.
  const std::vector<TilePiece>& innerPieces() const { return inner_; }

  /// Collar depth (in units of <n, .>) at which v and w were certified.
  const Rational& collarDepth() const { return collar_; }

 private:
  void setDirection(IVec2 direction) {
    d_ = primitive(direction);
    if (cross(d_, perp(n_)) != 0) throw std::invalid_argument("direction must lie on the boundary line");
    gd_ = ctx_->gram().apply(Vec2(d_));
    g_ = dot(gd_, Vec2(d_));
    gdMax_ = ctx_->maxOverTile(gd_);
    gdMin_ = ctx_->minOverTile(gd_);
    if (!ctx_->eps().isGenericFor(gd_)) throw std::invalid_argument("ε direction is parallel to a strip boundary");
  }

  struct Measures {
    Rational v, w;
    std::vector<TilePiece> inner;
  };

  // Tiles with pieces: not inside the open halfplane (<n,z> >= -nMax) and
  // meeting strip 0; bounded on the outer side by the collar or by the
  // largest <n,z> that can still matter.
  Measures measureInCollar(const Rational& depth) const {
    Rational upper = std::max(Rational(0), Rational(-nMin_));
    Rational half = g_ / 2;
    std::vector<Halfplane> box{{-Vec2(n_), std::min(nMax_, depth)},
                               {Vec2(n_), std::min(upper, depth)},
                               {gd_, half - gdMin_},
                               {-gd_, half + gdMax_}};
    Measures m;
    for (IVec2 z : latticePointsIn(std::span<const Halfplane>(box))) {
      ConvexPoly p = piece(z, 0);
      if (p.empty()) continue;
      if (dot(n_, Vec2(z)) <= 0) m.v += p.area();
      ConvexPoly inH = p.clipped(Halfplane{Vec2(n_), 0});
      m.w += inH.area();
      if (dot(n_, Vec2(z)) + nMin_ <= 0) m.inner.push_back({z, p});
    }
    return m;
  }

  void measure() {
    const Rational base = 4 * tileDepth();
    const Rational cap = 64 * base;
    for (Rational depth = base; depth <= cap; depth *= 2) {
      Measures a = measureInCollar(depth);
      Measures b = measureInCollar(2 * depth);
      if (a.v == b.v && a.w == b.w) {
        v_ = a.v;
        w_ = a.w;
        inner_ = std::move(a.inner);
        collar_ = depth;
        return;
      }
    }
    throw ConstructionError("halfplane region did not stabilize within the collar cap");
  }

  std::shared_ptr<const Context> ctx_;
  IVec2 n_;
  IVec2 d_;
  Vec2 gd_;
  Rational g_, gdMax_, gdMin_;
  Rational nMax_, nMin_, nu_;
  Rational v_, w_, collar_;
  std::vector<TilePiece> inner_;
};

}  // namespace ehrhart_local
