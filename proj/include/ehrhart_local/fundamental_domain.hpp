#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehrhart_local/convex_poly.hpp"
#include "ehrhart_local/cone2.hpp"
#include "ehrhart_local/vec2.hpp"

namespace ehrhart_local {

/// Integer 2x2 matrix [[a, b], [c, d]].
struct IMat2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  static IMat2 identity() { return {}; }
  std::int64_t det() const { return a * d - b * c; }
  IMat2 transposed() const { return {a, c, b, d}; }
  IVec2 operator()(IVec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  Vec2 operator()(const Vec2& v) const {
    return {Rational(a) * v.x + Rational(b) * v.y, Rational(c) * v.x + Rational(d) * v.y};
  }
  friend IMat2 operator*(const IMat2& m, const IMat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  friend bool operator==(const IMat2&, const IMat2&) = default;
  friend auto operator<=>(const IMat2&, const IMat2&) = default;
};

/// Symmetric positive definite form [[a, b], [b, c]].
class GramMatrix {
 public:
  GramMatrix() : a_(1), b_(0), c_(1) {}
  GramMatrix(Rational a, Rational b, Rational c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (!(a_ > 0) || !(a_ * c_ - b_ * b_ > 0)) throw std::invalid_argument("Gram matrix is not positive definite");
  }
  static GramMatrix identity() { return {}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  Rational det() const { return a_ * c_ - b_ * b_; }
  bool isIdentity() const { return a_ == 1 && b_ == 0 && c_ == 1; }

  Vec2 apply(const Vec2& v) const { return {a_ * v.x + b_ * v.y, b_ * v.x + c_ * v.y}; }
  Rational form(const Vec2& x, const Vec2& y) const { return dot(x, apply(y)); }
  Rational norm2(const Vec2& x) const { return form(x, x); }

  friend bool operator==(const GramMatrix& p, const GramMatrix& q) {
    return p.a_ == q.a_ && p.b_ == q.b_ && p.c_ == q.c_;
  }
  std::string toString() const {
    using ehrhart_local::toString;
    return "[[" + toString(a_) + "," + toString(b_) + "],[" + toString(b_) + "," + toString(c_) + "]]";
  }

 private:
  Rational a_, b_, c_;
};

/// Finite group of unimodular integer matrices.
class SymmetryGroup {
 public:
  /// Validates closure and unimodularity; throws std::invalid_argument.
  explicit SymmetryGroup(std::vector<IMat2> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw std::invalid_argument("empty symmetry group");
    std::set<IMat2> s(elements_.begin(), elements_.end());
    elements_.assign(s.begin(), s.end());
    for (const auto& m : elements_)
      if (m.det() != 1 && m.det() != -1) throw std::invalid_argument("group element is not unimodular");
    if (!s.count(IMat2::identity())) throw std::invalid_argument("group does not contain the identity");
    for (const auto& m : elements_)
      for (const auto& n : elements_)
        if (!s.count(m * n)) throw std::invalid_argument("element list is not closed under products");
  }

  /// Closure of a generator set. Finite subgroups of GL(2,Z) have order <= 12.
  static SymmetryGroup generatedBy(const std::vector<IMat2>& gens) {
    std::set<IMat2> s{IMat2::identity()};
    std::vector<IMat2> frontier{IMat2::identity()};
    while (!frontier.empty()) {
      std::vector<IMat2> next;
      for (const auto& m : frontier)
        for (const auto& g : gens) {
          IMat2 p = g * m;
          if (s.insert(p).second) next.push_back(p);
        }
      if (s.size() > 12) throw std::invalid_argument("generators do not span a finite group");
      frontier = std::move(next);
    }
    return SymmetryGroup({s.begin(), s.end()});
  }

  const std::vector<IMat2>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }

 private:
  std::vector<IMat2> elements_;
};

/// (1/|G|) * sum of A^T A; every group element is an isometry of the result.
inline GramMatrix invariantGram(const SymmetryGroup& g) {
  Rational a = 0, b = 0, c = 0;
  for (const auto& m : g.elements()) {
    a += Rational(m.a * m.a + m.c * m.c);
    b += Rational(m.a * m.b + m.c * m.d);
    c += Rational(m.b * m.b + m.d * m.d);
  }
  Rational n(static_cast<long>(g.order()));
  return GramMatrix(a / n, b / n, c / n);
}

/// Tile of a lattice in its span: full lattice (dim 2), a line lattice
/// (dim 1, centered segment) or the trivial lattice (dim 0, the origin).
struct FundamentalDomain {
  int dim = 2;
  ConvexPoly carrier;
  IVec2 lineDirection{};  // dim 1 only

  /// Volume normalized by the lattice determinant (always 1 for our domains).
  Rational relativeVolume() const {
    if (dim == 2) return carrier.area();
    if (dim == 1) {
      const auto& v = carrier.vertices();
      Vec2 e = v.at(1) - v.at(0);
      Vec2 d(lineDirection);
      return d.x != 0 ? absOf(e.x / d.x) : absOf(e.y / d.y);
    }
    return 1;
  }
};

inline FundamentalDomain centeredCube() {
  Rational h(1, 2);
  return {2, ConvexPoly::box({-h, -h}, {h, h}), {}};
}

inline FundamentalDomain centeredSegment(const LineLattice& L) {
  Vec2 half = Rational(1, 2) * Vec2(L.direction);
  return {1, ConvexPoly::fromVertices({-half, half}), L.direction};
}

inline FundamentalDomain pointDomain() {
  return {0, ConvexPoly::fromVertices({Vec2{0, 0}}), {}};
}

namespace detail {

/// Lagrange reduction of the standard basis with respect to G; returns the
/// larger diagonal entry of the reduced form.
inline Rational reducedMaxDiagonal(const GramMatrix& g) {
  Vec2 b1{1, 0}, b2{0, 1};
  for (int iter = 0; iter < 1000; ++iter) {
    if (g.norm2(b1) > g.norm2(b2)) std::swap(b1, b2);
    Rational q = g.form(b1, b2) / g.norm2(b1);
    Integer m = floorOf(q + Rational(1, 2));
    if (m == 0) break;
    b2 = b2 - Rational(m) * b1;
  }
  return std::max(g.norm2(b1), g.norm2(b2));
}

inline std::int64_t isqrtCeil(const Rational& r) {
  Integer f = ceilOf(r);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), f.get_mpz_t());
  if (s * s < f) s += 1;
  return toInt64(s);
}

}  // namespace detail

/// Dirichlet-Voronoi cell of Z^2 for the inner product G. Bisectors of all
/// lattice vectors up to G-norm^2 4*(max reduced diagonal); the radius is
/// doubled until the cell has area 1.
inline FundamentalDomain dvCell(const GramMatrix& g) {
  Rational radius = 4 * detail::reducedMaxDiagonal(g);
  for (int round = 0; round < 16; ++round) {
    std::int64_t bx = detail::isqrtCeil(radius * g.c() / g.det());
    std::int64_t by = detail::isqrtCeil(radius * g.a() / g.det());
    std::vector<Halfplane> hs;
    for (std::int64_t x = -bx; x <= bx; ++x)
      for (std::int64_t y = -by; y <= by; ++y) {
        if (x == 0 && y == 0) continue;
        Vec2 a(IVec2{x, y});
        Rational n2 = g.norm2(a);
        if (n2 <= radius) hs.push_back({g.apply(a), n2 / 2});
      }
    ConvexPoly cell = ConvexPoly::fromHalfplanes(hs);
    if (cell.area() == 1) return {2, cell, {}};
    radius *= 2;
  }
  throw std::runtime_error("Dirichlet-Voronoi cell did not reach area 1");
}

/// The 1-D cell is the centered primitive segment for every inner product.
inline FundamentalDomain dvCell(const LineLattice& L, const GramMatrix&) { return centeredSegment(L); }

/// Global choice of the tile for the full lattice; lines always get the
/// centered segment.
struct DomainPolicy {
  enum class Kind { Cube, Dv };
  Kind kind = Kind::Cube;
  GramMatrix gram;
  std::optional<SymmetryGroup> group;

  static DomainPolicy cube() { return {}; }
  static DomainPolicy dv(const GramMatrix& g) { return {Kind::Dv, g, std::nullopt}; }
  static DomainPolicy dv(const SymmetryGroup& grp) { return {Kind::Dv, invariantGram(grp), grp}; }

  /// Inner product used for strip complements (identity for the cube).
  const GramMatrix& strips() const { return gram; }

  FundamentalDomain plane() const { return kind == Kind::Cube ? centeredCube() : dvCell(gram); }

  std::string name() const { return kind == Kind::Cube ? "cube" : "dv"; }
};

/// {0}, a rational line through the origin, or the plane.
struct Subspace {
  int dim = 2;
  Vec2 direction{};  // dim 1 only

  static Subspace zero() { return {0, {}}; }
  static Subspace line(const Vec2& d) { return {1, d}; }
  static Subspace whole() { return {2, {}}; }
};

inline FundamentalDomain domainForSubspace(const Subspace& s, const DomainPolicy& policy) {
  switch (s.dim) {
    case 0: return pointDomain();
    case 1: return centeredSegment(LineLattice(primitiveDirection(s.direction)));
    case 2: return policy.plane();
  }
  throw std::invalid_argument("subspace dimension must be 0, 1 or 2");
}

}  // namespace ehrhart_local
