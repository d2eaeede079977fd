#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ehrhart_local/eps_scalar.hpp"
#include "ehrhart_local/vec2.hpp"

namespace ehrhart_local {

/// Closed halfplane {p : <normal, p> <= offset}.
struct Halfplane {
  Vec2 normal;
  Rational offset;

  bool contains(const Vec2& p) const { return dot(normal, p) <= offset; }
  /// Closed complement {p : <normal, p> >= offset}.
  Halfplane flipped() const { return {-normal, -offset}; }
  Halfplane translated(const Vec2& t) const { return {normal, offset + dot(normal, t)}; }
};

/// Range of the line parameter s for which origin + s*d (optionally minus εu)
/// lies in a convex set. Bounds are EpsScalars; nullopt means unbounded.
struct LineInterval {
  std::optional<EpsScalar> lo;
  std::optional<EpsScalar> hi;
  bool feasible = true;

  /// Positive length at ε = 0; zero for empty or single-point sections.
  Rational length() const {
    if (!feasible || !lo || !hi || !(*lo < *hi)) return 0;
    return hi->value() - lo->value();
  }
};

/// Convex polygon with counterclockwise vertices and no repeated or collinear
/// consecutive vertices. Degenerate results of clipping (segment, point) are
/// kept as 2- or 1-vertex lists; the empty set has no vertices.
class ConvexPoly {
 public:
  ConvexPoly() = default;

  static ConvexPoly fromVertices(std::vector<Vec2> pts) {
    ConvexPoly p;
    p.vertices_ = std::move(pts);
    p.normalize();
    if (p.vertices_.size() >= 3 && p.signedArea() < 0)
      std::reverse(p.vertices_.begin(), p.vertices_.end());
    if (!p.isConvexCcw()) throw std::invalid_argument("vertex list is not a convex polygon");
    return p;
  }

  /// Convex hull (Andrew's monotone chain).
  static ConvexPoly hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return fromVertices(std::move(pts));
    std::vector<Vec2> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
      while (k >= 2 && cross(h[k - 1] - h[k - 2], p - h[k - 2]) <= 0) --k;
      h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
      while (k >= lower && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
      h[k++] = pts[i];
    }
    h.resize(k - 1);
    return fromVertices(std::move(h));
  }

  static ConvexPoly box(const Vec2& lo, const Vec2& hi) {
    return fromVertices({lo, {hi.x, lo.y}, hi, {lo.x, hi.y}});
  }

  /// Intersection of halfplanes; throws std::domain_error if it is unbounded.
  static ConvexPoly fromHalfplanes(std::span<const Halfplane> hs) {
    if (!isBoundedIntersection(hs)) throw std::domain_error("halfplane intersection is unbounded");
    std::vector<Vec2> pts;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      for (std::size_t j = i + 1; j < hs.size(); ++j) {
        Rational det = cross(hs[i].normal, hs[j].normal);
        if (det == 0) continue;
        Vec2 p{(hs[i].offset * hs[j].normal.y - hs[j].offset * hs[i].normal.y) / det,
               (hs[i].normal.x * hs[j].offset - hs[j].normal.x * hs[i].offset) / det};
        if (std::all_of(hs.begin(), hs.end(), [&](const Halfplane& h) { return h.contains(p); }))
          pts.push_back(p);
      }
    }
    return hull(std::move(pts));
  }

  /// Recession cone of the intersection is {0}.
  static bool isBoundedIntersection(std::span<const Halfplane> hs) {
    if (hs.empty()) return false;
    for (const auto& h : hs) {
      for (const Vec2& r : {Vec2{-h.normal.y, h.normal.x}, Vec2{h.normal.y, -h.normal.x}}) {
        if (std::all_of(hs.begin(), hs.end(), [&](const Halfplane& g) { return dot(g.normal, r) <= 0; }))
          return false;
      }
    }
    return true;
  }

  bool empty() const { return vertices_.empty(); }
  /// -1 for the empty set, otherwise 0, 1 or 2.
  int dimension() const {
    return vertices_.empty() ? -1 : std::min<int>(2, static_cast<int>(vertices_.size()) - 1);
  }
  const std::vector<Vec2>& vertices() const { return vertices_; }

  Rational area() const { return dimension() == 2 ? signedArea() : Rational(0); }

  ConvexPoly clipped(const Halfplane& h) const {
    if (vertices_.empty()) return {};
    const std::size_t n = vertices_.size();
    std::vector<Rational> f(n);
    bool allIn = true;
    bool allOut = true;
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = dot(h.normal, vertices_[i]) - h.offset;
      allIn = allIn && f[i] <= 0;
      allOut = allOut && f[i] > 0;
    }
    if (allIn) return *this;
    if (allOut) return {};
    std::vector<Vec2> out;
    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      if (f[i] <= 0) out.push_back(vertices_[i]);
      if ((f[i] < 0 && f[j] > 0) || (f[i] > 0 && f[j] < 0)) {
        Rational t = f[i] / (f[i] - f[j]);
        out.push_back(vertices_[i] + t * (vertices_[j] - vertices_[i]));
      }
    }
    ConvexPoly r;
    r.vertices_ = std::move(out);
    r.normalize();
    return r;
  }

  ConvexPoly clipped(std::span<const Halfplane> hs) const {
    ConvexPoly r = *this;
    for (const auto& h : hs) {
      if (r.empty()) break;
      r = r.clipped(h);
    }
    return r;
  }

  ConvexPoly intersection(const ConvexPoly& other) const {
    if (empty() || other.empty()) return {};
    return clipped(other.halfplanes());
  }

  ConvexPoly translated(const Vec2& t) const {
    ConvexPoly r;
    r.vertices_.reserve(vertices_.size());
    for (const auto& v : vertices_) r.vertices_.push_back(v + t);
    return r;
  }

  /// Closed halfplanes whose intersection is this set (any dimension).
  std::vector<Halfplane> halfplanes() const {
    std::vector<Halfplane> hs;
    const std::size_t n = vertices_.size();
    if (n >= 3) {
      hs.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = vertices_[i];
        Vec2 e = vertices_[(i + 1) % n] - p;
        Vec2 nrm{e.y, -e.x};
        hs.push_back({nrm, dot(nrm, p)});
      }
    } else if (n == 2) {
      Vec2 e = vertices_[1] - vertices_[0];
      Vec2 nrm{e.y, -e.x};
      hs.push_back({nrm, dot(nrm, vertices_[0])});
      hs.push_back({-nrm, -dot(nrm, vertices_[0])});
      hs.push_back({e, dot(e, vertices_[1])});
      hs.push_back({-e, -dot(e, vertices_[0])});
    } else if (n == 1) {
      const Vec2& p = vertices_[0];
      hs.push_back({{1, 0}, p.x});
      hs.push_back({{-1, 0}, -p.x});
      hs.push_back({{0, 1}, p.y});
      hs.push_back({{0, -1}, -p.y});
    }
    return hs;
  }

  bool contains(const Vec2& p) const {
    if (empty()) return false;
    auto hs = halfplanes();
    return std::all_of(hs.begin(), hs.end(), [&](const Halfplane& h) { return h.contains(p); });
  }

  /// p - εu lies in the closed set for all small ε > 0.
  bool containsShifted(const Vec2& p, const Vec2& u) const {
    if (empty()) return false;
    for (const auto& h : halfplanes()) {
      EpsScalar lhs{dot(h.normal, p), -dot(h.normal, u)};
      if (lhs > EpsScalar{h.offset}) return false;
    }
    return true;
  }

  /// Parameters s with origin + s*d (- εu when `shift` is given) in the set.
  LineInterval lineSection(const Vec2& origin, const Vec2& d, const Vec2* shift = nullptr) const {
    LineInterval iv;
    if (empty()) {
      iv.feasible = false;
      return iv;
    }
    for (const auto& h : halfplanes()) {
      Rational nd = dot(h.normal, d);
      EpsScalar rhs{h.offset - dot(h.normal, origin), shift ? dot(h.normal, *shift) : Rational(0)};
      if (nd == 0) {
        if (rhs.sign() < 0) {
          iv.feasible = false;
          return iv;
        }
        continue;
      }
      EpsScalar bound = rhs / nd;
      if (nd > 0) {
        if (!iv.hi || bound < *iv.hi) iv.hi = bound;
      } else {
        if (!iv.lo || *iv.lo < bound) iv.lo = bound;
      }
    }
    if (iv.lo && iv.hi && *iv.hi < *iv.lo) iv.feasible = false;
    return iv;
  }

  Vec2 bboxMin() const {
    Vec2 m = vertices_.at(0);
    for (const auto& v : vertices_) {
      if (v.x < m.x) m.x = v.x;
      if (v.y < m.y) m.y = v.y;
    }
    return m;
  }
  Vec2 bboxMax() const {
    Vec2 m = vertices_.at(0);
    for (const auto& v : vertices_) {
      if (v.x > m.x) m.x = v.x;
      if (v.y > m.y) m.y = v.y;
    }
    return m;
  }

  /// Vertex-set equality, independent of the starting vertex.
  friend bool operator==(const ConvexPoly& a, const ConvexPoly& b) {
    auto va = a.vertices_;
    auto vb = b.vertices_;
    std::sort(va.begin(), va.end());
    std::sort(vb.begin(), vb.end());
    return va == vb;
  }

 private:
  Rational signedArea() const {
    Rational s = 0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) s += cross(vertices_[i], vertices_[(i + 1) % n]);
    return s / 2;
  }

  bool isConvexCcw() const {
    const std::size_t n = vertices_.size();
    if (n < 3) return true;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& a = vertices_[i];
      const Vec2& b = vertices_[(i + 1) % n];
      const Vec2& c = vertices_[(i + 2) % n];
      if (cross(b - a, c - b) <= 0) return false;
    }
    return true;
  }

  void normalize() {
    auto& v = vertices_;
    v.erase(std::unique(v.begin(), v.end()), v.end());
    while (v.size() > 1 && v.front() == v.back()) v.pop_back();
    if (v.size() < 3) return;
    if (signedArea() == 0) {
      // Collinear: keep the two extreme points.
      auto [lo, hi] = std::minmax_element(v.begin(), v.end());
      Vec2 a = *lo;
      Vec2 b = *hi;
      v = {a, b};
      return;
    }
    bool changed = true;
    while (changed && v.size() >= 3) {
      changed = false;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& a = v[(i + v.size() - 1) % v.size()];
        const Vec2& b = v[i];
        const Vec2& c = v[(i + 1) % v.size()];
        if (cross(b - a, c - b) == 0) {
          v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
      }
    }
  }

  std::vector<Vec2> vertices_;
};

}  // namespace ehrhart_local
