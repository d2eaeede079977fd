#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "ehrhart_local/verify.hpp"

namespace ehrhart_local {

/// Minimal SVG writer. Coordinates stay exact until serialization, where they
/// are printed with 12 fractional digits; the y axis points up.
class SvgDocument {
 public:
  struct Style {
    std::string fill = "none";
    std::string stroke = "#000000";
    std::string strokeWidth = "0.02";
    std::string opacity = "1";
  };

  void addPolygon(const ConvexPoly& p, const Style& s) {
    if (p.empty()) return;
    for (const auto& v : p.vertices()) extend(v);
    std::string pts;
    for (const auto& v : p.vertices()) {
      if (!pts.empty()) pts += " ";
      pts += toDecimal(v.x) + "," + toDecimal(-v.y);
    }
    items_.push_back("<polygon points=\"" + pts + "\" fill=\"" + s.fill + "\" stroke=\"" + s.stroke +
                     "\" stroke-width=\"" + s.strokeWidth + "\" fill-opacity=\"" + s.opacity + "\"/>");
  }

  void addSegment(const Vec2& a, const Vec2& b, const Style& s) {
    extend(a);
    extend(b);
    items_.push_back("<line x1=\"" + toDecimal(a.x) + "\" y1=\"" + toDecimal(-a.y) + "\" x2=\"" + toDecimal(b.x) +
                     "\" y2=\"" + toDecimal(-b.y) + "\" stroke=\"" + s.stroke + "\" stroke-width=\"" +
                     s.strokeWidth + "\"/>");
  }

  void addPoint(const Vec2& p, const std::string& color = "#000000", const std::string& radius = "0.06") {
    extend(p);
    items_.push_back("<circle cx=\"" + toDecimal(p.x) + "\" cy=\"" + toDecimal(-p.y) + "\" r=\"" + radius +
                     "\" fill=\"" + color + "\"/>");
  }

  void addTitle(const std::string& text) { title_ = text; }

  std::string str() const {
    std::ostringstream os;
    Rational x0 = 0, y0 = 0, w = 1, h = 1;
    if (hasBounds_) {
      Rational m(1, 2);
      x0 = lo_.x - m;
      y0 = -hi_.y - m;
      w = hi_.x - lo_.x + 1;
      h = hi_.y - lo_.y + 1;
    }
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << toDecimal(x0) << " " << toDecimal(y0) << " "
       << toDecimal(w) << " " << toDecimal(h) << "\">\n";
    if (!title_.empty()) os << "<title>" << escape(title_) << "</title>\n";
    for (const auto& it : items_) os << it << "\n";
    os << "</svg>\n";
    return os.str();
  }

  bool empty() const { return items_.empty(); }

 private:
  static std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '<') out += "&lt;";
      else if (c == '>') out += "&gt;";
      else if (c == '&') out += "&amp;";
      else out += c;
    }
    return out;
  }

  void extend(const Vec2& p) {
    if (!hasBounds_) {
      lo_ = hi_ = p;
      hasBounds_ = true;
      return;
    }
    if (p.x < lo_.x) lo_.x = p.x;
    if (p.y < lo_.y) lo_.y = p.y;
    if (p.x > hi_.x) hi_.x = p.x;
    if (p.y > hi_.y) hi_.y = p.y;
  }

  std::vector<std::string> items_;
  std::string title_;
  bool hasBounds_ = false;
  Vec2 lo_, hi_;
};

inline const std::string& faceColor(const std::string& faceId) {
  static const std::vector<std::string> edge{"#4e79a7", "#59a14f", "#9c755f", "#76b7b2", "#edc948", "#b07aa1"};
  static const std::vector<std::string> vertex{"#e15759", "#f28e2b", "#ff9da7", "#bab0ac", "#d37295", "#fabfd2"};
  static const std::string plane = "#dddddd";
  if (faceId == "P") return plane;
  std::size_t i = std::stoul(faceId.substr(1));
  return faceId[0] == 'e' ? edge[i % edge.size()] : vertex[i % vertex.size()];
}

namespace detail {

inline void markLatticePoints(SvgDocument& doc, const Box& b) {
  for (std::int64_t x = b.lo.x; x <= b.hi.x; ++x)
    for (std::int64_t y = b.lo.y; y <= b.hi.y; ++y) doc.addPoint(Vec2(IVec2{x, y}), "#333333", "0.04");
}

inline void drawConeBoundary(SvgDocument& doc, const Cone2& c, const Rational& reach) {
  SvgDocument::Style s;
  s.stroke = "#000000";
  s.strokeWidth = "0.04";
  if (c.kind() == ConeKind::Halfplane) {
    Vec2 d(perp(c.constraints()[0]));
    Rational len = reach / std::max(absOf(d.x), absOf(d.y));
    doc.addSegment(-len * d, len * d, s);
  } else if (c.kind() == ConeKind::Wedge) {
    for (IVec2 r : c.generators()) {
      Vec2 d(r);
      doc.addSegment({0, 0}, (reach / std::max(absOf(d.x), absOf(d.y))) * d, s);
    }
  }
}

// Pieces of R(f) in the tiles of the box, with the face's translate at the origin.
inline std::vector<ConvexPoly> regionPieces(const MuTable& tab, const std::string& faceId, const Box& b) {
  std::vector<ConvexPoly> out;
  const FaceRecord& f = tab.face(faceId);
  if (f.dim == 2) {
    if (b.lo.x <= 0 && b.lo.y <= 0 && b.hi.x >= 0 && b.hi.y >= 0) out.push_back(tab.ctx->tile());
    return out;
  }
  const std::size_t i = std::stoul(faceId.substr(1));
  for (std::int64_t x = b.lo.x; x <= b.hi.x; ++x)
    for (std::int64_t y = b.lo.y; y <= b.hi.y; ++y) {
      IVec2 z{x, y};
      if (f.dim == 1) {
        ConvexPoly p = tab.edgeRegions[i]->piece(z, 0);
        if (!p.empty()) out.push_back(p);
      } else {
        for (auto& p : tab.vertexRegions[i]->regionTile(z)) out.push_back(p);
      }
    }
  return out;
}

}  // namespace detail

/// The region R(f) of one face near the origin (strip minus tiles for edges,
/// bounded region for vertices).
inline SvgDocument renderRegion(const MuTable& tab, const std::string& faceId, std::int64_t radius = 6) {
  SvgDocument doc;
  doc.addTitle("region " + faceId + " " + tab.provenance());
  Box b{{-radius, -radius}, {radius, radius}};
  SvgDocument::Style s;
  s.fill = faceColor(faceId);
  s.opacity = "0.7";
  for (const auto& p : detail::regionPieces(tab, faceId, b)) doc.addPolygon(p, s);
  detail::drawConeBoundary(doc, tab.face(faceId).fcone, Rational(radius));
  detail::markLatticePoints(doc, b);
  return doc;
}

/// Shading for v (pieces in tiles anchored at lattice points of the cone) and
/// w (pieces inside the cone) of one face.
inline SvgDocument renderMeasures(const MuTable& tab, const std::string& faceId, std::int64_t radius = 6) {
  SvgDocument doc;
  const FaceRecord& f = tab.face(faceId);
  doc.addTitle("measures " + faceId + " v=" + toString(f.v));
  Box b{{-radius, -radius}, {radius, radius}};
  SvgDocument::Style base, vStyle, wStyle;
  base.fill = "#eeeeee";
  vStyle.fill = "#f28e2b";
  vStyle.opacity = "0.6";
  wStyle.fill = "#4e79a7";
  wStyle.opacity = "0.6";
  std::vector<Halfplane> coneHs;
  for (IVec2 n : f.fcone.constraints()) coneHs.push_back({Vec2(n), 0});
  for (const auto& p : detail::regionPieces(tab, faceId, b)) {
    doc.addPolygon(p, base);
    ConvexPoly inCone = p.clipped(coneHs);
    if (inCone.dimension() == 2) doc.addPolygon(inCone, wStyle);
  }
  // v: the whole region restricted to tiles of lattice points in the cone.
  for (std::int64_t x = b.lo.x; x <= b.hi.x; ++x)
    for (std::int64_t y = b.lo.y; y <= b.hi.y; ++y) {
      IVec2 z{x, y};
      if (!f.fcone.contains(Vec2(z))) continue;
      for (const auto& p : detail::regionPieces(tab, faceId, Box{z, z})) doc.addPolygon(p, vStyle);
    }
  detail::drawConeBoundary(doc, f.fcone, Rational(radius));
  detail::markLatticePoints(doc, b);
  return doc;
}

/// Translated regions of the tiling for tP, the domain complex outline and
/// the dilated polygon.
inline SvgDocument renderTiling(const MuTable& tab, std::int64_t t, const Box& window) {
  SvgDocument doc;
  doc.addTitle("tiling t=" + std::to_string(t) + " " + tab.provenance());
  TilingAssembly asmb(tab, t);
  const std::int64_t r = tab.ctx->tileRadius();
  const ConvexPoly win = window.poly();
  for (std::int64_t x = window.lo.x - r; x <= window.hi.x + r; ++x)
    for (std::int64_t y = window.lo.y - r; y <= window.hi.y + r; ++y)
      for (const auto& pp : asmb.piecesAt({x, y})) {
        ConvexPoly c = pp.poly.intersection(win);
        if (c.dimension() < 2) continue;
        SvgDocument::Style s;
        s.fill = faceColor(pp.face);
        s.opacity = "0.8";
        s.strokeWidth = "0.01";
        doc.addPolygon(c, s);
      }
  SvgDocument::Style dc;
  dc.stroke = "#222222";
  dc.strokeWidth = "0.03";
  for (IVec2 z : latticePointsIn(tab.polygon.dilated(t))) {
    doc.addPolygon(tab.ctx->tileAt(z), dc);
    doc.addPoint(Vec2(z));
  }
  SvgDocument::Style outline;
  outline.stroke = "#000000";
  outline.strokeWidth = "0.08";
  doc.addPolygon(tab.polygon.dilated(t), outline);
  return doc;
}

}  // namespace ehrhart_local
