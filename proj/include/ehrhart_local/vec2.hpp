#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "ehrhart_local/eps_scalar.hpp"
#include "ehrhart_local/rational.hpp"

namespace ehrhart_local {

/// Integer vector; used for lattice points, primitive directions and normals.
struct IVec2 {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend IVec2 operator+(IVec2 a, IVec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend IVec2 operator-(IVec2 a, IVec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend IVec2 operator-(IVec2 a) { return {-a.x, -a.y}; }
  friend IVec2 operator*(std::int64_t s, IVec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(IVec2, IVec2) = default;
  friend auto operator<=>(IVec2, IVec2) = default;
  friend std::ostream& operator<<(std::ostream& os, IVec2 v) {
    return os << "(" << v.x << "," << v.y << ")";
  }
};

inline std::int64_t dot(IVec2 a, IVec2 b) { return a.x * b.x + a.y * b.y; }
inline std::int64_t cross(IVec2 a, IVec2 b) { return a.x * b.y - a.y * b.x; }
/// Counterclockwise quarter turn.
inline IVec2 perp(IVec2 a) { return {-a.y, a.x}; }

/// Rational point or vector in the plane.
struct Vec2 {
  Rational x;
  Rational y;

  Vec2() = default;
  Vec2(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}
  Vec2(IVec2 v) : x(Rational(static_cast<long>(v.x))), y(Rational(static_cast<long>(v.y))) {}

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(const Rational& s, const Vec2& a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator/(const Vec2& a, const Rational& s) { return {a.x / s, a.y / s}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
  friend std::ostream& operator<<(std::ostream& os, const Vec2& v) {
    return os << "(" << toString(v.x) << "," << toString(v.y) << ")";
  }
};

inline Rational dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline Rational cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(IVec2 a, const Vec2& b) {
  return Rational(static_cast<long>(a.x)) * b.x + Rational(static_cast<long>(a.y)) * b.y;
}

/// A point displaced by an infinitesimal multiple of a fixed direction.
struct EpsVec2 {
  EpsScalar x;
  EpsScalar y;

  static EpsVec2 shifted(const Vec2& p, const Vec2& u) { return {{p.x, u.x}, {p.y, u.y}}; }
  Vec2 atZero() const { return {x.value(), y.value()}; }
};

inline EpsScalar dot(const Vec2& n, const EpsVec2& p) { return p.x * n.x + p.y * n.y; }

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

/// Divides out the gcd of the coordinates, keeping the direction.
inline IVec2 primitive(IVec2 v) {
  if (v.x == 0 && v.y == 0) throw std::invalid_argument("primitive() of the zero vector");
  std::int64_t g = gcd64(v.x, v.y);
  return {v.x / g, v.y / g};
}

inline bool isPrimitive(IVec2 v) { return (v.x != 0 || v.y != 0) && gcd64(v.x, v.y) == 1; }

/// Scales a nonzero rational direction to the primitive integer vector
/// pointing the same way.
inline IVec2 primitiveDirection(const Vec2& v) {
  if (v.x == 0 && v.y == 0) throw std::invalid_argument("zero direction");
  Integer l = lcm(v.x.get_den(), v.y.get_den());
  Integer a = v.x.get_num() * (l / v.x.get_den());
  Integer b = v.y.get_num() * (l / v.y.get_den());
  Integer g = gcd(a, b);
  return {toInt64(Integer(a / g)), toInt64(Integer(b / g))};
}

}  // namespace ehrhart_local
