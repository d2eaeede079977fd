#pragma once

#include <compare>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "ehrhart_local/rational.hpp"

namespace ehrhart_local {

/// A rational number plus a first-order multiple of a positive infinitesimal:
/// value + eps * ε. Ordering is lexicographic, so ties in the value part are
/// broken by the ε coefficient. Products of two non-real numbers would need a
/// second-order term and are rejected.
class EpsScalar {
 public:
  EpsScalar() = default;
  EpsScalar(Rational value, Rational eps = 0) : value_(std::move(value)), eps_(std::move(eps)) {}

  const Rational& value() const { return value_; }
  const Rational& eps() const { return eps_; }
  bool isReal() const { return eps_ == 0; }

  int sign() const {
    int s = sgn(value_);
    return s != 0 ? s : sgn(eps_);
  }

  EpsScalar operator-() const { return {-value_, -eps_}; }

  EpsScalar& operator+=(const EpsScalar& o) {
    value_ += o.value_;
    eps_ += o.eps_;
    return *this;
  }
  EpsScalar& operator-=(const EpsScalar& o) {
    value_ -= o.value_;
    eps_ -= o.eps_;
    return *this;
  }

  friend EpsScalar operator+(EpsScalar a, const EpsScalar& b) { return a += b; }
  friend EpsScalar operator-(EpsScalar a, const EpsScalar& b) { return a -= b; }
  friend EpsScalar operator*(const EpsScalar& a, const Rational& s) {
    return {Rational(a.value_ * s), Rational(a.eps_ * s)};
  }
  friend EpsScalar operator*(const Rational& s, const EpsScalar& a) { return a * s; }
  friend EpsScalar operator/(const EpsScalar& a, const Rational& s) {
    if (s == 0) throw std::domain_error("EpsScalar division by zero");
    return {Rational(a.value_ / s), Rational(a.eps_ / s)};
  }
  friend EpsScalar operator*(const EpsScalar& a, const EpsScalar& b) {
    if (!a.isReal() && !b.isReal())
      throw std::domain_error("EpsScalar product would need a second-order term");
    return {Rational(a.value_ * b.value_), Rational(a.value_ * b.eps_ + a.eps_ * b.value_)};
  }

  friend bool operator==(const EpsScalar& a, const EpsScalar& b) {
    return a.value_ == b.value_ && a.eps_ == b.eps_;
  }
  friend std::strong_ordering operator<=>(const EpsScalar& a, const EpsScalar& b) {
    int c = cmp(a.value_, b.value_);
    if (c == 0) c = cmp(a.eps_, b.eps_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const EpsScalar& a) {
    return os << toString(a.value_) << (a.eps_ < 0 ? " - " : " + ") << toString(absOf(a.eps_))
              << "ε";
  }

 private:
  Rational value_;
  Rational eps_;
};

}  // namespace ehrhart_local
