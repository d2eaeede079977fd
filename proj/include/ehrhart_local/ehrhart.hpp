#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehrhart_local/lattice_polygon.hpp"
#include "ehrhart_local/mu_table.hpp"
#include "ehrhart_local/poly_set.hpp"

namespace ehrhart_local {

/// Coefficients e_0..e_d, lowest degree first.
struct EhrhartPolynomial {
  std::vector<Rational> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Rational operator()(std::int64_t t) const {
    Rational r = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * Rational(t) + *it;
    return r;
  }
  friend bool operator==(const EhrhartPolynomial& a, const EhrhartPolynomial& b) { return a.coeffs == b.coeffs; }
  /// "e2, e1, e0" from the highest coefficient down.
  std::string toString() const {
    std::string s;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      if (!s.empty()) s += ", ";
      s += ehrhart_local::toString(*it);
    }
    return s;
  }
};

/// |Z^2 ∩ tP|.
inline std::int64_t bruteForceCount(const LatticePolygon& p, std::int64_t t) {
  if (t < 0) throw std::invalid_argument("dilation must be nonnegative");
  return static_cast<std::int64_t>(latticePointsIn(p.dilated(t)).size());
}

/// Lattice polytope of full dimension d <= 4 given by its vertices, as the
/// intersection of its facet halfspaces <a, x> <= b.
class LatticePolytope {
 public:
  explicit LatticePolytope(std::vector<std::vector<std::int64_t>> vertices) : v_(std::move(vertices)) {
    if (v_.empty()) throw std::invalid_argument("polytope without vertices");
    d_ = v_.front().size();
    if (d_ == 0 || d_ > 4) throw std::invalid_argument("brute-force counting supports dimensions 1 to 4");
    for (const auto& p : v_)
      if (p.size() != d_) throw std::invalid_argument("vertices of mixed dimension");
    buildFacets();
  }

  std::size_t dimension() const { return d_; }

  bool contains(const std::vector<std::int64_t>& x, std::int64_t t) const {
    for (const auto& f : facets_) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < d_; ++j) s += f.a[j] * x[j];
      if (s > t * f.b) return false;
    }
    return true;
  }

  std::int64_t count(std::int64_t t) const {
    if (t < 0) throw std::invalid_argument("dilation must be nonnegative");
    std::vector<std::int64_t> lo(d_), hi(d_);
    for (std::size_t j = 0; j < d_; ++j) {
      lo[j] = hi[j] = v_[0][j];
      for (const auto& p : v_) {
        lo[j] = std::min(lo[j], p[j]);
        hi[j] = std::max(hi[j], p[j]);
      }
      lo[j] *= t;
      hi[j] *= t;
    }
    std::vector<std::int64_t> x = lo;
    std::int64_t n = 0;
    while (true) {
      if (contains(x, t)) ++n;
      std::size_t j = 0;
      for (; j < d_ && x[j] == hi[j]; ++j) x[j] = lo[j];
      if (j == d_) break;
      ++x[j];
    }
    return n;
  }

 private:
  struct Facet {
    std::vector<std::int64_t> a;
    std::int64_t b;
  };

  static Integer det(std::vector<std::vector<Integer>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (m[k][k] == 0) {
        std::size_t r = k + 1;
        while (r < n && m[r][k] == 0) ++r;
        if (r == n) return 0;
        std::swap(m[k], m[r]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
  }

  void buildFacets() {
    const std::size_t n = v_.size();
    if (n < d_ + 1) throw std::invalid_argument("polytope is not full-dimensional");
    std::vector<std::size_t> idx(d_);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      // Normal of the hyperplane through the chosen d vertices (cofactors).
      std::vector<std::vector<Integer>> rows;
      for (std::size_t r = 1; r < d_; ++r) {
        std::vector<Integer> row;
        for (std::size_t j = 0; j < d_; ++j) row.push_back(Integer(v_[idx[r]][j] - v_[idx[0]][j]));
        rows.push_back(row);
      }
      std::vector<Integer> a(d_);
      bool nonzero = false;
      for (std::size_t j = 0; j < d_; ++j) {
        std::vector<std::vector<Integer>> minor;
        for (const auto& row : rows) {
          std::vector<Integer> m;
          for (std::size_t c = 0; c < d_; ++c)
            if (c != j) m.push_back(row[c]);
          minor.push_back(m);
        }
        a[j] = det(minor);
        if (j % 2) a[j] = -a[j];
        nonzero = nonzero || a[j] != 0;
      }
      if (nonzero) addIfSupporting(a, idx[0]);
      std::size_t i = d_;
      while (i > 0 && idx[i - 1] == n - d_ + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < d_; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (facets_.size() < d_ + 1) throw std::invalid_argument("polytope is not full-dimensional");
  }

  void addIfSupporting(std::vector<Integer> a, std::size_t base) {
    Integer g = 0;
    for (const auto& x : a) g = gcd(g, x);
    for (auto& x : a) x /= g;
    auto value = [&](const std::vector<std::int64_t>& p) {
      Integer s = 0;
      for (std::size_t j = 0; j < d_; ++j) s += a[j] * p[j];
      return s;
    };
    Integer b = value(v_[base]);
    bool le = true, ge = true;
    for (const auto& p : v_) {
      Integer s = value(p);
      le = le && s <= b;
      ge = ge && s >= b;
    }
    if (le == ge) return;  // not supporting, or all vertices on the hyperplane
    if (ge) {
      for (auto& x : a) x = -x;
      b = -b;
    }
    Facet f{{}, toInt64(b)};
    for (const auto& x : a) f.a.push_back(toInt64(x));
    for (const auto& h : facets_)
      if (h.a == f.a && h.b == f.b) return;
    facets_.push_back(std::move(f));
  }

  std::vector<std::vector<std::int64_t>> v_;
  std::size_t d_ = 0;
  std::vector<Facet> facets_;
};

/// Degree-d interpolant through counts at t = 0..d; further counts are
/// consistency checks. Throws if the data is not polynomial of degree d.
inline EhrhartPolynomial interpolateEhrhart(std::span<const Integer> counts, int d) {
  if (d < 0 || counts.size() < static_cast<std::size_t>(d) + 1) throw std::invalid_argument("need d+1 counts");
  // Forward differences at 0, then sum Δ^k f(0) * binom(t, k) in the monomial basis.
  std::vector<Rational> diff;
  std::vector<Rational> row;
  for (int i = 0; i <= d; ++i) row.push_back(Rational(counts[i]));
  while (!row.empty()) {
    diff.push_back(row.front());
    for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = row[i + 1] - row[i];
    row.pop_back();
  }
  std::vector<Rational> coeffs(d + 1, Rational(0));
  std::vector<Rational> binom{Rational(1)};  // coefficients of binom(t, k)
  for (int k = 0; k <= d; ++k) {
    for (std::size_t i = 0; i < binom.size(); ++i) coeffs[i] += diff[k] * binom[i];
    std::vector<Rational> next(binom.size() + 1, Rational(0));
    for (std::size_t i = 0; i < binom.size(); ++i) {
      next[i + 1] += binom[i] / (k + 1);
      next[i] -= binom[i] * Rational(k) / (k + 1);
    }
    binom = std::move(next);
  }
  EhrhartPolynomial p{coeffs};
  for (std::size_t t = d + 1; t < counts.size(); ++t)
    if (p(static_cast<std::int64_t>(t)) != Rational(counts[t]))
      throw std::domain_error("lattice point counts are not polynomial of degree " + std::to_string(d));
  return p;
}

/// Interpolation of brute-force counts at t = 0..2, re-checked at t = 3, 4.
inline EhrhartPolynomial ehrhartByBruteForce(const LatticePolygon& p) {
  std::vector<Integer> counts;
  for (std::int64_t t = 0; t <= 4; ++t) counts.push_back(Integer(bruteForceCount(p, t)));
  EhrhartPolynomial e = interpolateEhrhart(counts, 2);
  if (e.coeffs[0] != 1 || e.coeffs[2] != p.area())
    throw std::logic_error("interpolated polynomial violates e0 = 1 or e2 = area");
  return e;
}

inline EhrhartPolynomial ehrhartByBruteForce(const LatticePolytope& p) {
  const int d = static_cast<int>(p.dimension());
  std::vector<Integer> counts;
  for (std::int64_t t = 0; t <= d + 2; ++t) counts.push_back(Integer(p.count(t)));
  EhrhartPolynomial e = interpolateEhrhart(counts, d);
  if (e.coeffs[0] != 1) throw std::logic_error("interpolated polynomial violates e0 = 1");
  return e;
}

enum class ConeView { Feasible, Normal };

/// μ keyed by cone (Cone2::key()) in the chosen view.
inline std::map<std::string, Rational> muByCone(const MuTable& t, ConeView view) {
  std::map<std::string, Rational> m;
  for (const auto& f : t.faces) {
    Cone2 c = view == ConeView::Feasible ? f.fcone : normalConeFromFcone(f.fcone);
    m[c.key()] = f.mu;
  }
  return m;
}

/// e_i = Σ over i-faces of μ(cone of f) * relvol(f); cones in either view.
inline EhrhartPolynomial localFormulaCoefficients(const LatticePolygon& p, const std::map<std::string, Rational>& mu,
                                                  ConeView view) {
  auto lookup = [&](const Cone2& fcone, const std::string& face) {
    Cone2 c = view == ConeView::Feasible ? fcone : normalConeFromFcone(fcone);
    auto it = mu.find(c.key());
    if (it == mu.end()) throw std::out_of_range("missing μ value for face " + face);
    return it->second;
  };
  EhrhartPolynomial e{{Rational(0), Rational(0), Rational(0)}};
  e.coeffs[2] = lookup(Cone2::plane(), "P") * p.area();
  for (std::size_t i = 0; i < p.size(); ++i) {
    e.coeffs[1] += lookup(p.fconeOfEdge(i), LatticePolygon::edgeId(i)) * Rational(p.edge(i).latticeLength);
    e.coeffs[0] += lookup(p.fconeOfVertex(i), LatticePolygon::vertexId(i));
  }
  return e;
}

inline EhrhartPolynomial localFormulaCoefficients(const MuTable& t) {
  return localFormulaCoefficients(t.polygon, muByCone(t, ConeView::Feasible), ConeView::Feasible);
}

}  // namespace ehrhart_local
