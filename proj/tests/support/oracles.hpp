#pragma once

// Brute-force reference implementations used to cross-check the library.
// They avoid the library's sphere construction and rank machinery and
// work directly from planar determinants and cross products.

#include <algorithm>
#include <set>
#include <vector>

#include "polychrome/chromatic.hpp"

namespace polychrome::oracle {

inline Scalar det3(const Scalar (&m)[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline bool collinear(const Point& a, const Point& b, const Point& c) {
  const Scalar v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
  return v.is_zero();
}

// Four points of R^2_inf on one generalized circle: the incircle
// determinant, or collinearity of the finite three when one is infinity.
inline bool cocircular(const Point& a, const Point& b, const Point& c, const Point& d) {
  const Point* p[4] = {&a, &b, &c, &d};
  for (int i = 0; i < 4; ++i) {
    if (!p[i]->is_infinity()) continue;
    std::vector<const Point*> rest;
    for (int j = 0; j < 4; ++j)
      if (j != i) rest.push_back(p[j]);
    return collinear(*rest[0], *rest[1], *rest[2]);
  }
  Scalar m[3][3];
  for (int i = 0; i < 3; ++i) {
    const Scalar dx = (*p[i])[0] - d[0], dy = (*p[i])[1] - d[1];
    m[i][0] = dx;
    m[i][1] = dy;
    m[i][2] = dx * dx + dy * dy;
  }
  return det3(m).is_zero();
}

// Most colors on a circle through three config points, all points counted.
inline std::size_t max_circle_colors(const ColoredConfig& cfg) {
  const auto& e = cfg.entries;
  std::size_t best = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      for (std::size_t k = j + 1; k < e.size(); ++k) {
        std::set<int> colors;
        for (const auto& q : e)
          if (q.point == e[i].point || q.point == e[j].point || q.point == e[k].point ||
              cocircular(e[i].point, e[j].point, e[k].point, q.point))
            colors.insert(q.color);
        best = std::max(best, colors.size());
      }
  return best;
}

// Circular general position: no circle holds all but at most one point.
inline bool cgp(const std::vector<Point>& m) {
  if (m.size() <= 4) return false;
  for (std::size_t skip = 0; skip <= m.size(); ++skip) {
    std::vector<Point> rest;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != skip) rest.push_back(m[i]);
    bool all = true;
    for (std::size_t i = 3; i < rest.size() && all; ++i) all = cocircular(rest[0], rest[1], rest[2], rest[i]);
    if (all) return false;
  }
  return true;
}

inline Vector cross(const Vector& a, const Vector& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Most colors on a great circle of S^2 through two config points.
inline std::size_t max_great_colors(const ColoredConfig& cfg) {
  const auto& e = cfg.entries;
  std::size_t best = e.empty() ? 0 : 1;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      const Vector nu = cross(e[i].point.coords(), e[j].point.coords());
      if (is_zero_vector(nu)) continue;
      std::set<int> colors;
      for (const auto& q : e)
        if (dot(nu, q.point.coords()).is_zero()) colors.insert(q.color);
      best = std::max(best, colors.size());
    }
  return best;
}

// Complex cross ratio (z1,z2;z3,z4) = (z1-z3)(z2-z4)/((z2-z3)(z1-z4)) on
// finite points, returning only whether its imaginary part vanishes.
inline bool cross_ratio_real(const Point& z1, const Point& z2, const Point& z3, const Point& z4) {
  struct C {
    Scalar re, im;
  };
  auto sub = [](const Point& a, const Point& b) { return C{a[0] - b[0], a[1] - b[1]}; };
  auto mul = [](const C& a, const C& b) { return C{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; };
  const C num = mul(sub(z1, z3), sub(z2, z4));
  const C den = mul(sub(z2, z3), sub(z1, z4));
  // num / den is real iff num * conj(den) is real.
  return (num.im * den.re - num.re * den.im).is_zero();
}

}  // namespace polychrome::oracle
