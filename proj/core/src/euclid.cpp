#include "polychrome/euclid.hpp"

#include <algorithm>
#include <cmath>

#include "polychrome/combinations.hpp"
#include "polychrome/error.hpp"

namespace polychrome {

namespace {

bool on_unit_sphere(const Point& p) {
  if (p.is_infinity()) return false;
  const Scalar norm = squared_norm(p.coords());
  if (norm.is_float()) return (norm - Scalar::from_double(1.0)).is_zero();
  return norm == Scalar(1);
}

void require_on_sphere(std::span<const Point> points, const char* what) {
  for (const auto& p : points) {
    if (!on_unit_sphere(p)) throw PreconditionError(std::string(what) + ": point " + p.to_string() + " is not on the unit sphere");
  }
}

Vector unit_vector(std::size_t dim, std::size_t i) {
  Vector v(dim, Scalar(0));
  v[i] = Scalar(1);
  return v;
}

std::optional<Scalar> exact_sqrt(const Scalar& q) {
  auto r = q.rational_value();
  if (!r) return std::nullopt;
  if (auto s = r->sqrt_exact()) return Scalar(*s);
  if (auto s = (*r / Rational(2)).sqrt_exact()) return Scalar(Quartic::monomial(*s, 2));
  return std::nullopt;
}

Vector hyperplane_normal(const GreatFlat& s) {
  Matrix null = nullspace(s.basis(), s.ambient_dim());
  return null.front();
}

}  // namespace

GreatFlat::GreatFlat(Matrix basis) : basis_(std::move(basis)) {
  if (basis_.empty()) throw PreconditionError("GreatFlat: empty basis");
  ambient_ = basis_.front().size();
  for (const auto& v : basis_) {
    if (v.size() != ambient_) throw PreconditionError("GreatFlat: basis vectors differ in dimension");
  }
  if (rank(basis_) != basis_.size()) throw PreconditionError("GreatFlat: basis is dependent");
}

bool GreatFlat::contains(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw PreconditionError("GreatFlat::contains: dimension mismatch");
  Matrix m = basis_;
  m.emplace_back(v.begin(), v.end());
  return rank(m) == basis_.size();
}

GreatFlat great_flat_through(std::span<const Point> points, std::size_t d) {
  if (points.empty()) throw PreconditionError("great_flat_through: no points");
  require_on_sphere(points, "great_flat_through");
  const std::size_t dim = points.front().dim();
  if (d == 0 || d > dim) throw PreconditionError("great_flat_through: target dimension out of range");
  Matrix m;
  for (const auto& p : points) {
    if (p.dim() != dim) throw PreconditionError("great_flat_through: dimension mismatch");
    m.push_back(p.coords());
  }
  Matrix basis = reduced_row_echelon(std::move(m)).rows;
  basis.erase(std::remove_if(basis.begin(), basis.end(), [](const Vector& v) { return is_zero_vector(v); }),
              basis.end());
  if (basis.size() > d) throw PreconditionError("great_flat_through: points span more than the target dimension");
  for (std::size_t i = 0; i < dim && basis.size() < d; ++i) {
    basis.push_back(unit_vector(dim, i));
    if (rank(basis) != basis.size()) basis.pop_back();
  }
  return GreatFlat(std::move(basis));
}

GreatIntersection great_intersection(const GreatFlat& s, const GreatFlat& c) {
  const std::size_t dim = s.ambient_dim();
  if (c.ambient_dim() != dim) throw PreconditionError("great_intersection: dimension mismatch");
  if (s.dim() + 1 != dim) throw PreconditionError("great_intersection: S must be a hyperplane subspace");
  if (c.dim() != 2) throw PreconditionError("great_intersection: C must be two-dimensional");
  const Vector normal = hyperplane_normal(s);
  const Vector& c1 = c.basis()[0];
  const Vector& c2 = c.basis()[1];
  const Scalar t1 = dot(normal, c1);
  Vector dir = t1.is_zero() ? c1 : subtract(scale(c2, t1), scale(c1, dot(normal, c2)));

  GreatIntersection out{dir, {Point::infinity(dim), Point::infinity(dim)}, true};
  const Scalar norm = squared_norm(dir);
  if (auto root = exact_sqrt(norm)) {
    const Scalar inv = root->inverse();
    out.points = {Point(scale(dir, inv)), Point(scale(dir, -inv))};
    return out;
  }
  out.exact = false;
  Vector approx;
  const double len = std::sqrt(norm.to_double());
  for (const auto& x : dir) approx.push_back(Scalar::from_double(x.to_double() / len));
  Vector neg;
  for (const auto& x : approx) neg.push_back(-x);
  out.points = {Point(approx), Point(neg)};
  return out;
}

PolychromaticWitness max_colors_great(const ColoredConfig& config, SearchStats* stats) {
  config.validate();
  const std::size_t dim = config.n;
  if (dim < 2) throw PreconditionError("max_colors_great: ambient dimension must be at least 2");
  const auto pts = config.points();
  require_on_sphere(pts, "max_colors_great");
  const std::size_t m = dim - 1;
  if (pts.empty()) throw PreconditionError("max_colors_great: too few points");

  int best = 0;
  std::vector<std::size_t> best_subset;
  Vector best_normal;
  for_each_combination(pts.size(), m, [&](const std::vector<std::size_t>& idx) {
    Matrix rows;
    for (auto i : idx) rows.push_back(pts[i].coords());
    Matrix null = nullspace(rows, dim);
    if (null.size() != 1) return true;
    if (stats) ++stats->spheres_examined;
    const Vector& normal = null.front();
    std::vector<int> colors;
    for (const auto& e : config.entries) {
      if (dot(normal, e.point.coords()).is_zero()) colors.push_back(e.color);
    }
    std::sort(colors.begin(), colors.end());
    const int count = static_cast<int>(std::unique(colors.begin(), colors.end()) - colors.begin());
    if (count > best) {
      best = count;
      best_subset = idx;
      best_normal = normal;
    }
    return true;
  });
  if (best_subset.empty()) {
    // Fewer than n independent points: a completed great sphere through their span.
    best_subset = first_combination(std::min(m, pts.size()));
    Matrix rows;
    for (auto i : best_subset) rows.push_back(pts[i].coords());
    Matrix basis = reduced_row_echelon(rows).rows;
    basis.erase(std::remove_if(basis.begin(), basis.end(), [](const Vector& v) { return is_zero_vector(v); }),
                basis.end());
    for (std::size_t i = 0; i < dim && basis.size() < m; ++i) {
      basis.push_back(unit_vector(dim, i));
      if (rank(basis) != basis.size()) basis.pop_back();
    }
    best_normal = nullspace(basis, dim).front();
  }
  Matrix carrier_rows = nullspace(Matrix{best_normal}, dim);
  Flat carrier{Vector(dim, Scalar(0)), gram_schmidt(carrier_rows)};
  SubSphere sphere(std::move(carrier), Hypersphere::from_center(Vector(dim, Scalar(0)), Scalar(1)), dim - 2);
  PolychromaticWitness w{sphere, {}, {}, best_subset};
  for (const auto& e : config.entries) {
    if (dot(best_normal, e.point.coords()).is_zero()) w.points.push_back(e);
  }
  for (const auto& cp : w.points) w.colors.push_back(cp.color);
  std::sort(w.colors.begin(), w.colors.end());
  w.colors.erase(std::unique(w.colors.begin(), w.colors.end()), w.colors.end());
  return w;
}

}  // namespace polychrome
