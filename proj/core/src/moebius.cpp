#include "polychrome/moebius.hpp"

#include <cmath>

#include "polychrome/error.hpp"

namespace polychrome {

namespace {

void require_dim(std::size_t a, std::size_t b) {
  if (a != b) throw PreconditionError("moebius: dimension mismatch");
}

std::optional<Scalar> exact_sqrt(const Scalar& x) {
  if (x.is_float()) return Scalar::from_double(std::sqrt(x.to_double()));
  auto q = x.rational_value();
  if (!q) return std::nullopt;
  auto root = q->sqrt_exact();
  if (!root) return std::nullopt;
  return Scalar(*root);
}

Vector unit(std::size_t n, std::size_t i) {
  Vector e(n, Scalar(0));
  e[i] = Scalar(1);
  return e;
}

}  // namespace

std::size_t primitive_dim(const PrimitiveMap& f) {
  if (const auto* inv = std::get_if<SphereInversion>(&f)) {
    if (inv->center.is_infinity()) throw PreconditionError("inversion: center must be finite");
    if (inv->radius_sq.sign() <= 0) throw PreconditionError("inversion: radius_sq must be positive");
    return inv->center.dim();
  }
  const auto& ref = std::get<HyperplaneReflection>(f);
  if (ref.normal.empty() || is_zero_vector(ref.normal)) throw PreconditionError("reflection: zero normal");
  return ref.normal.size();
}

Point apply(const PrimitiveMap& f, const Point& p) {
  require_dim(primitive_dim(f), p.dim());
  if (const auto* inv = std::get_if<SphereInversion>(&f)) {
    if (p.is_infinity()) return inv->center;
    if (p == inv->center) return Point::infinity(p.dim());
    const Vector d = subtract(p.coords(), inv->center.coords());
    const Scalar factor = inv->radius_sq / squared_norm(d);
    return Point(add(inv->center.coords(), scale(d, factor)));
  }
  const auto& ref = std::get<HyperplaneReflection>(f);
  if (p.is_infinity()) return p;
  const Scalar t = Scalar(2) * (dot(ref.normal, p.coords()) - ref.offset) / squared_norm(ref.normal);
  if (t.is_zero()) return p;
  return Point(subtract(p.coords(), scale(ref.normal, t)));
}

Hypersphere image_sphere(const PrimitiveMap& f, const Hypersphere& s) {
  require_dim(primitive_dim(f), s.dim());
  const std::size_t n = s.dim();
  if (const auto* inv = std::get_if<SphereInversion>(&f)) {
    // Substitute x = center + r2 u/|u|^2, u = y - center, and clear |u|^2.
    const Vector& ac = inv->center.coords();
    const Scalar& r2 = inv->radius_sq;
    const Scalar ac2 = squared_norm(ac);
    const Scalar k = s.evaluate(ac, ac2);
    Vector w = add(scale(ac, Scalar(2) * s.c()), s.b());
    Vector b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = r2 * w[i] - Scalar(2) * k * ac[i];
    Scalar a = k * ac2 - r2 * dot(w, ac) + s.c() * r2 * r2;
    return {k, std::move(b), std::move(a)};
  }
  // R(y) = L y + t with L = I - 2 n n^T/|n|^2 and t = 2 offset n/|n|^2.
  const auto& ref = std::get<HyperplaneReflection>(f);
  const Scalar nn = squared_norm(ref.normal);
  auto apply_linear = [&](const Vector& v) {
    const Scalar coeff = Scalar(2) * dot(ref.normal, v) / nn;
    return subtract(v, scale(ref.normal, coeff));
  };
  const Vector t = scale(ref.normal, Scalar(2) * ref.offset / nn);
  Vector b = add(scale(apply_linear(t), Scalar(2) * s.c()), apply_linear(s.b()));
  Scalar a = s.c() * squared_norm(t) + dot(s.b(), t) + s.a();
  return {s.c(), std::move(b), std::move(a)};
}

MoebiusMap::MoebiusMap(std::size_t dim, std::vector<PrimitiveMap> factors) : dim_(dim), factors_(std::move(factors)) {
  if (dim_ == 0) throw PreconditionError("moebius: dimension must be positive");
  for (const auto& f : factors_) require_dim(primitive_dim(f), dim_);
}

Point MoebiusMap::apply(const Point& p) const {
  require_dim(p.dim(), dim_);
  Point x = p;
  for (const auto& f : factors_) x = polychrome::apply(f, x);
  return x;
}

Hypersphere MoebiusMap::image_sphere(const Hypersphere& s) const {
  require_dim(s.dim(), dim_);
  Hypersphere x = s;
  for (const auto& f : factors_) x = polychrome::image_sphere(f, x);
  return x;
}

void MoebiusMap::then(PrimitiveMap f) {
  require_dim(primitive_dim(f), dim_);
  factors_.push_back(std::move(f));
}

MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g) {
  require_dim(f.dim(), g.dim());
  std::vector<PrimitiveMap> factors = g.factors();
  factors.insert(factors.end(), f.factors().begin(), f.factors().end());
  return MoebiusMap(f.dim(), std::move(factors));
}

MoebiusMap inverse(const MoebiusMap& f) {
  return MoebiusMap(f.dim(), std::vector<PrimitiveMap>(f.factors().rbegin(), f.factors().rend()));
}

MoebiusMap translation(const Vector& v) {
  MoebiusMap m(v.size());
  if (is_zero_vector(v)) return m;
  m.then(HyperplaneReflection{v, Scalar(0)});
  m.then(HyperplaneReflection{v, squared_norm(v) / Scalar(2)});
  return m;
}

MoebiusMap dilation(std::size_t dim, const Scalar& s) {
  if (s.sign() <= 0) throw PreconditionError("dilation: factor must be positive");
  MoebiusMap m(dim);
  if (s == Scalar(1)) return m;
  const Point origin(Vector(dim, Scalar(0)));
  m.then(SphereInversion{origin, Scalar(1)});
  m.then(SphereInversion{origin, s});
  return m;
}

MoebiusMap normalize(const Point& p, const Point& q, const std::optional<Point>& r) {
  const std::size_t n = p.dim();
  require_dim(q.dim(), n);
  if (r) {
    require_dim(r->dim(), n);
    const Point three[] = {p, q, *r};
    require_distinct(three, "normalize");
  } else if (p == q) {
    throw PreconditionError("normalize: duplicate points");
  }

  MoebiusMap m(n);
  if (q.is_finite()) m.then(SphereInversion{q, Scalar(1)});
  const Point p1 = m.apply(p);
  m = compose(translation(scale(p1.coords(), Scalar(-1))), m);
  if (!r) return m;

  if (n == 2 && m.factors().size() % 2 == 1) m.then(HyperplaneReflection{{Scalar(0), Scalar(1)}, Scalar(0)});
  const Point r2 = m.apply(*r);
  const Scalar norm_sq = squared_norm(r2.coords());
  const auto norm = exact_sqrt(norm_sq);
  if (!norm) throw NotExact("normalize: the image of r has irrational length");

  if (n == 2) {
    // Multiply by w = 1/r2: rotate by u = w/|w| (two reflections), then scale by |w|.
    const Scalar& x = r2[0];
    const Scalar& y = r2[1];
    const Scalar ux = x / *norm;
    const Scalar uy = -y / *norm;
    if (!(ux == Scalar(1) && uy.is_zero())) {
      Vector dir = (ux == Scalar(-1) && uy.is_zero()) ? Vector{Scalar(0), Scalar(1)} : Vector{ux + Scalar(1), uy};
      m.then(HyperplaneReflection{{Scalar(0), Scalar(1)}, Scalar(0)});
      m.then(HyperplaneReflection{{-dir[1], dir[0]}, Scalar(0)});
    }
    return compose(dilation(n, Scalar(1) / *norm), m);
  }

  m = compose(dilation(n, Scalar(1) / *norm), m);
  const Vector u = scale(r2.coords(), Scalar(1) / *norm);
  const Vector axis = subtract(u, unit(n, 0));
  if (!is_zero_vector(axis)) m.then(HyperplaneReflection{axis, Scalar(0)});
  return m;
}

}  // namespace polychrome
