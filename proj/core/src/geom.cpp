#include "polychrome/geom.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "polychrome/error.hpp"

namespace polychrome {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw PreconditionError(std::string(what) + ": dimension mismatch");
}

// a*b skipping exact zeros; keeps sparse quartic products cheap.
Scalar mul(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && a.as_rational().is_zero()) return b.is_float() ? Scalar::from_double(0.0) : Scalar(0);
  if (b.is_rational() && b.as_rational().is_zero()) return a.is_float() ? Scalar::from_double(0.0) : Scalar(0);
  return a * b;
}

Scalar det3(const Vector& r0, const Vector& r1, const Vector& r2, std::size_t c0, std::size_t c1, std::size_t c2) {
  Scalar d = mul(r0[c0], mul(r1[c1], r2[c2]) - mul(r1[c2], r2[c1]));
  d -= mul(r0[c1], mul(r1[c0], r2[c2]) - mul(r1[c2], r2[c0]));
  d += mul(r0[c2], mul(r1[c0], r2[c1]) - mul(r1[c1], r2[c0]));
  return d;
}

// Row (|p|^2, p, 1) of the sphere-through system; infinity gives (1, 0, ..., 0).
Vector incidence_row(const Point& p) {
  const std::size_t n = p.dim();
  Vector row(n + 2, Scalar(0));
  if (p.is_infinity()) {
    row[0] = Scalar(1);
    return row;
  }
  row[0] = squared_norm(p.coords());
  for (std::size_t i = 0; i < n; ++i) row[i + 1] = p[i];
  row[n + 1] = Scalar(1);
  return row;
}

std::optional<Hypersphere> make_sphere(Scalar c, Vector b, Scalar a) {
  Scalar disc = squared_norm(b) - Scalar(4) * c * a;
  if (disc.sign() <= 0) return std::nullopt;
  return Hypersphere(std::move(c), std::move(b), std::move(a));
}

std::string join_key(const Vector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i].to_string();
  }
  return out + "]";
}

std::string span_key(const Matrix& basis) {
  if (basis.empty()) return "{}";
  const RowEchelon e = reduced_row_echelon(basis);
  std::string out = "{";
  for (std::size_t i = 0; i < e.pivots.size(); ++i) out += join_key(e.rows[i]);
  return out + "}";
}

Vector projection_onto(std::span<const Scalar> v, const Matrix& orthogonal_basis) {
  Vector r(v.size(), Scalar(0));
  for (const auto& b : orthogonal_basis) {
    const Scalar coeff = dot(v, b) / squared_norm(b);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += coeff * b[i];
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------- Point

Point::Point(Vector coords) : dim_(coords.size()), coords_(std::move(coords)) {
  if (dim_ == 0) throw PreconditionError("point: dimension must be positive");
  bool has_float = false;
  bool has_exact = false;
  for (const auto& x : coords_) {
    if (x.is_float()) {
      has_float = true;
    } else {
      has_exact = true;
    }
  }
  if (has_float && has_exact) throw BackendMismatch("point coordinates mix Float64 with exact scalars");
}

Point Point::infinity(std::size_t dim) {
  if (dim == 0) throw PreconditionError("point: dimension must be positive");
  Point p;
  p.dim_ = dim;
  p.infinite_ = true;
  return p;
}

std::optional<Backend> Point::backend() const {
  if (infinite_) return std::nullopt;
  Backend b = Backend::Rational;
  for (const auto& x : coords_) {
    if (x.is_float()) return Backend::Float64;
    if (x.is_quartic()) b = Backend::Quartic2;
  }
  return b;
}

std::string Point::to_string() const {
  if (infinite_) return "inf";
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ", ";
    out += coords_[i].to_string();
  }
  return out + ")";
}

bool operator==(const Point& a, const Point& b) {
  if (a.dim_ != b.dim_ || a.infinite_ != b.infinite_) return false;
  if (a.infinite_) return true;
  for (std::size_t i = 0; i < a.dim_; ++i) {
    if (!(a.coords_[i] == b.coords_[i])) return false;
  }
  return true;
}

std::ostream& operator<<(std::ostream& os, const Point& p) { return os << p.to_string(); }

bool point_less(const Point& a, const Point& b) {
  if (a.is_infinity() || b.is_infinity()) return !a.is_infinity() && b.is_infinity();
  const std::size_t n = std::min(a.dim(), b.dim());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = compare(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.dim() < b.dim();
}

void require_distinct(std::span<const Point> points, const char* what) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) throw PreconditionError(std::string(what) + ": duplicate points");
    }
  }
}

// ---------------------------------------------------------------- Hypersphere

Hypersphere::Hypersphere(Scalar c, Vector b, Scalar a) : c_(std::move(c)), b_(std::move(b)), a_(std::move(a)) {
  if (b_.empty()) throw PreconditionError("hypersphere: dimension must be positive");
  if ((squared_norm(b_) - Scalar(4) * c_ * a_).sign() <= 0) {
    throw PreconditionError("hypersphere: degenerate coefficients (<b,b> - 4ca <= 0)");
  }
  canonicalize();
}

void Hypersphere::canonicalize() {
  const bool floating = c_.is_float() || a_.is_float() ||
                        std::any_of(b_.begin(), b_.end(), [](const Scalar& x) { return x.is_float(); });
  const Scalar* lead = nullptr;
  if (!c_.is_zero()) {
    lead = &c_;
  } else {
    for (const auto& x : b_) {
      if (!x.is_zero()) {
        lead = &x;
        break;
      }
    }
  }
  if (lead == nullptr) throw PreconditionError("hypersphere: all coefficients vanish");
  if (floating) {
    double norm = c_.to_double() * c_.to_double() + a_.to_double() * a_.to_double();
    for (const auto& x : b_) norm += x.to_double() * x.to_double();
    norm = std::sqrt(norm);
    if (lead->sign() < 0) norm = -norm;
    auto f = [norm](const Scalar& x) { return Scalar::from_double(x.to_double() / norm); };
    c_ = f(c_);
    a_ = f(a_);
    for (auto& x : b_) x = f(x);
    return;
  }
  if (lead->is_rational() && lead->as_rational() == Rational(1)) return;
  const Scalar inv = lead->inverse();
  c_ = mul(c_, inv);
  a_ = mul(a_, inv);
  for (auto& x : b_) x = mul(x, inv);
}

Hypersphere Hypersphere::from_center(const Vector& center, const Scalar& radius_sq) {
  if (radius_sq.sign() <= 0) throw PreconditionError("hypersphere: radius_sq must be positive");
  Vector b = scale(center, Scalar(-2));
  return {Scalar(1), std::move(b), squared_norm(center) - radius_sq};
}

Hypersphere Hypersphere::hyperplane(const Vector& normal, const Scalar& offset) {
  if (is_zero_vector(normal)) throw PreconditionError("hyperplane: zero normal");
  return {Scalar(0), normal, -offset};
}

Vector Hypersphere::center() const {
  if (is_flat()) throw PreconditionError("hypersphere: an extended hyperplane has no center");
  return scale(b_, Scalar(-1) / (Scalar(2) * c_));
}

Scalar Hypersphere::radius_sq() const {
  if (is_flat()) throw PreconditionError("hypersphere: an extended hyperplane has no radius");
  return (squared_norm(b_) - Scalar(4) * c_ * a_) / (Scalar(4) * c_ * c_);
}

Scalar Hypersphere::evaluate(std::span<const Scalar> x) const {
  require_same_dim(x.size(), b_.size(), "evaluate");
  return evaluate(x, c_.is_zero() ? Scalar(0) : squared_norm(x));
}

Scalar Hypersphere::evaluate(std::span<const Scalar> x, const Scalar& norm_sq) const {
  Scalar v = a_;
  if (!c_.is_zero()) v += mul(c_, norm_sq);
  for (std::size_t i = 0; i < b_.size(); ++i) {
    if (b_[i].is_zero()) continue;
    v += mul(b_[i], x[i]);
  }
  return v;
}

std::string Hypersphere::to_string() const {
  return "sphere{c=" + c_.to_string() + ", b=" + join_key(b_) + ", a=" + a_.to_string() + "}";
}

bool operator==(const Hypersphere& a, const Hypersphere& b) {
  if (a.b_.size() != b.b_.size() || !(a.c_ == b.c_) || !(a.a_ == b.a_)) return false;
  for (std::size_t i = 0; i < a.b_.size(); ++i) {
    if (!(a.b_[i] == b.b_[i])) return false;
  }
  return true;
}

std::ostream& operator<<(std::ostream& os, const Hypersphere& s) { return os << s.to_string(); }

// ---------------------------------------------------------------- predicates

const char* to_string(Side side) {
  switch (side) {
    case Side::Inside: return "inside";
    case Side::On: return "on";
    case Side::Outside: return "outside";
    case Side::Positive: return "positive";
    case Side::Negative: return "negative";
  }
  return "?";
}

bool on_sphere(const Point& p, const Hypersphere& s) {
  require_same_dim(p.dim(), s.dim(), "on_sphere");
  if (p.is_infinity()) return s.is_flat();
  return s.evaluate(p.coords()).is_zero();
}

Side side(const Point& p, const Hypersphere& s) {
  require_same_dim(p.dim(), s.dim(), "side");
  if (p.is_infinity()) return s.is_flat() ? Side::On : Side::Outside;
  const int sg = s.evaluate(p.coords()).sign();
  if (sg == 0) return Side::On;
  if (s.is_flat()) return sg > 0 ? Side::Positive : Side::Negative;
  return sg > 0 ? Side::Outside : Side::Inside;
}

bool separated(const Point& x, const Point& y, const Hypersphere& s) {
  const Side sx = side(x, s);
  const Side sy = side(y, s);
  if (sx == Side::On || sy == Side::On) throw PreconditionError("separated: a point lies on the sphere");
  return sx != sy;
}

std::optional<Hypersphere> try_sphere_through(std::span<const Point> points) {
  if (points.empty()) throw PreconditionError("sphere_through: no points");
  const std::size_t n = points.front().dim();
  if (points.size() != n + 1) throw PreconditionError("sphere_through: needs exactly n+1 points");
  std::size_t infinite = 0;
  for (const auto& p : points) {
    require_same_dim(p.dim(), n, "sphere_through");
    if (p.is_infinity()) ++infinite;
  }
  if (infinite > 1) throw PreconditionError("sphere_through: duplicate points");
  require_distinct(points, "sphere_through");

  if (n == 2) {
    // Cofactors of det[(|x|^2, x, y, 1); rows] = 0 along the first row.
    const Vector r0 = incidence_row(points[0]);
    const Vector r1 = incidence_row(points[1]);
    const Vector r2 = incidence_row(points[2]);
    Scalar c = det3(r0, r1, r2, 1, 2, 3);
    Scalar bx = -det3(r0, r1, r2, 0, 2, 3);
    Scalar by = det3(r0, r1, r2, 0, 1, 3);
    Scalar a = -det3(r0, r1, r2, 0, 1, 2);
    return make_sphere(std::move(c), {std::move(bx), std::move(by)}, std::move(a));
  }

  Matrix m;
  m.reserve(points.size());
  for (const auto& p : points) m.push_back(incidence_row(p));
  Matrix null = nullspace(m, n + 2);
  if (null.size() != 1) return std::nullopt;
  Vector& v = null.front();
  Vector b(v.begin() + 1, v.begin() + 1 + static_cast<std::ptrdiff_t>(n));
  return make_sphere(std::move(v[0]), std::move(b), std::move(v[n + 1]));
}

Hypersphere sphere_through(std::span<const Point> points) {
  auto s = try_sphere_through(points);
  if (!s) throw PreconditionError("sphere_through: points do not determine a unique sphere");
  return *std::move(s);
}

Vector lift(const Point& p) {
  Vector row(p.dim() + 2, Scalar(0));
  if (p.is_infinity()) {
    row[p.dim() + 1] = Scalar(1);
    return row;
  }
  row[0] = Scalar(1);
  for (std::size_t i = 0; i < p.dim(); ++i) row[i + 1] = p[i];
  row[p.dim() + 1] = squared_norm(p.coords());
  return row;
}

bool cospherical(std::span<const Point> points) {
  if (points.empty()) return true;
  const std::size_t n = points.front().dim();
  Matrix m;
  for (const auto& p : points) {
    require_same_dim(p.dim(), n, "cospherical");
    m.push_back(lift(p));
  }
  return rank(m) <= n + 1;
}

bool concyclic(std::span<const Point> four) {
  if (four.size() != 4) throw PreconditionError("concyclic: needs exactly four points");
  const std::size_t n = four.front().dim();
  for (const auto& p : four) require_same_dim(p.dim(), n, "concyclic");
  require_distinct(four, "concyclic");
  Matrix m;
  m.reserve(4);
  for (const auto& p : four) m.push_back(lift(p));
  return rank(m) <= 3;
}

bool concyclic(const Point& p1, const Point& p2, const Point& p3, const Point& p4) {
  const Point four[] = {p1, p2, p3, p4};
  return concyclic(four);
}

// ---------------------------------------------------------------- cross ratio

namespace {

Complex to_complex(const Point& p) { return {p[0], p[1]}; }
Complex csub(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex cmul(const Complex& a, const Complex& b) {
  return {mul(a.re, b.re) - mul(a.im, b.im), mul(a.re, b.im) + mul(a.im, b.re)};
}
std::optional<Complex> cdiv(const Complex& a, const Complex& b) {
  const Scalar den = mul(b.re, b.re) + mul(b.im, b.im);
  if (den.is_zero()) return std::nullopt;
  const Complex num = cmul(a, {b.re, -b.im});
  return Complex{num.re / den, num.im / den};
}

}  // namespace

std::optional<Complex> cross_ratio(const Point& z1, const Point& z2, const Point& z3, const Point& z4) {
  const Point all[] = {z1, z2, z3, z4};
  for (const auto& p : all) {
    if (p.dim() != 2) throw PreconditionError("cross_ratio: points must lie in the plane");
  }
  require_distinct(all, "cross_ratio");
  if (z1.is_infinity()) {
    return cdiv(csub(to_complex(z2), to_complex(z4)), csub(to_complex(z2), to_complex(z3)));
  }
  if (z2.is_infinity()) {
    return cdiv(csub(to_complex(z1), to_complex(z3)), csub(to_complex(z1), to_complex(z4)));
  }
  if (z3.is_infinity()) {
    return cdiv(csub(to_complex(z2), to_complex(z4)), csub(to_complex(z1), to_complex(z4)));
  }
  if (z4.is_infinity()) {
    return cdiv(csub(to_complex(z1), to_complex(z3)), csub(to_complex(z2), to_complex(z3)));
  }
  const Complex a = to_complex(z1), b = to_complex(z2), c = to_complex(z3), d = to_complex(z4);
  return cdiv(cmul(csub(a, c), csub(b, d)), cmul(csub(b, c), csub(a, d)));
}

// ---------------------------------------------------------------- flats and sub-spheres

bool Flat::contains(std::span<const Scalar> x) const {
  require_same_dim(x.size(), base.size(), "flat");
  return is_zero_vector(orthogonal_residual(subtract(x, base), basis));
}

SubSphere::SubSphere(Flat carrier, Hypersphere surface, std::size_t dim)
    : carrier_(std::move(carrier)), surface_(std::move(surface)), dim_(dim) {
  require_same_dim(carrier_.ambient_dim(), surface_.dim(), "subsphere");
  if (carrier_.dim() != dim_ + 1) throw PreconditionError("subsphere: carrier must have dimension d+1");
}

bool SubSphere::contains(const Point& p) const {
  require_same_dim(p.dim(), ambient_dim(), "subsphere");
  if (p.is_infinity()) return surface_.is_flat();
  return carrier_.contains(p.coords()) && on_sphere(p, surface_);
}

std::optional<Hypersphere> SubSphere::as_hypersphere() const {
  if (dim_ + 1 == ambient_dim()) return surface_;
  return std::nullopt;
}

std::string SubSphere::canonical_key() const {
  const std::size_t n = ambient_dim();
  std::ostringstream key;
  key << "d=" << dim_ << ";n=" << n << ';';
  if (!surface_.is_flat()) {
    // Center of the sub-sphere is the projection of the surface center.
    const Vector sc = surface_.center();
    const Vector offset = subtract(sc, carrier_.base);
    const Vector proj = projection_onto(offset, carrier_.basis);
    const Vector center = add(carrier_.base, proj);
    const Scalar r2 = surface_.radius_sq() - squared_norm(subtract(sc, center));
    key << "round;" << span_key(carrier_.basis) << ';' << join_key(center) << ';' << r2.to_string();
    return key.str();
  }
  // Directions of carrier ∩ hyperplane, and its point closest to the origin.
  const Vector& normal = surface_.b();
  Matrix row(1, Vector());
  for (const auto& v : carrier_.basis) row[0].push_back(dot(normal, v));
  Matrix coeffs = nullspace(row, carrier_.basis.size());
  Matrix dirs;
  for (const auto& cf : coeffs) {
    Vector d(n, Scalar(0));
    for (std::size_t j = 0; j < cf.size(); ++j) {
      if (cf[j].is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i) d[i] += cf[j] * carrier_.basis[j][i];
    }
    dirs.push_back(std::move(d));
  }
  // base + sum t_j B_j on the hyperplane: <normal, base> + sum t_j <normal, B_j> + a = 0.
  Vector point = carrier_.base;
  const Scalar residual = dot(normal, carrier_.base) + surface_.a();
  if (!residual.is_zero()) {
    for (std::size_t j = 0; j < carrier_.basis.size(); ++j) {
      if (row[0][j].is_zero()) continue;
      const Scalar t = -residual / row[0][j];
      for (std::size_t i = 0; i < n; ++i) point[i] += t * carrier_.basis[j][i];
      break;
    }
  }
  const Matrix ortho = gram_schmidt(dirs);
  const Vector foot = subtract(point, projection_onto(point, ortho));
  key << "flat;" << span_key(dirs) << ';' << join_key(foot);
  return key.str();
}

bool sphere_contains(const AnySphere& sphere, const Point& p) {
  return std::visit(
      [&p](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Hypersphere>) {
          return on_sphere(p, s);
        } else {
          return s.contains(p);
        }
      },
      sphere);
}

std::size_t sphere_dim(const AnySphere& sphere) {
  return std::visit(
      [](const auto& s) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Hypersphere>) {
          return s.dim() - 1;
        } else {
          return s.dim();
        }
      },
      sphere);
}

SubSphere smallest_sphere(std::span<const Point> points) {
  if (points.size() < 2) throw PreconditionError("smallest_sphere: needs at least two points");
  const std::size_t n = points.front().dim();
  for (const auto& p : points) require_same_dim(p.dim(), n, "smallest_sphere");
  require_distinct(points, "smallest_sphere");

  std::vector<const Point*> finite;
  bool has_infinity = false;
  for (const auto& p : points) {
    if (p.is_infinity()) {
      has_infinity = true;
    } else {
      finite.push_back(&p);
    }
  }
  const Vector& base = finite.front()->coords();
  Matrix diffs;
  for (std::size_t i = 1; i < finite.size(); ++i) diffs.push_back(subtract(finite[i]->coords(), base));
  Matrix hull = gram_schmidt(diffs);
  const std::size_t m = hull.size();

  if (!has_infinity) {
    // Center base + sum l_j v_j with 2<u, w_i> = |w_i|^2 for every offset w_i.
    if (m > 0) {
      Matrix lhs;
      Vector rhs;
      for (const auto& w : diffs) {
        Vector row;
        for (const auto& v : hull) row.push_back(Scalar(2) * dot(v, w));
        lhs.push_back(std::move(row));
        rhs.push_back(squared_norm(w));
      }
      if (auto lambda = solve(lhs, rhs)) {
        Vector u(n, Scalar(0));
        for (std::size_t j = 0; j < m; ++j) {
          for (std::size_t i = 0; i < n; ++i) u[i] += (*lambda)[j] * hull[j][i];
        }
        const Scalar r2 = squared_norm(u);
        Hypersphere surface = Hypersphere::from_center(add(base, u), r2);
        return SubSphere(Flat{base, std::move(hull)}, std::move(surface), m - 1);
      }
    }
  }
  if (m >= n) throw PreconditionError("smallest_sphere: the points span the whole space");
  // Extended m-flat: carrier adds one orthogonal direction, surface is the
  // hyperplane through the flat normal to that direction.
  Vector normal;
  for (std::size_t i = 0; i < n && normal.empty(); ++i) {
    Vector e(n, Scalar(0));
    e[i] = Scalar(1);
    Vector r = orthogonal_residual(e, hull);
    if (!is_zero_vector(r)) normal = std::move(r);
  }
  Hypersphere surface = Hypersphere::hyperplane(normal, dot(normal, base));
  hull.push_back(std::move(normal));
  return SubSphere(Flat{base, std::move(hull)}, std::move(surface), m);
}

// ---------------------------------------------------------------- signed norm

int plane_sign(const Scalar& v, const Scalar& w) {
  const int sw = w.sign();
  if (sw != 0) return sw;
  return v.sign() >= 0 ? 1 : -1;
}

OriginLine::OriginLine(Vector direction) : dir_(std::move(direction)) {
  if (dir_.size() != 2) throw PreconditionError("origin line: direction must be planar");
  if (squared_norm(dir_).is_float() || !(squared_norm(dir_) == Scalar(1))) {
    throw PreconditionError("origin line: direction must be an exact unit vector");
  }
  if (plane_sign(dir_[0], dir_[1]) < 0) dir_ = scale(dir_, Scalar(-1));
}

bool OriginLine::contains(const Point& p) const {
  if (p.dim() != 2) throw PreconditionError("origin line: point must be planar");
  if (p.is_infinity()) return true;
  return (mul(dir_[0], p[1]) - mul(dir_[1], p[0])).is_zero();
}

Scalar signed_norm(const Point& p, const OriginLine& line) {
  if (p.is_infinity()) throw PreconditionError("signed_norm: point must be finite");
  if (!line.contains(p)) throw PreconditionError("signed_norm: point is not on the line");
  // p = t d with sign(d) = +1, so N(p) = t.
  return dot(p.coords(), line.direction());
}

bool power_condition(const Scalar& x, const Scalar& x2, const Scalar& y, const Scalar& y2) {
  if (x.is_zero() || x2.is_zero() || y.is_zero() || y2.is_zero()) {
    throw PreconditionError("power_condition: inputs must be nonzero");
  }
  return x * x2 == y * y2;
}

}  // namespace polychrome
