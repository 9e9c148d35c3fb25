#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "polychrome/exactnum.hpp"
#include "polychrome/linalg.hpp"

namespace polychrome {

/// A point of R^n together with the point at infinity (R^n_inf ~ S^n).
class Point {
 public:
  /// Finite point. Rational and Quartic2 coordinates may mix (Rational is
  /// a subfield); mixing Float64 with exact coordinates throws.
  explicit Point(Vector coords);
  Point(std::initializer_list<Scalar> coords) : Point(Vector(coords)) {}
  static Point infinity(std::size_t dim);

  [[nodiscard]] bool is_infinity() const noexcept { return infinite_; }
  [[nodiscard]] bool is_finite() const noexcept { return !infinite_; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  /// Coordinates of a finite point (empty for infinity).
  [[nodiscard]] const Vector& coords() const noexcept { return coords_; }
  [[nodiscard]] const Scalar& operator[](std::size_t i) const { return coords_.at(i); }
  [[nodiscard]] std::optional<Backend> backend() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Point& a, const Point& b);

 private:
  Point() = default;
  std::size_t dim_ = 0;
  bool infinite_ = false;
  Vector coords_;
};

std::ostream& operator<<(std::ostream& os, const Point& p);

/// Deterministic structural order on points (infinity last); used for
/// canonical ordering of witness points.
bool point_less(const Point& a, const Point& b);

/// Generalized (n-1)-sphere {x : c<x,x> + <b,x> + a = 0}; c = 0 is an
/// extended hyperplane (contains infinity).
///
/// Coefficients are kept canonical: the first nonzero entry of
/// (c, b_1..b_n, a) is 1 for exact backends, and the tuple has unit norm
/// with a positive leading entry for Float64. Equal spheres therefore
/// compare equal with operator==.
class Hypersphere {
 public:
  Hypersphere(Scalar c, Vector b, Scalar a);

  static Hypersphere from_center(const Vector& center, const Scalar& radius_sq);
  /// Hyperplane <normal, x> = offset, extended by infinity.
  static Hypersphere hyperplane(const Vector& normal, const Scalar& offset);

  [[nodiscard]] std::size_t dim() const noexcept { return b_.size(); }
  [[nodiscard]] const Scalar& c() const noexcept { return c_; }
  [[nodiscard]] const Vector& b() const noexcept { return b_; }
  [[nodiscard]] const Scalar& a() const noexcept { return a_; }
  [[nodiscard]] bool is_flat() const { return c_.is_zero(); }
  /// Center and squared radius of a Euclidean sphere (c != 0).
  [[nodiscard]] Vector center() const;
  [[nodiscard]] Scalar radius_sq() const;

  /// Value of the defining quadratic at a finite point.
  [[nodiscard]] Scalar evaluate(std::span<const Scalar> x) const;
  /// Same with a precomputed <x,x>.
  [[nodiscard]] Scalar evaluate(std::span<const Scalar> x, const Scalar& norm_sq) const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Hypersphere& a, const Hypersphere& b);

 private:
  void canonicalize();

  Scalar c_;
  Vector b_;
  Scalar a_;
};

std::ostream& operator<<(std::ostream& os, const Hypersphere& s);

/// Affine flat base + span(basis); basis vectors are pairwise orthogonal.
struct Flat {
  Vector base;
  Matrix basis;

  [[nodiscard]] std::size_t dim() const noexcept { return basis.size(); }
  [[nodiscard]] std::size_t ambient_dim() const noexcept { return base.size(); }
  [[nodiscard]] bool contains(std::span<const Scalar> x) const;
};

/// A d-sphere of R^n_inf given as carrier ∩ surface, where the carrier is
/// an affine (d+1)-flat and the surface a generalized hypersphere. The
/// sphere contains infinity iff the surface is flat.
class SubSphere {
 public:
  SubSphere(Flat carrier, Hypersphere surface, std::size_t dim);

  [[nodiscard]] const Flat& carrier() const noexcept { return carrier_; }
  [[nodiscard]] const Hypersphere& surface() const noexcept { return surface_; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t ambient_dim() const noexcept { return surface_.dim(); }
  [[nodiscard]] bool is_flat() const { return surface_.is_flat(); }
  [[nodiscard]] bool contains(const Point& p) const;
  /// Equivalent hypersphere when the sphere has codimension one.
  [[nodiscard]] std::optional<Hypersphere> as_hypersphere() const;
  /// Canonical description: equal sub-spheres have equal keys.
  [[nodiscard]] std::string canonical_key() const;

  friend bool operator==(const SubSphere& a, const SubSphere& b) {
    return a.canonical_key() == b.canonical_key();
  }

 private:
  Flat carrier_;
  Hypersphere surface_;
  std::size_t dim_;
};

using AnySphere = std::variant<Hypersphere, SubSphere>;

bool sphere_contains(const AnySphere& sphere, const Point& p);
std::size_t sphere_dim(const AnySphere& sphere);

enum class Side { Inside, On, Outside, Positive, Negative };

const char* to_string(Side side);

bool on_sphere(const Point& p, const Hypersphere& s);
Side side(const Point& p, const Hypersphere& s);
/// True iff x and y lie in different components of S^n - S. A point on S
/// is a precondition violation.
bool separated(const Point& x, const Point& y, const Hypersphere& s);

/// The unique generalized (n-1)-sphere through n+1 points of R^n_inf.
Hypersphere sphere_through(std::span<const Point> points);
/// sphere_through when the points determine a unique sphere, else nullopt.
std::optional<Hypersphere> try_sphere_through(std::span<const Point> points);

/// Smallest-dimensional generalized sphere containing the points.
SubSphere smallest_sphere(std::span<const Point> points);

/// Lift x -> (1, x, <x,x>), infinity -> (0, 0, 1).
Vector lift(const Point& p);
/// n+2 points of R^n_inf lie on a common generalized (n-1)-sphere
/// (including degenerate lower-dimensional cases).
bool cospherical(std::span<const Point> points);

/// Four distinct points lie on one circle or one extended line.
bool concyclic(const Point& p1, const Point& p2, const Point& p3, const Point& p4);
bool concyclic(std::span<const Point> four);

struct Complex {
  Scalar re;
  Scalar im;
};

/// [z1,z2:z3,z4] = (z1-z3)(z2-z4) / ((z2-z3)(z1-z4)) in the plane; factors
/// containing infinity cancel. nullopt encodes the value infinity.
std::optional<Complex> cross_ratio(const Point& z1, const Point& z2, const Point& z3, const Point& z4);

/// Line through the origin of R^2 with an exactly unit direction.
class OriginLine {
 public:
  explicit OriginLine(Vector direction);
  static OriginLine x_axis() { return OriginLine({Scalar(1), Scalar(0)}); }
  static OriginLine y_axis() { return OriginLine({Scalar(0), Scalar(1)}); }
  [[nodiscard]] const Vector& direction() const noexcept { return dir_; }
  [[nodiscard]] bool contains(const Point& p) const;

 private:
  Vector dir_;
};

/// +1 iff w > 0 or (w = 0 and v >= 0).
int plane_sign(const Scalar& v, const Scalar& w);

/// sign(v,w) * |(v,w)| for a finite point on the line.
Scalar signed_norm(const Point& p, const OriginLine& line);

/// x x' == y y' exactly; all inputs nonzero.
bool power_condition(const Scalar& x, const Scalar& x2, const Scalar& y, const Scalar& y2);

/// Throws PreconditionError when two of the points coincide.
void require_distinct(std::span<const Point> points, const char* what);

}  // namespace polychrome
