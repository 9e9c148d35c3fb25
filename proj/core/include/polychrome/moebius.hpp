#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "polychrome/geom.hpp"

namespace polychrome {

/// x -> center + r2 (x - center) / |x - center|^2; swaps center and infinity.
struct SphereInversion {
  Point center;
  Scalar radius_sq;
};

/// Mirror in the hyperplane <normal, x> = offset; fixes infinity.
struct HyperplaneReflection {
  Vector normal;
  Scalar offset;
};

using PrimitiveMap = std::variant<SphereInversion, HyperplaneReflection>;

/// Validates a primitive (finite center, r2 > 0, nonzero normal) and
/// returns its ambient dimension.
std::size_t primitive_dim(const PrimitiveMap& f);

Point apply(const PrimitiveMap& f, const Point& p);
Hypersphere image_sphere(const PrimitiveMap& f, const Hypersphere& s);

/// Finite composition of inversions and reflections; factors()[0] acts first.
class MoebiusMap {
 public:
  explicit MoebiusMap(std::size_t dim, std::vector<PrimitiveMap> factors = {});
  static MoebiusMap identity(std::size_t dim) { return MoebiusMap(dim); }

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] const std::vector<PrimitiveMap>& factors() const noexcept { return factors_; }
  [[nodiscard]] bool is_identity() const noexcept { return factors_.empty(); }

  [[nodiscard]] Point apply(const Point& p) const;
  [[nodiscard]] Hypersphere image_sphere(const Hypersphere& s) const;

  /// Appends a factor applied after the current ones.
  void then(PrimitiveMap f);

 private:
  std::size_t dim_;
  std::vector<PrimitiveMap> factors_;
};

/// x -> f(g(x)).
MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g);
MoebiusMap inverse(const MoebiusMap& f);

/// x -> x + v as two parallel reflections.
MoebiusMap translation(const Vector& v);
/// x -> s x (s > 0) as two inversions centered at the origin.
MoebiusMap dilation(std::size_t dim, const Scalar& s);

/// A map sending p to the origin and q to infinity; with r it also sends r
/// to (1, 0, ..., 0). In the plane the result is orientation preserving,
/// i.e. the complex map z -> ((z-p)/(z-q)) ((r-q)/(r-p)). Throws NotExact
/// when the required similarity needs an irrational scale.
MoebiusMap normalize(const Point& p, const Point& q, const std::optional<Point>& r = std::nullopt);

}  // namespace polychrome
