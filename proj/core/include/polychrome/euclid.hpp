#pragma once

#include <array>

#include "polychrome/chromatic.hpp"

namespace polychrome {

/// Linear subspace of R^{n+1}; its intersection with S^n is a great
/// (d-1)-sphere.
class GreatFlat {
 public:
  /// Throws unless the basis vectors are independent and share a dimension.
  explicit GreatFlat(Matrix basis);

  [[nodiscard]] const Matrix& basis() const noexcept { return basis_; }
  [[nodiscard]] std::size_t dim() const noexcept { return basis_.size(); }
  [[nodiscard]] std::size_t ambient_dim() const noexcept { return ambient_; }
  [[nodiscard]] bool contains(std::span<const Scalar> v) const;

 private:
  Matrix basis_;
  std::size_t ambient_;
};

/// Span of points of S^n, completed to dimension d with standard basis
/// vectors in index order. Throws when the span is larger than d.
GreatFlat great_flat_through(std::span<const Point> points, std::size_t d);

struct GreatIntersection {
  Vector direction;              // exact nonzero vector of S ∩ C
  std::array<Point, 2> points;   // the antipodal pair on the sphere
  bool exact = true;             // false when points are Float64 approximations
};

/// S a hyperplane subspace, C two-dimensional, same ambient space.
GreatIntersection great_intersection(const GreatFlat& s, const GreatFlat& c);

/// Great (n-1)-sphere spanned by n config points with the most colors on
/// all config points; lexicographic tie-break. The config holds points of
/// S^n in R^{n+1} (config.n = n + 1).
PolychromaticWitness max_colors_great(const ColoredConfig& config, SearchStats* stats = nullptr);

}  // namespace polychrome
