#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polychrome/geom.hpp"

namespace polychrome {

/// 0 -> 1, infinity -> 2, R^{i-2} - R^{i-3} -> i; k = n + 2.
struct FlagInversive {
  std::size_t n;
};

/// Singleton classes {points[i]} -> i + 1 and everything else -> k, where
/// points.size() == k - 1. With euclidean set the domain is S^n in R^{n+1}
/// and the points must have every n+1 linearly independent; otherwise the
/// domain is R^n_inf and no n+2 of them may be cospherical.
struct GenericPoints {
  std::size_t n;
  std::size_t k;
  std::vector<Point> points;
  bool euclidean = false;
};

/// Five colors on the coordinate axes of R^2_inf by the class of the norm:
/// Y-axis 2^(1/4)Q* -> 2, 2^(-1/4)Q* -> 3; X-axis 2^(1/2)Q* -> 4, Q* -> 5;
/// remaining axis points (including 0 and infinity) -> 1. With extended
/// every off-axis point is 1 as well.
struct TwoLine {
  bool extended = false;
};

/// (R^i - R^{i-1}) on S^n in R^{n+1} -> i; k = n + 1.
struct FlagEuclidean {
  std::size_t n;
};

/// Listed points with their colors; every other point gets background.
struct PointListBackground {
  std::size_t n;
  std::vector<Point> points;
  std::vector<int> colors;
  int background;
};

class ProceduralColoring {
 public:
  using Rule = std::variant<FlagInversive, GenericPoints, TwoLine, FlagEuclidean, PointListBackground>;

  /// Validates the rule (parameters, fullness, generic position).
  explicit ProceduralColoring(Rule rule);

  [[nodiscard]] const Rule& rule() const noexcept { return rule_; }
  [[nodiscard]] int k() const noexcept { return k_; }
  /// Dimension of the points the coloring accepts.
  [[nodiscard]] std::size_t ambient_dim() const noexcept { return dim_; }
  [[nodiscard]] std::string kind() const;
  [[nodiscard]] bool is_two_line_extended() const;

  /// Throws PreconditionError for points outside the domain and NotExact
  /// when a two-line norm cannot be classified exactly.
  [[nodiscard]] int color_of(const Point& p) const;
  /// nullopt for infinite classes.
  [[nodiscard]] std::optional<std::size_t> class_size(int color) const;
  /// count distinct points of the given color, deterministic in seed.
  /// Throws when count exceeds a finite class.
  [[nodiscard]] std::vector<Point> sample_class(int color, std::size_t count, std::uint64_t seed) const;

 private:
  Rule rule_;
  int k_ = 0;
  std::size_t dim_ = 0;
};

/// Two-line color of a point on the coordinate axes, or nullopt off them.
std::optional<int> two_line_axis_color(const Point& p);

struct ColoredPoint {
  Point point;
  int color;
};

struct ColoredConfig {
  std::size_t n = 0;
  int k = 0;
  std::vector<ColoredPoint> entries;

  /// Dimensions agree, colors lie in 1..k, points pairwise distinct.
  void validate() const;
  [[nodiscard]] std::vector<Point> points() const;
};

enum class GenericMode { Inversive, Euclidean };

/// Rational points with no n+2 on a common generalized (n-1)-sphere
/// (Inversive, in R^n), or points of S^n in R^{n+1} with every n+1
/// linearly independent (Euclidean). Bounded-retry rejection sampling.
std::vector<Point> generic_position_points(std::size_t n, std::size_t count, std::uint64_t seed,
                                           GenericMode mode = GenericMode::Inversive);

/// Inverse stereographic image (2t, <t,t> - 1)/(<t,t> + 1) of t in Q^n.
Point stereographic_point(const std::vector<Rational>& t);

/// Distinct rational points of S^n in R^{n+1}.
std::vector<Point> rational_sphere_points(std::size_t n, std::size_t count, std::uint64_t seed);

}  // namespace polychrome
