#pragma once

#include <array>
#include <map>
#include <optional>

#include "polychrome/chromatic.hpp"

namespace polychrome {

/// Map from the plane R^2_inf onto a finite set: x -> image[table[color(x)]].
/// Image points live in R^m_inf (the stereographic chart of S^m).
class FiniteImageMap {
 public:
  FiniteImageMap(ProceduralColoring coloring, std::vector<Point> image, std::map<int, std::size_t> table);

  [[nodiscard]] const ProceduralColoring& coloring() const noexcept { return coloring_; }
  [[nodiscard]] const std::vector<Point>& image() const noexcept { return image_; }
  [[nodiscard]] const std::map<int, std::size_t>& table() const noexcept { return table_; }

  [[nodiscard]] std::size_t image_index(const Point& x) const;
  [[nodiscard]] const Point& operator()(const Point& x) const { return image_[image_index(x)]; }

 private:
  ProceduralColoring coloring_;
  std::vector<Point> image_;
  std::map<int, std::size_t> table_;
};

struct CgpReport {
  bool verdict = false;
  std::optional<SubSphere> circle;     // a circle omitting fewer than two points
  std::vector<std::size_t> on_points;  // indices of M on that circle
};

/// Every circle misses at least two points of M.
CgpReport circular_general_position(std::span<const Point> m);

struct CircleSample {
  Hypersphere circle;
  std::vector<Point> points;
};

/// Seeded circles and lines of the plane with rational points on them,
/// including circles through the origin and lines through the origin and
/// infinity.
std::vector<CircleSample> sample_circles(std::size_t count, std::size_t points_per_circle, std::uint64_t seed);

struct WcpViolation {
  std::size_t sample = 0;
  Hypersphere circle;
  std::vector<ColoredPoint> domain_points;  // one per distinct image
  std::vector<Point> images;
  std::array<std::size_t, 4> non_concyclic{};  // indices into images
};

struct WcpResult {
  bool pass = true;  // on the sample only
  std::uint64_t circles_checked = 0;
  std::optional<WcpViolation> violation;  // first violating sample
};

WcpResult wcp_check(const FiniteImageMap& map, std::span<const CircleSample> samples);

struct FivePointRefutation {
  PolychromaticWitness witness;
  std::vector<Point> images;
  bool images_concyclic = true;
  SearchStats stats;
};

/// Map with five image points in circular general position: a circle whose
/// image has four points, none concyclic. Throws when the search budget
/// runs out.
FivePointRefutation five_point_refute(const FiniteImageMap& map, std::uint64_t budget = 1000, std::uint64_t seed = 1);

/// x -> m[flag color of x] for the planar flag coloring; m must be four
/// points, not concyclic.
FiniteImageMap build_sharp_map(std::span<const Point> m);

}  // namespace polychrome
