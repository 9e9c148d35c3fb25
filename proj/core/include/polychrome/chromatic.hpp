#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polychrome/colorings.hpp"
#include "polychrome/geom.hpp"

namespace polychrome {

struct PolychromaticWitness {
  AnySphere sphere;
  std::vector<ColoredPoint> points;  // points of the sample lying on the sphere
  std::vector<int> colors;           // sorted distinct colors of points
  std::vector<std::size_t> defining;  // config indices determining the sphere
};

/// Every point on the sphere, pairwise distinct, colors consistent (and
/// equal to coloring->color_of when a coloring is given).
bool witness_valid(const PolychromaticWitness& w, const ProceduralColoring* coloring = nullptr);

struct EnumeratedSphere {
  std::vector<std::size_t> subset;
  AnySphere sphere;
};

/// Distinct d-spheres determined by subsets of the config (n+1 points for
/// d = n-1, d+2 points otherwise), in lexicographic order of the first
/// subset producing each; degenerate subsets are skipped.
void for_each_sphere(const ColoredConfig& config, std::size_t d,
                     const std::function<bool(const EnumeratedSphere&)>& f);
std::vector<EnumeratedSphere> enumerate_spheres(const ColoredConfig& config, std::size_t d);

struct SearchStats {
  std::uint64_t spheres_examined = 0;
  std::uint64_t points_sampled = 0;
};

/// Sphere of dimension d carrying the most colors among all config points;
/// ties go to the lexicographically smallest defining subset. The result
/// does not depend on the thread count.
PolychromaticWitness max_polychromatic(const ColoredConfig& config, std::size_t d, unsigned threads = 1,
                                       SearchStats* stats = nullptr);

struct SearchResult {
  std::optional<PolychromaticWitness> witness;
  SearchStats stats;
};

/// Budgeted search for an (n-1)-sphere with at least target colors on
/// sampled points of a procedural coloring. budget bounds the number of
/// spheres examined.
SearchResult find_polychromatic(const ProceduralColoring& coloring, int target, std::uint64_t budget,
                                std::uint64_t seed);

struct SeparationWitness {
  Hypersphere sphere;
  std::vector<ColoredPoint> defining;
  std::array<ColoredPoint, 2> separated_pair;
};

/// Sphere through the defining points, five-plus distinct colors, and the
/// pair separated by it.
bool separation_valid(const SeparationWitness& w);

/// Five planar points of distinct colors, no four concyclic.
SeparationWitness separating_circle_5pts(std::span<const ColoredPoint> points);

/// n+3 points of distinct colors in R^n_inf, no n+2 cospherical. First
/// (n+1)-subset in lexicographic order whose sphere separates the other two.
std::optional<SeparationWitness> separating_sphere_bruteforce(std::span<const ColoredPoint> points);

enum class TransferKind { H, M };

/// h(r1|r2 r3) = r2 r3 / r1 and m(r1|r2 r3) = (r3/r2) r1; inputs nonzero.
Scalar transfer(TransferKind kind, const Scalar& r1, const Scalar& r2, const Scalar& r3);

/// Sampled signed-norm classes with membership oracles.
struct CosetModel {
  std::vector<Scalar> x4, x5, y2, y3;
  Scalar rep_x4, rep_y2, rep_y3;
  std::function<bool(const Scalar&)> in_x4, in_x5, in_y2, in_y3;
};

/// X5 = Q*, X4 = 2^(1/2)Q*, Y2 = 2^(1/4)Q*, Y3 = 2^(-1/4)Q*. 1 is the first
/// X5 sample. With corrupted, the X4 samples are replaced by 2^(1/4)Q*
/// values while the X4 oracle is unchanged.
CosetModel two_line_coset_model(std::size_t samples, std::uint64_t seed, bool corrupted = false);

struct CosetViolation {
  std::string rule;
  std::vector<Scalar> inputs;
  Scalar value;
};

struct CosetReport {
  std::vector<CosetViolation> violations;  // first max_recorded violations
  std::uint64_t violation_count = 0;
  std::uint64_t checks = 0;
};

CosetReport coset_closure_check(const CosetModel& model, std::size_t max_recorded = 100);

/// Points of a circle on the coordinate axes with their two-line colors.
/// known are points of the circle used to resolve the intersections
/// exactly; axes without a known point fall back to solving the quadratic.
/// whole_axis is set when the circle is itself an axis.
struct TwoLineTrace {
  std::vector<ColoredPoint> points;
  std::vector<int> colors;
  bool whole_axis = false;
};

TwoLineTrace two_line_trace(const Hypersphere& circle, std::span<const Point> known = {});

struct TwoLineReport {
  std::uint64_t circles = 0;
  int max_colors = 0;
  std::vector<PolychromaticWitness> violations;  // circles with more than 3 trace colors
  std::uint64_t violation_count = 0;
};

/// Every circle through 3 of the sampled axis points, checked on its full
/// trace on the axes.
TwoLineReport two_line_sharpness(std::span<const ColoredPoint> samples, unsigned threads = 1,
                                 std::size_t max_recorded = 10);

/// Sample of every class (finite classes capped at their size), in color order.
ColoredConfig sample_config(const ProceduralColoring& coloring, std::size_t per_class, std::uint64_t seed);

}  // namespace polychrome
