#include "polychrome/wcp.hpp"

#include <algorithm>

#include "polychrome/combinations.hpp"
#include "polychrome/error.hpp"
#include "polychrome/random.hpp"

namespace polychrome {

FiniteImageMap::FiniteImageMap(ProceduralColoring coloring, std::vector<Point> image, std::map<int, std::size_t> table)
    : coloring_(std::move(coloring)), image_(std::move(image)), table_(std::move(table)) {
  if (coloring_.ambient_dim() != 2 || coloring_.kind() == "flag-euclidean" || coloring_.kind() == "generic-euclidean") {
    throw PreconditionError("FiniteImageMap: the domain coloring must live on the plane");
  }
  if (image_.empty()) throw PreconditionError("FiniteImageMap: empty image");
  for (const auto& p : image_) {
    if (p.dim() != image_.front().dim()) throw PreconditionError("FiniteImageMap: image dimensions differ");
  }
  require_distinct(image_, "FiniteImageMap");
  for (int color = 1; color <= coloring_.k(); ++color) {
    auto it = table_.find(color);
    if (it == table_.end()) throw PreconditionError("FiniteImageMap: color " + std::to_string(color) + " has no image");
    if (it->second >= image_.size()) throw PreconditionError("FiniteImageMap: table index out of range");
  }
  if (table_.size() != static_cast<std::size_t>(coloring_.k())) {
    throw PreconditionError("FiniteImageMap: table has colors outside the coloring");
  }
}

std::size_t FiniteImageMap::image_index(const Point& x) const { return table_.at(coloring_.color_of(x)); }

namespace {

// Three distinct points spanning a circle, starting from the given ones.
std::vector<Point> pad_to_three(std::vector<Point> pts, std::size_t dim) {
  std::vector<Point> extra{Point::infinity(dim)};
  for (int k = 0; k < 3; ++k) {
    Vector v(dim, Scalar(0));
    v[0] = Scalar(k);
    extra.emplace_back(v);
  }
  for (const auto& e : extra) {
    if (pts.size() >= 3) break;
    if (std::find(pts.begin(), pts.end(), e) == pts.end()) pts.push_back(e);
  }
  return pts;
}

}  // namespace

CgpReport circular_general_position(std::span<const Point> m) {
  if (m.empty()) throw PreconditionError("circular_general_position: empty set");
  const std::size_t dim = m.front().dim();
  for (const auto& p : m) {
    if (p.dim() != dim) throw PreconditionError("circular_general_position: dimension mismatch");
  }
  require_distinct(m, "circular_general_position");
  CgpReport report;
  auto attach = [&](const SubSphere& s) {
    report.circle = s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (s.contains(m[i])) report.on_points.push_back(i);
    }
  };
  if (m.size() <= 4) {
    std::vector<Point> first(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(3, m.size())));
    attach(smallest_sphere(pad_to_three(std::move(first), dim)));
    return report;
  }
  bool found = false;
  for_each_combination(m.size(), 3, [&](const std::vector<std::size_t>& idx) {
    const std::vector<Point> three{m[idx[0]], m[idx[1]], m[idx[2]]};
    SubSphere s = smallest_sphere(three);
    if (s.dim() != 1) return true;
    std::size_t count = 0;
    for (const auto& p : m) count += s.contains(p) ? 1 : 0;
    if (count + 1 >= m.size()) {
      attach(s);
      found = true;
      return false;
    }
    return true;
  });
  report.verdict = !found;
  return report;
}

std::vector<CircleSample> sample_circles(std::size_t count, std::size_t points_per_circle, std::uint64_t seed) {
  if (points_per_circle < 4) throw PreconditionError("sample_circles: at least four points per circle");
  Rng rng(seed);
  std::vector<CircleSample> out;
  out.reserve(count);
  const Point origin{Scalar(0), Scalar(0)};
  // Rational point of the unit circle from a rational parameter.
  auto unit = [](const Rational& t) {
    const Rational den = t * t + Rational(1);
    return std::array<Rational, 2>{(Rational(1) - t * t) / den, Rational(2) * t / den};
  };
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t kind = i % 4;
    std::vector<Point> pts;
    auto push = [&pts](Point p) {
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
    };
    if (kind == 0 || kind == 1) {
      Rational r = rng.nonzero_rational(6, 3);
      if (r.sign() < 0) r = -r;
      Rational cx = rng.rational(6, 3);
      Rational cy = rng.rational(6, 3);
      if (kind == 1) {
        // Center at distance r from the origin.
        const auto u = unit(rng.rational(6, 4));
        cx = r * u[0];
        cy = r * u[1];
        push(origin);
      }
      while (pts.size() < points_per_circle) {
        const auto u = unit(rng.rational(9, 5));
        push(Point{Scalar(cx + r * u[0]), Scalar(cy + r * u[1])});
      }
    } else {
      Rational dx = rng.rational(4, 3);
      Rational dy = rng.nonzero_rational(4, 3);
      if (rng.coin()) std::swap(dx, dy);
      Rational px = 0, py = 0;
      if (kind == 3) {
        px = rng.rational(6, 3);
        py = rng.rational(6, 3);
      }
      push(Point::infinity(2));
      if (kind == 2) push(origin);
      while (pts.size() < points_per_circle) {
        const Rational t = rng.nonzero_rational(9, 4);
        push(Point{Scalar(px + t * dx), Scalar(py + t * dy)});
      }
    }
    const std::vector<Point> three(pts.begin(), pts.begin() + 3);
    out.push_back({sphere_through(three), std::move(pts)});
  }
  return out;
}

WcpResult wcp_check(const FiniteImageMap& map, std::span<const CircleSample> samples) {
  WcpResult result;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& sample = samples[s];
    if (sample.circle.dim() != 2) throw PreconditionError("wcp_check: circles must be planar");
    if (sample.points.size() < 4) throw PreconditionError("wcp_check: each circle needs at least four points");
    std::vector<ColoredPoint> reps;
    std::vector<std::size_t> seen;
    for (const auto& p : sample.points) {
      if (!on_sphere(p, sample.circle)) throw PreconditionError("wcp_check: sample point is off its circle");
      const int color = map.coloring().color_of(p);
      const std::size_t idx = map.table().at(color);
      if (std::find(seen.begin(), seen.end(), idx) != seen.end()) continue;
      seen.push_back(idx);
      reps.push_back({p, color});
    }
    ++result.circles_checked;
    if (seen.size() <= 3) continue;
    std::vector<Point> images;
    for (auto idx : seen) images.push_back(map.image()[idx]);
    std::optional<std::array<std::size_t, 4>> bad;
    for_each_combination(images.size(), 4, [&](const std::vector<std::size_t>& q) {
      if (!concyclic(images[q[0]], images[q[1]], images[q[2]], images[q[3]])) {
        bad = std::array<std::size_t, 4>{q[0], q[1], q[2], q[3]};
        return false;
      }
      return true;
    });
    if (bad) {
      result.pass = false;
      result.violation = WcpViolation{s, sample.circle, std::move(reps), std::move(images), *bad};
      return result;
    }
  }
  return result;
}

FivePointRefutation five_point_refute(const FiniteImageMap& map, std::uint64_t budget, std::uint64_t seed) {
  if (map.image().size() != 5) throw PreconditionError("five_point_refute: the image must have exactly five points");
  if (map.coloring().k() != 5) throw PreconditionError("five_point_refute: the domain coloring must use five colors");
  std::vector<std::size_t> used;
  for (const auto& [color, idx] : map.table()) used.push_back(idx);
  std::sort(used.begin(), used.end());
  if (std::unique(used.begin(), used.end()) != used.end()) {
    throw PreconditionError("five_point_refute: every image point must be realized by one color");
  }
  if (!circular_general_position(map.image()).verdict) {
    throw PreconditionError("five_point_refute: image is not in circular general position; use wcp_check");
  }
  SearchResult search = find_polychromatic(map.coloring(), 4, budget, seed);
  if (!search.witness) throw Error("five_point_refute: search budget exhausted without a 4-colored circle");
  FivePointRefutation out{*search.witness, {}, true, search.stats};
  std::vector<int> colors;
  for (const auto& cp : out.witness.points) {
    if (std::find(colors.begin(), colors.end(), cp.color) != colors.end()) continue;
    colors.push_back(cp.color);
    out.images.push_back(map.image()[map.table().at(cp.color)]);
    if (out.images.size() == 4) break;
  }
  out.images_concyclic = concyclic(out.images);
  return out;
}

FiniteImageMap build_sharp_map(std::span<const Point> m) {
  if (m.size() != 4) throw PreconditionError("build_sharp_map: exactly four image points required");
  if (concyclic(m)) throw PreconditionError("build_sharp_map: the image points are concyclic");
  return FiniteImageMap(ProceduralColoring(FlagInversive{2}), std::vector<Point>(m.begin(), m.end()),
                        {{1, 0}, {2, 1}, {3, 2}, {4, 3}});
}

}  // namespace polychrome
