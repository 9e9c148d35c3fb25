#include "polychrome/colorings.hpp"

#include <algorithm>
#include <set>

#include "polychrome/combinations.hpp"
#include "polychrome/error.hpp"
#include "polychrome/random.hpp"

namespace polychrome {

namespace {

constexpr std::int64_t kNum = 30;
constexpr std::int64_t kDen = 8;
constexpr std::size_t kRetries = 10000;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Vector zeros(std::size_t n) { return Vector(n, Scalar(0)); }

bool on_unit_sphere(const Point& p) { return p.is_finite() && squared_norm(p.coords()) == Scalar(1); }

Point random_rational_point(Rng& rng, std::size_t n) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(rng.rational(kNum, kDen));
  return Point(std::move(v));
}

std::vector<Rational> random_parameter(Rng& rng, std::size_t n) {
  std::vector<Rational> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(rng.rational(kNum / 3, kDen));
  return t;
}

// Collects distinct points from gen() until count are found.
template <class Gen>
std::vector<Point> collect(std::size_t count, Gen&& gen) {
  std::vector<Point> out;
  std::set<std::string> seen;
  std::size_t misses = 0;
  while (out.size() < count) {
    std::optional<Point> p = gen(out.size());
    if (!p || !seen.insert(p->to_string()).second) {
      if (++misses > kRetries * (count + 1)) throw Error("sample_class: could not find enough distinct points");
      continue;
    }
    out.push_back(*std::move(p));
  }
  return out;
}

bool linearly_independent(const std::vector<const Point*>& pts) {
  Matrix m;
  for (const auto* p : pts) m.push_back(p->coords());
  return rank(m) == pts.size();
}

void check_generic(const std::vector<Point>& points, std::size_t n, bool euclidean) {
  require_distinct(points, "generic points");
  const std::size_t size = euclidean ? n + 1 : n + 2;
  for_each_combination(points.size(), std::min(size, points.size()), [&](const std::vector<std::size_t>& idx) {
    if (euclidean) {
      std::vector<const Point*> sub;
      for (auto i : idx) sub.push_back(&points[i]);
      if (!linearly_independent(sub)) throw PreconditionError("generic points: linearly dependent subset");
    } else if (idx.size() == size) {
      std::vector<Point> sub;
      for (auto i : idx) sub.push_back(points[i]);
      if (cospherical(sub)) throw PreconditionError("generic points: n+2 points on a common sphere");
    }
    return true;
  });
}

}  // namespace

std::optional<int> two_line_axis_color(const Point& p) {
  if (p.dim() != 2) throw PreconditionError("two-line coloring: points must be planar");
  if (p.is_infinity()) return 1;
  const bool on_x = p[1].is_zero();
  const bool on_y = p[0].is_zero();
  if (on_x && on_y) return 1;
  if (on_x) {
    const auto cls = norm_class_of(p[0]);
    if (cls == NormClass::QStar) return 5;
    if (cls == NormClass::Root2QStar) return 4;
    return 1;
  }
  if (on_y) {
    const auto cls = norm_class_of(p[1]);
    if (cls == NormClass::QuarticQStar) return 2;
    if (cls == NormClass::InvQuarticQStar) return 3;
    return 1;
  }
  return std::nullopt;
}

ProceduralColoring::ProceduralColoring(Rule rule) : rule_(std::move(rule)) {
  std::visit(overloaded{
                 [this](const FlagInversive& r) {
                   if (r.n < 1) throw PreconditionError("flag coloring: n must be positive");
                   k_ = static_cast<int>(r.n) + 2;
                   dim_ = r.n;
                 },
                 [this](const GenericPoints& r) {
                   if (r.n < 1) throw PreconditionError("generic coloring: n must be positive");
                   if (r.k < 2 || r.points.size() != r.k - 1) {
                     throw PreconditionError("generic coloring: needs k-1 points");
                   }
                   dim_ = r.euclidean ? r.n + 1 : r.n;
                   for (const auto& p : r.points) {
                     if (p.dim() != dim_) throw PreconditionError("generic coloring: dimension mismatch");
                     if (r.euclidean && !on_unit_sphere(p)) {
                       throw PreconditionError("generic coloring: points must lie on the unit sphere");
                     }
                   }
                   check_generic(r.points, r.n, r.euclidean);
                   k_ = static_cast<int>(r.k);
                 },
                 [this](const TwoLine&) {
                   k_ = 5;
                   dim_ = 2;
                 },
                 [this](const FlagEuclidean& r) {
                   if (r.n < 1) throw PreconditionError("euclidean flag coloring: n must be positive");
                   k_ = static_cast<int>(r.n) + 1;
                   dim_ = r.n + 1;
                 },
                 [this](const PointListBackground& r) {
                   if (r.points.size() != r.colors.size()) {
                     throw PreconditionError("point-list coloring: points and colors differ in length");
                   }
                   for (const auto& p : r.points) {
                     if (p.dim() != r.n) throw PreconditionError("point-list coloring: dimension mismatch");
                   }
                   require_distinct(r.points, "point-list coloring");
                   int k = r.background;
                   for (int c : r.colors) k = std::max(k, c);
                   std::vector<bool> seen(static_cast<std::size_t>(k) + 1, false);
                   if (r.background < 1) throw PreconditionError("point-list coloring: colors start at 1");
                   seen[static_cast<std::size_t>(r.background)] = true;
                   for (int c : r.colors) {
                     if (c < 1) throw PreconditionError("point-list coloring: colors start at 1");
                     seen[static_cast<std::size_t>(c)] = true;
                   }
                   for (int c = 1; c <= k; ++c) {
                     if (!seen[static_cast<std::size_t>(c)]) {
                       throw PreconditionError("point-list coloring: color " + std::to_string(c) + " is never used");
                     }
                   }
                   k_ = k;
                   dim_ = r.n;
                 },
             },
             rule_);
}

std::string ProceduralColoring::kind() const {
  return std::visit(overloaded{
                        [](const FlagInversive&) -> std::string { return "flag"; },
                        [](const GenericPoints& r) -> std::string { return r.euclidean ? "generic-euclidean" : "generic"; },
                        [](const TwoLine& r) -> std::string { return r.extended ? "two-line-extended" : "two-line"; },
                        [](const FlagEuclidean&) -> std::string { return "flag-euclidean"; },
                        [](const PointListBackground&) -> std::string { return "point-list"; },
                    },
                    rule_);
}

bool ProceduralColoring::is_two_line_extended() const {
  const auto* r = std::get_if<TwoLine>(&rule_);
  return r != nullptr && r->extended;
}

int ProceduralColoring::color_of(const Point& p) const {
  if (p.dim() != dim_) throw PreconditionError("color_of: dimension mismatch");
  return std::visit(
      overloaded{
          [&p](const FlagInversive& r) {
            if (p.is_infinity()) return 2;
            for (std::size_t i = r.n; i > 0; --i) {
              if (!p[i - 1].is_zero()) return static_cast<int>(i) + 2;
            }
            return 1;
          },
          [&p](const GenericPoints& r) {
            if (r.euclidean && !on_unit_sphere(p)) throw PreconditionError("color_of: point is not on the sphere");
            for (std::size_t i = 0; i < r.points.size(); ++i) {
              if (r.points[i] == p) return static_cast<int>(i) + 1;
            }
            return static_cast<int>(r.k);
          },
          [&p](const TwoLine& r) {
            if (auto c = two_line_axis_color(p)) return *c;
            if (r.extended) return 1;
            throw PreconditionError("color_of: point is off the two lines");
          },
          [&p](const FlagEuclidean&) {
            if (!on_unit_sphere(p)) throw PreconditionError("color_of: point is not on the sphere");
            for (std::size_t i = p.dim(); i > 0; --i) {
              if (!p[i - 1].is_zero()) return static_cast<int>(i);
            }
            return 0;
          },
          [&p](const PointListBackground& r) {
            for (std::size_t i = 0; i < r.points.size(); ++i) {
              if (r.points[i] == p) return r.colors[i];
            }
            return r.background;
          },
      },
      rule_);
}

std::optional<std::size_t> ProceduralColoring::class_size(int color) const {
  if (color < 1 || color > k_) throw PreconditionError("class_size: color out of range");
  return std::visit(overloaded{
                        [color](const FlagInversive&) -> std::optional<std::size_t> {
                          if (color <= 2) return 1;
                          return std::nullopt;
                        },
                        [color](const GenericPoints& r) -> std::optional<std::size_t> {
                          if (color < static_cast<int>(r.k)) return 1;
                          return std::nullopt;
                        },
                        [](const TwoLine&) -> std::optional<std::size_t> { return std::nullopt; },
                        [color](const FlagEuclidean&) -> std::optional<std::size_t> {
                          if (color == 1) return 2;
                          return std::nullopt;
                        },
                        [color](const PointListBackground& r) -> std::optional<std::size_t> {
                          if (color == r.background) return std::nullopt;
                          return static_cast<std::size_t>(std::count(r.colors.begin(), r.colors.end(), color));
                        },
                    },
                    rule_);
}

std::vector<Point> ProceduralColoring::sample_class(int color, std::size_t count, std::uint64_t seed) const {
  const auto size = class_size(color);
  if (size && count > *size) {
    throw PreconditionError("sample_class: class " + std::to_string(color) + " has only " + std::to_string(*size) +
                            " points");
  }
  Rng rng(mix_seed(seed, static_cast<std::uint64_t>(color)));
  const std::size_t n = dim_;
  std::vector<Point> out = std::visit(
      overloaded{
          [&](const FlagInversive&) {
            if (color == 1) return std::vector<Point>(count, Point(zeros(n)));
            if (color == 2) return std::vector<Point>(count, Point::infinity(n));
            const auto last = static_cast<std::size_t>(color - 2);
            return collect(count, [&](std::size_t) -> std::optional<Point> {
              Vector v = zeros(n);
              for (std::size_t i = 0; i + 1 < last; ++i) v[i] = rng.rational(kNum, kDen);
              v[last - 1] = rng.nonzero_rational(kNum, kDen);
              return Point(std::move(v));
            });
          },
          [&](const GenericPoints& r) {
            if (color < static_cast<int>(r.k)) {
              return std::vector<Point>(count, r.points[static_cast<std::size_t>(color - 1)]);
            }
            return collect(count, [&](std::size_t) -> std::optional<Point> {
              Point p = r.euclidean ? stereographic_point(random_parameter(rng, r.n)) : random_rational_point(rng, n);
              if (std::find(r.points.begin(), r.points.end(), p) != r.points.end()) return std::nullopt;
              return p;
            });
          },
          [&](const TwoLine& r) {
            return collect(count, [&](std::size_t i) -> std::optional<Point> {
              const Rational q = rng.nonzero_rational(kNum, kDen);
              switch (color) {
                case 2: return Point{Scalar(0), Scalar(Quartic::monomial(q, 1))};
                case 3: return Point{Scalar(0), Scalar(Quartic::monomial(q, 3))};
                case 4: return Point{Scalar(Quartic::monomial(q, 2)), Scalar(0)};
                case 5: return Point{Scalar(q), Scalar(0)};
                default: break;
              }
              if (i == 0) return Point{Scalar(0), Scalar(0)};
              if (i == 1) return Point::infinity(2);
              if (r.extended && i % 3 == 2) return Point{Scalar(q), Scalar(rng.nonzero_rational(kNum, kDen))};
              const Scalar off_class(Quartic(q, q, 0, 0));
              if (rng.coin()) return Point{off_class, Scalar(0)};
              return Point{Scalar(0), off_class};
            });
          },
          [&](const FlagEuclidean& r) {
            if (color == 1) {
              Vector plus = zeros(n), minus = zeros(n);
              plus[0] = Scalar(1);
              minus[0] = Scalar(-1);
              std::vector<Point> both{Point(plus), Point(minus)};
              both.resize(count, Point(plus));
              return both;
            }
            const auto dim = static_cast<std::size_t>(color);
            (void)r;
            return collect(count, [&](std::size_t) -> std::optional<Point> {
              auto t = random_parameter(rng, dim - 1);
              Rational t2;
              for (const auto& x : t) t2 += x * x;
              if (t2 == Rational(1)) return std::nullopt;
              Point s = stereographic_point(t);
              Vector v = zeros(n);
              for (std::size_t i = 0; i < dim; ++i) v[i] = s[i];
              return Point(std::move(v));
            });
          },
          [&](const PointListBackground& r) {
            std::vector<Point> listed;
            for (std::size_t i = 0; i < r.points.size(); ++i) {
              if (r.colors[i] == color) listed.push_back(r.points[i]);
            }
            if (color != r.background) {
              listed.resize(count, listed.empty() ? Point::infinity(n) : listed.front());
              return listed;
            }
            return collect(count, [&](std::size_t i) -> std::optional<Point> {
              if (i < listed.size()) return listed[i];
              Point p = random_rational_point(rng, n);
              if (std::find(r.points.begin(), r.points.end(), p) != r.points.end()) return std::nullopt;
              return p;
            });
          },
      },
      rule_);
  // Classes are small enough that the self-check is cheap relative to use.
  for (const auto& p : out) {
    if (color_of(p) != color) throw Error("sample_class: internal error, sampled point has the wrong color");
  }
  return out;
}

void ColoredConfig::validate() const {
  if (n == 0) throw PreconditionError("colored config: n must be positive");
  if (k < 1) throw PreconditionError("colored config: k must be positive");
  for (const auto& e : entries) {
    if (e.point.dim() != n) throw PreconditionError("colored config: dimension mismatch");
    if (e.color < 1 || e.color > k) throw PreconditionError("colored config: color out of range");
  }
  require_distinct(points(), "colored config");
}

std::vector<Point> ColoredConfig::points() const {
  std::vector<Point> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.point);
  return out;
}

Point stereographic_point(const std::vector<Rational>& t) {
  Rational t2;
  for (const auto& x : t) t2 += x * x;
  const Rational den = t2 + Rational(1);
  Vector v;
  for (const auto& x : t) v.emplace_back(Rational(2) * x / den);
  v.emplace_back((t2 - Rational(1)) / den);
  return Point(std::move(v));
}

std::vector<Point> rational_sphere_points(std::size_t n, std::size_t count, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("rational_sphere_points: n must be positive");
  Rng rng(seed);
  return collect(count, [&](std::size_t) -> std::optional<Point> { return stereographic_point(random_parameter(rng, n)); });
}

std::vector<Point> generic_position_points(std::size_t n, std::size_t count, std::uint64_t seed, GenericMode mode) {
  if (n < 1) throw PreconditionError("generic_position_points: n must be positive");
  if (count < 1) throw PreconditionError("generic_position_points: count must be positive");
  Rng rng(seed);
  const bool euclidean = mode == GenericMode::Euclidean;
  std::vector<Point> out;
  for (std::size_t attempt = 0; out.size() < count; ++attempt) {
    if (attempt > kRetries * count) throw Error("generic_position_points: retry budget exhausted");
    Point cand = euclidean ? stereographic_point(random_parameter(rng, n)) : random_rational_point(rng, n);
    if (std::find(out.begin(), out.end(), cand) != out.end()) continue;
    bool ok = true;
    if (euclidean) {
      if (out.size() < n) {
        std::vector<const Point*> all;
        for (const auto& p : out) all.push_back(&p);
        all.push_back(&cand);
        ok = linearly_independent(all);
      } else {
        for_each_combination(out.size(), n, [&](const std::vector<std::size_t>& idx) {
          Matrix m;
          for (auto i : idx) m.push_back(out[i].coords());
          m.push_back(cand.coords());
          ok = !determinant(std::move(m)).is_zero();
          return ok;
        });
      }
    } else if (out.size() >= n + 1) {
      for_each_combination(out.size(), n + 1, [&](const std::vector<std::size_t>& idx) {
        std::vector<Point> sub;
        for (auto i : idx) sub.push_back(out[i]);
        sub.push_back(cand);
        ok = !cospherical(sub);
        return ok;
      });
    }
    if (ok) out.push_back(std::move(cand));
  }
  return out;
}

}  // namespace polychrome
