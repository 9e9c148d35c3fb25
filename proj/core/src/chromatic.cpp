#include "polychrome/chromatic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <thread>
#include <unordered_set>

#include "polychrome/combinations.hpp"
#include "polychrome/error.hpp"
#include "polychrome/moebius.hpp"
#include "polychrome/random.hpp"

namespace polychrome {

namespace {

std::vector<int> distinct_colors(const std::vector<ColoredPoint>& pts) {
  std::vector<int> colors;
  for (const auto& cp : pts) colors.push_back(cp.color);
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
  return colors;
}

// Converts an exact value to double when the conversion keeps enough
// relative accuracy for the incidence filter.
bool filter_value(const Scalar& s, double& out) {
  if (s.is_float()) return false;
  out = s.to_double();
  if (!std::isfinite(out)) return false;
  if (out == 0.0) return s.is_zero();
  return std::fabs(out) > 1e-280 && std::fabs(out) < 1e280;
}

struct FastPoint {
  bool usable = false;
  std::vector<double> x;
  double norm_sq = 0.0;
  Scalar exact_norm_sq;
};

FastPoint make_fast_point(const Point& p) {
  FastPoint fp;
  if (p.is_infinity()) return fp;
  fp.exact_norm_sq = squared_norm(p.coords());
  fp.usable = true;
  fp.x.resize(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) fp.usable = fp.usable && filter_value(p[i], fp.x[i]);
  fp.usable = fp.usable && filter_value(fp.exact_norm_sq, fp.norm_sq);
  return fp;
}

struct FastSphere {
  bool usable = false;
  double c = 0.0;
  std::vector<double> b;
  double a = 0.0;
};

FastSphere make_fast_sphere(const Hypersphere& s) {
  FastSphere fs;
  fs.usable = filter_value(s.c(), fs.c) && filter_value(s.a(), fs.a);
  fs.b.resize(s.dim());
  for (std::size_t i = 0; i < s.dim() && fs.usable; ++i) fs.usable = filter_value(s.b()[i], fs.b[i]);
  return fs;
}

// Exact incidence with a floating-point rejection filter: a value that is
// large relative to the accumulated magnitude cannot be zero.
bool incident(const Hypersphere& s, const FastSphere& fs, const Point& p, const FastPoint& fp) {
  if (p.is_infinity()) return s.is_flat();
  if (fs.usable && fp.usable) {
    double v = fs.c * fp.norm_sq;
    double mag = std::fabs(v);
    for (std::size_t i = 0; i < fp.x.size(); ++i) {
      const double t = fs.b[i] * fp.x[i];
      v += t;
      mag += std::fabs(t);
    }
    v += fs.a;
    mag += std::fabs(fs.a);
    if (std::isfinite(v) && std::isfinite(mag) && std::fabs(v) > 1e-9 * mag) return false;
  }
  return s.evaluate(p.coords(), fp.exact_norm_sq).is_zero();
}

// Lifted row (1, x, <x,x>) in doubles, infinity -> (0, ..., 0, 1).
struct LiftedRow {
  bool usable = false;
  std::vector<double> v;
};

LiftedRow make_lifted(const Point& p, const FastPoint& fp) {
  LiftedRow row;
  row.v.assign(p.dim() + 2, 0.0);
  if (p.is_infinity()) {
    row.v.back() = 1.0;
    row.usable = true;
    return row;
  }
  if (!fp.usable) return row;
  row.v[0] = 1.0;
  for (std::size_t i = 0; i < fp.x.size(); ++i) row.v[i + 1] = fp.x[i];
  row.v.back() = fp.norm_sq;
  row.usable = true;
  return row;
}

// Determinant and permanent of |.| of the square minor formed by rows
// [first, rows.size()) and the columns in mask, by Laplace expansion.
std::pair<double, double> minor_det(const std::vector<const LiftedRow*>& rows, std::size_t first, unsigned mask) {
  if (first == rows.size()) return {1.0, 1.0};
  double det = 0.0;
  double perm = 0.0;
  int sign = 1;
  const auto& v = rows[first]->v;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!(mask & (1u << j))) continue;
    if (v[j] != 0.0) {
      const auto [d, p] = minor_det(rows, first + 1, mask & ~(1u << j));
      det += sign * v[j] * d;
      perm += std::fabs(v[j]) * p;
    }
    sign = -sign;
  }
  return {det, perm};
}

// Cofactor expansion of the sphere through n+1 lifted rows: a point lies
// on the sphere iff <row, coef> = 0, and |error| <= tol * <|row|, bound>.
struct ApproxSphere {
  std::vector<double> coef, bound;
  bool certainly_off(const LiftedRow& row) const {
    if (!row.usable) return false;
    double v = 0.0;
    double mag = 0.0;
    for (std::size_t j = 0; j < coef.size(); ++j) {
      v += row.v[j] * coef[j];
      mag += std::fabs(row.v[j]) * bound[j];
    }
    return std::isfinite(v) && std::isfinite(mag) && std::fabs(v) > 1e-10 * mag;
  }
};

std::optional<ApproxSphere> approx_sphere(const std::vector<const LiftedRow*>& rows) {
  const std::size_t width = rows.front()->v.size();
  if (width > 8) return std::nullopt;
  for (const auto* r : rows) {
    if (!r->usable) return std::nullopt;
  }
  ApproxSphere s;
  const unsigned full = (1u << width) - 1;
  for (std::size_t j = 0; j < width; ++j) {
    auto [d, p] = minor_det(rows, 0, full & ~(1u << j));
    s.coef.push_back(j % 2 == 0 ? d : -d);
    s.bound.push_back(p);
  }
  return s;
}

std::vector<Point> subset_points(const ColoredConfig& config, const std::vector<std::size_t>& idx) {
  std::vector<Point> pts;
  pts.reserve(idx.size());
  for (auto i : idx) pts.push_back(config.entries[i].point);
  return pts;
}

struct Candidate {
  int colors = 0;
  std::vector<std::size_t> subset;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.colors != b.colors) return a.colors > b.colors;
  if (b.subset.empty()) return !a.subset.empty();
  return !a.subset.empty() && a.subset < b.subset;
}

PolychromaticWitness witness_for(const ColoredConfig& config, const AnySphere& sphere,
                                 std::vector<std::size_t> defining) {
  PolychromaticWitness w{sphere, {}, {}, std::move(defining)};
  for (const auto& e : config.entries) {
    if (sphere_contains(sphere, e.point)) w.points.push_back(e);
  }
  w.colors = distinct_colors(w.points);
  return w;
}

PolychromaticWitness max_codim_one(const ColoredConfig& config, unsigned threads, SearchStats* stats) {
  const std::size_t n = config.n;
  const std::size_t total = config.entries.size();
  const std::size_t m = n + 1;

  std::vector<FastPoint> fast;
  fast.reserve(total);
  for (const auto& e : config.entries) fast.push_back(make_fast_point(e.point));
  std::vector<LiftedRow> lifted;
  lifted.reserve(total);
  for (std::size_t i = 0; i < total; ++i) lifted.push_back(make_lifted(config.entries[i].point, fast[i]));

  std::map<int, std::vector<std::size_t>> by_color;
  for (std::size_t i = 0; i < total; ++i) by_color[config.entries[i].color].push_back(i);
  std::vector<std::pair<int, std::vector<std::size_t>>> classes(by_color.begin(), by_color.end());
  std::stable_sort(classes.begin(), classes.end(),
                   [](const auto& x, const auto& y) { return x.second.size() < y.second.size(); });
  const int class_count = static_cast<int>(classes.size());
  const int max_color = classes.empty() ? 0 : by_color.rbegin()->first;

  if (threads == 0) threads = 1;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total - m + 1));

  std::vector<Candidate> best(threads);

  auto worker = [&](unsigned t) {
    Candidate& local = best[t];
    std::vector<char> seen(static_cast<std::size_t>(max_color) + 1, 0);
    std::vector<std::size_t> idx(m);
    std::vector<const LiftedRow*> rows(m);
    for (std::size_t i0 = t; i0 + m <= total; i0 += threads) {
      if (local.colors == class_count) return;
      std::vector<std::size_t> rest = first_combination(m - 1);
      const std::size_t pool = total - i0 - 1;
      do {
        idx[0] = i0;
        for (std::size_t j = 0; j + 1 < m; ++j) idx[j + 1] = i0 + 1 + rest[j];
        std::fill(seen.begin(), seen.end(), 0);
        int found = 0;
        for (auto i : idx) {
          const int c = config.entries[i].color;
          if (!seen[static_cast<std::size_t>(c)]) {
            seen[static_cast<std::size_t>(c)] = 1;
            ++found;
          }
        }
        int bound = class_count;
        if (local.colors > 0) {
          // Classes that certainly miss the sphere, smallest first.
          for (std::size_t j = 0; j < m; ++j) rows[j] = &lifted[idx[j]];
          if (auto approx = approx_sphere(rows)) {
            int reachable = class_count;
            for (const auto& [color, members] : classes) {
              if (seen[static_cast<std::size_t>(color)]) continue;
              bool all_off = true;
              for (auto i : members) {
                if (!approx->certainly_off(lifted[i])) {
                  all_off = false;
                  break;
                }
              }
              if (!all_off) break;
              if (--reachable <= local.colors) break;
            }
            if (reachable <= local.colors) continue;
          }
        }
        std::vector<Point> pts = subset_points(config, idx);
        auto sphere = try_sphere_through(pts);
        if (!sphere) continue;
        const FastSphere fs = make_fast_sphere(*sphere);
        for (const auto& [color, members] : classes) {
          if (seen[static_cast<std::size_t>(color)]) continue;
          bool hit = false;
          for (auto i : members) {
            if (incident(*sphere, fs, config.entries[i].point, fast[i])) {
              hit = true;
              break;
            }
          }
          if (hit) {
            ++found;
          } else if (--bound <= local.colors) {
            break;
          }
        }
        if (found > local.colors) local = Candidate{found, idx};
        if (local.colors == class_count) return;
      } while (m > 1 && next_combination(rest, pool));
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  Candidate winner;
  for (const auto& c : best) {
    if (better(c, winner)) winner = c;
  }
  if (stats) stats->spheres_examined += binomial(total, m);
  if (winner.subset.empty()) throw PreconditionError("max_polychromatic: no subset determines a sphere");
  const Hypersphere s = sphere_through(subset_points(config, winner.subset));
  return witness_for(config, s, winner.subset);
}

}  // namespace

bool witness_valid(const PolychromaticWitness& w, const ProceduralColoring* coloring) {
  std::vector<Point> pts;
  for (const auto& cp : w.points) {
    if (!sphere_contains(w.sphere, cp.point)) return false;
    if (coloring && coloring->color_of(cp.point) != cp.color) return false;
    pts.push_back(cp.point);
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) return false;
    }
  }
  return distinct_colors(w.points) == w.colors;
}

void for_each_sphere(const ColoredConfig& config, std::size_t d,
                     const std::function<bool(const EnumeratedSphere&)>& f) {
  const std::size_t n = config.n;
  if (d + 1 > n) throw PreconditionError("for_each_sphere: d must be below n");
  const std::size_t m = d + 1 == n ? n + 1 : d + 2;
  std::unordered_set<std::string> seen;
  for_each_combination(config.entries.size(), m, [&](const std::vector<std::size_t>& idx) {
    const auto pts = subset_points(config, idx);
    if (d + 1 == n) {
      auto s = try_sphere_through(pts);
      if (!s) return true;
      if (!seen.insert(s->to_string()).second) return true;
      return f(EnumeratedSphere{idx, *s});
    }
    SubSphere s = smallest_sphere(pts);
    if (s.dim() != d) return true;
    if (!seen.insert(s.canonical_key()).second) return true;
    return f(EnumeratedSphere{idx, s});
  });
}

std::vector<EnumeratedSphere> enumerate_spheres(const ColoredConfig& config, std::size_t d) {
  std::vector<EnumeratedSphere> out;
  for_each_sphere(config, d, [&out](const EnumeratedSphere& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

PolychromaticWitness max_polychromatic(const ColoredConfig& config, std::size_t d, unsigned threads,
                                       SearchStats* stats) {
  config.validate();
  if (d + 1 > config.n) throw PreconditionError("max_polychromatic: d must be below n");
  const std::size_t m = d + 1 == config.n ? config.n + 1 : d + 2;
  if (config.entries.size() < m) throw PreconditionError("max_polychromatic: too few points");
  if (d + 1 == config.n) return max_codim_one(config, threads, stats);

  std::optional<PolychromaticWitness> best;
  for_each_sphere(config, d, [&](const EnumeratedSphere& s) {
    if (stats) ++stats->spheres_examined;
    PolychromaticWitness w = witness_for(config, s.sphere, s.subset);
    if (!best || w.colors.size() > best->colors.size()) best = std::move(w);
    return true;
  });
  if (!best) throw PreconditionError("max_polychromatic: no subset determines a sphere");
  return *best;
}

ColoredConfig sample_config(const ProceduralColoring& coloring, std::size_t per_class, std::uint64_t seed) {
  ColoredConfig config{coloring.ambient_dim(), coloring.k(), {}};
  for (int color = 1; color <= coloring.k(); ++color) {
    std::size_t count = per_class;
    if (auto size = coloring.class_size(color)) count = std::min(count, *size);
    for (auto& p : coloring.sample_class(color, count, mix_seed(seed, static_cast<std::uint64_t>(color)))) {
      config.entries.push_back({std::move(p), color});
    }
  }
  return config;
}

namespace {

bool euclidean_domain(const ProceduralColoring& coloring) {
  const auto kind = coloring.kind();
  return kind == "flag-euclidean" || kind == "generic-euclidean";
}

std::optional<PolychromaticWitness> two_line_candidate(const ProceduralColoring& coloring, const Rational& q2,
                                                       const Rational& q3, const Rational& q4) {
  const Point b2{Scalar(0), Scalar(Quartic::monomial(q2, 1))};
  const Point b3{Scalar(0), Scalar(Quartic::monomial(q3, 3))};
  const Point a4{Scalar(Quartic::monomial(q4, 2)), Scalar(0)};
  const std::vector<Point> three{b2, b3, a4};
  auto s = try_sphere_through(three);
  if (!s || s->is_flat()) return std::nullopt;
  const Vector center = s->center();
  for (const Point& base : three) {
    Point opposite(subtract(scale(center, Scalar(2)), base.coords()));
    if (two_line_axis_color(opposite)) continue;
    std::vector<ColoredPoint> pts{{opposite, 1}, {b2, 2}, {b3, 3}, {a4, 4}};
    for (const auto& cp : pts) {
      if (!on_sphere(cp.point, *s) || coloring.color_of(cp.point) != cp.color) return std::nullopt;
    }
    PolychromaticWitness w{*s, pts, {1, 2, 3, 4}, {}};
    return w;
  }
  return std::nullopt;
}

}  // namespace

SearchResult find_polychromatic(const ProceduralColoring& coloring, int target, std::uint64_t budget,
                                std::uint64_t seed) {
  if (target < 1 || target > coloring.k()) throw PreconditionError("find_polychromatic: target out of range");
  if (euclidean_domain(coloring)) {
    throw PreconditionError("find_polychromatic: Euclidean-domain colorings use the great-sphere search");
  }
  SearchResult result;
  if (coloring.is_two_line_extended() && target == 4) {
    Rng rng(mix_seed(seed, 0x74));
    for (std::uint64_t cand = 0; result.stats.spheres_examined < budget; ++cand) {
      Rational q2 = 1, q3(1, 2), q4 = 1;
      if (cand > 0) {
        q2 = rng.nonzero_rational(9, 4);
        q3 = rng.nonzero_rational(9, 4);
        q4 = rng.nonzero_rational(9, 4);
      }
      ++result.stats.spheres_examined;
      result.stats.points_sampled += 4;
      if (auto w = two_line_candidate(coloring, q2, q3, q4)) {
        result.witness = std::move(w);
        return result;
      }
    }
    return result;
  }

  const std::size_t per_class = 10;
  const ColoredConfig pool = sample_config(coloring, per_class, seed);
  result.stats.points_sampled = pool.entries.size();
  const std::size_t n = pool.n;
  std::vector<FastPoint> fast;
  for (const auto& e : pool.entries) fast.push_back(make_fast_point(e.point));
  std::set<int> present;
  for (const auto& e : pool.entries) present.insert(e.color);
  if (static_cast<int>(present.size()) < target) return result;

  for_each_combination(pool.entries.size(), n + 1, [&](const std::vector<std::size_t>& idx) {
    if (result.stats.spheres_examined >= budget) return false;
    std::set<int> own;
    for (auto i : idx) own.insert(pool.entries[i].color);
    if (own.size() != idx.size()) return true;
    auto s = try_sphere_through(subset_points(pool, idx));
    if (!s) return true;
    ++result.stats.spheres_examined;
    const FastSphere fs = make_fast_sphere(*s);
    std::set<int> on = own;
    for (std::size_t i = 0; i < pool.entries.size(); ++i) {
      if (on.count(pool.entries[i].color)) continue;
      if (incident(*s, fs, pool.entries[i].point, fast[i])) on.insert(pool.entries[i].color);
    }
    if (static_cast<int>(on.size()) >= target) {
      result.witness = witness_for(pool, *s, idx);
      return false;
    }
    return true;
  });
  return result;
}

bool separation_valid(const SeparationWitness& w) {
  std::vector<int> colors;
  for (const auto& cp : w.defining) {
    if (!on_sphere(cp.point, w.sphere)) return false;
    colors.push_back(cp.color);
  }
  for (const auto& cp : w.separated_pair) {
    if (on_sphere(cp.point, w.sphere)) return false;
    colors.push_back(cp.color);
  }
  std::sort(colors.begin(), colors.end());
  if (std::adjacent_find(colors.begin(), colors.end()) != colors.end()) return false;
  if (colors.size() < 5) return false;
  return separated(w.separated_pair[0].point, w.separated_pair[1].point, w.sphere);
}

namespace {

void require_distinct_colors(std::span<const ColoredPoint> points, const char* what) {
  std::vector<int> colors;
  std::vector<Point> pts;
  for (const auto& cp : points) {
    colors.push_back(cp.color);
    pts.push_back(cp.point);
  }
  std::sort(colors.begin(), colors.end());
  if (std::adjacent_find(colors.begin(), colors.end()) != colors.end()) {
    throw PreconditionError(std::string(what) + ": colors must be distinct");
  }
  require_distinct(pts, what);
}

Vector midpoint(const Point& x, const Point& y) { return scale(add(x.coords(), y.coords()), Rational(1, 2)); }

// Point q on the generalized circle through x1, x4, x5 such that x1 and q
// separate x4 from x5 on it.
Point opposite_point(const Point& x1, const Point& x4, const Point& x5) {
  const std::size_t dim = x1.dim();
  if (x1.is_infinity()) return Point(midpoint(x4, x5));
  if (x4.is_infinity()) return Point(subtract(scale(x5.coords(), Scalar(2)), x1.coords()));
  if (x5.is_infinity()) return Point(subtract(scale(x4.coords(), Scalar(2)), x1.coords()));
  const std::vector<Point> three{x1, x4, x5};
  const Hypersphere s = sphere_through(three);
  const Vector m = midpoint(x4, x5);
  if (s.is_flat()) {
    // x1 lies between x4 and x5 iff <x4 - x1, x5 - x1> < 0.
    const Scalar t = dot(subtract(x4.coords(), x1.coords()), subtract(x5.coords(), x1.coords()));
    if (t.sign() < 0) return Point::infinity(dim);
    return Point(m);
  }
  const Vector v = subtract(m, x1.coords());
  const Scalar lin = Scalar(2) * s.c() * dot(x1.coords(), v) + dot(s.b(), v);
  const Scalar t = -lin / (s.c() * squared_norm(v));
  return Point(add(x1.coords(), scale(v, t)));
}

std::optional<SeparationWitness> try_roles(const std::array<ColoredPoint, 5>& x) {
  const Point q = opposite_point(x[0].point, x[3].point, x[4].point);
  const MoebiusMap t = normalize(x[0].point, q);
  std::array<Point, 5> y{t.apply(x[0].point), t.apply(x[1].point), t.apply(x[2].point), t.apply(x[3].point),
                         t.apply(x[4].point)};
  for (const auto& p : y) {
    if (p.is_infinity()) return std::nullopt;
  }
  // y4 and y5 lie on a line through 0 with 0 strictly between them.
  const Scalar cross = y[3][0] * y[4][1] - y[3][1] * y[4][0];
  if (!cross.is_zero() || dot(y[3].coords(), y[4].coords()).sign() >= 0) return std::nullopt;

  auto make = [&](int a, int b, int c, int p1, int p2) -> std::optional<SeparationWitness> {
    const std::vector<Point> three{x[a].point, x[b].point, x[c].point};
    SeparationWitness w{sphere_through(three), {x[a], x[b], x[c]}, {x[p1], x[p2]}};
    if (!separation_valid(w)) return std::nullopt;
    return w;
  };
  const Scalar s2 = y[3][0] * y[1][1] - y[3][1] * y[1][0];
  const Scalar s3 = y[3][0] * y[2][1] - y[3][1] * y[2][0];
  if (s2.sign() * s3.sign() < 0) return make(0, 3, 4, 1, 2);
  const std::vector<Point> c345{y[2], y[3], y[4]};
  if (side(y[1], sphere_through(c345)) == Side::Outside) return make(2, 3, 4, 0, 1);
  return make(1, 3, 4, 0, 2);
}

}  // namespace

SeparationWitness separating_circle_5pts(std::span<const ColoredPoint> points) {
  if (points.size() != 5) throw PreconditionError("separating_circle_5pts: exactly five points required");
  for (const auto& cp : points) {
    if (cp.point.dim() != 2) throw PreconditionError("separating_circle_5pts: points must be planar");
  }
  require_distinct_colors(points, "separating_circle_5pts");
  std::vector<Point> pts;
  for (const auto& cp : points) pts.push_back(cp.point);
  bool four_concyclic = false;
  for_each_combination(5, 4, [&](const std::vector<std::size_t>& idx) {
    four_concyclic = concyclic(pts[idx[0]], pts[idx[1]], pts[idx[2]], pts[idx[3]]);
    return !four_concyclic;
  });
  if (four_concyclic) throw PreconditionError("separating_circle_5pts: four of the points are concyclic");

  std::vector<ColoredPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.color < b.color; });
  std::array<std::size_t, 5> perm{0, 1, 2, 3, 4};
  do {
    std::array<ColoredPoint, 5> x{sorted[perm[0]], sorted[perm[1]], sorted[perm[2]], sorted[perm[3]],
                                  sorted[perm[4]]};
    if (auto w = try_roles(x)) return *w;
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw Error("separating_circle_5pts: no separating circle found");
}

std::optional<SeparationWitness> separating_sphere_bruteforce(std::span<const ColoredPoint> points) {
  if (points.empty()) throw PreconditionError("separating_sphere_bruteforce: no points");
  const std::size_t n = points[0].point.dim();
  if (points.size() != n + 3) throw PreconditionError("separating_sphere_bruteforce: n+3 points required");
  for (const auto& cp : points) {
    if (cp.point.dim() != n) throw PreconditionError("separating_sphere_bruteforce: dimension mismatch");
  }
  require_distinct_colors(points, "separating_sphere_bruteforce");
  std::vector<Point> pts;
  for (const auto& cp : points) pts.push_back(cp.point);
  for_each_combination(pts.size(), n + 2, [&](const std::vector<std::size_t>& idx) {
    std::vector<Point> sub;
    for (auto i : idx) sub.push_back(pts[i]);
    if (cospherical(sub)) {
      throw PreconditionError("separating_sphere_bruteforce: n+2 of the points are cospherical");
    }
    return true;
  });
  std::optional<SeparationWitness> found;
  for_each_combination(pts.size(), n + 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<Point> sub;
    std::vector<ColoredPoint> defining;
    for (auto i : idx) {
      sub.push_back(pts[i]);
      defining.push_back(points[i]);
    }
    auto s = try_sphere_through(sub);
    if (!s) return true;
    std::vector<ColoredPoint> rest;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!std::binary_search(idx.begin(), idx.end(), i)) rest.push_back(points[i]);
    }
    if (separated(rest[0].point, rest[1].point, *s)) {
      found = SeparationWitness{*s, defining, {rest[0], rest[1]}};
      return false;
    }
    return true;
  });
  return found;
}

Scalar transfer(TransferKind kind, const Scalar& r1, const Scalar& r2, const Scalar& r3) {
  if (r1.is_zero() || r2.is_zero() || r3.is_zero()) throw PreconditionError("transfer: inputs must be nonzero");
  if (kind == TransferKind::H) return r2 * r3 / r1;
  return r3 / r2 * r1;
}

CosetModel two_line_coset_model(std::size_t samples, std::uint64_t seed, bool corrupted) {
  if (samples == 0) throw PreconditionError("two_line_coset_model: samples must be positive");
  Rng rng(seed);
  CosetModel model;
  auto member = [](NormClass cls) {
    return [cls](const Scalar& s) {
      if (s.is_zero()) return false;
      return norm_class_of(s) == cls;
    };
  };
  const Rational inv_theta_coeff(1, 2);  // 2^(-1/4) = 2^(3/4) / 2
  for (std::size_t i = 0; i < samples; ++i) {
    const Rational q5 = i == 0 ? Rational(1) : rng.nonzero_rational(12, 6);
    const Rational q4 = rng.nonzero_rational(12, 6);
    const Rational q2 = rng.nonzero_rational(12, 6);
    const Rational q3 = rng.nonzero_rational(12, 6);
    model.x5.emplace_back(q5);
    model.x4.emplace_back(Quartic::monomial(q4, corrupted ? 1 : 2));
    model.y2.emplace_back(Quartic::monomial(q2, 1));
    model.y3.emplace_back(Quartic::monomial(q3 * inv_theta_coeff, 3));
  }
  model.rep_x4 = Quartic::monomial(1, 2);
  model.rep_y2 = Quartic::theta();
  model.rep_y3 = Quartic::monomial(inv_theta_coeff, 3);
  model.in_x4 = member(NormClass::Root2QStar);
  model.in_x5 = member(NormClass::QStar);
  model.in_y2 = member(NormClass::QuarticQStar);
  model.in_y3 = member(NormClass::InvQuarticQStar);
  return model;
}

CosetReport coset_closure_check(const CosetModel& model, std::size_t max_recorded) {
  CosetReport report;
  auto check = [&](const std::string& rule, std::vector<Scalar> inputs, const Scalar& value,
                   const std::function<bool(const Scalar&)>& member) {
    ++report.checks;
    if (member(value)) return;
    ++report.violation_count;
    if (report.violations.size() < max_recorded) report.violations.push_back({rule, std::move(inputs), value});
  };
  struct Named {
    const char* name;
    const std::vector<Scalar>* values;
    const std::function<bool(const Scalar&)>* member;
  };
  const Named x4{"X4", &model.x4, &model.in_x4}, x5{"X5", &model.x5, &model.in_x5};
  const Named y2{"Y2", &model.y2, &model.in_y2}, y3{"Y3", &model.y3, &model.in_y3};

  for (const Named& xi : {x4, x5}) {
    for (const auto& x : *xi.values)
      for (const auto& a : model.y2)
        for (const auto& b : model.y3)
          check(std::string("h(") + xi.name + "|Y2,Y3)", {x, a, b}, transfer(TransferKind::H, x, a, b), *xi.member);
  }
  for (const Named& yj : {y2, y3}) {
    for (const auto& y : *yj.values)
      for (const auto& a : model.x4)
        for (const auto& b : model.x5)
          check(std::string("h(") + yj.name + "|X4,X5)", {y, a, b}, transfer(TransferKind::H, y, a, b), *yj.member);
  }
  for (const Named& xi : {x4, x5}) {
    for (const Named& yj : {y2, y3}) {
      for (const auto& x : *xi.values)
        for (const auto& a : *yj.values)
          for (const auto& b : *yj.values)
            check(std::string("m(") + xi.name + "|" + yj.name + ")", {x, a, b}, transfer(TransferKind::M, x, a, b),
                  *xi.member);
    }
  }
  for (const Named& yj : {y2, y3}) {
    for (const Named& xi : {x4, x5}) {
      for (const auto& y : *yj.values)
        for (const auto& a : *xi.values)
          for (const auto& b : *xi.values)
            check(std::string("m(") + yj.name + "|" + xi.name + ")", {y, a, b}, transfer(TransferKind::M, y, a, b),
                  *yj.member);
    }
  }
  check("1 in X5", {}, Scalar(1), model.in_x5);
  for (const Named& cls : {x4, x5, y2, y3}) {
    for (const auto& a : *cls.values)
      for (const auto& b : *cls.values) check(std::string(cls.name) + "/" + cls.name, {a, b}, a / b, model.in_x5);
  }
  for (const auto& [name, rep] : {std::pair<const char*, const Scalar*>{"X4", &model.rep_x4},
                                  {"Y2", &model.rep_y2},
                                  {"Y3", &model.rep_y3}}) {
    const Scalar sq = *rep * *rep;
    check(std::string("rep(") + name + ")^4", {*rep}, sq * sq, model.in_x5);
  }
  return report;
}

namespace {

std::optional<Scalar> exact_sqrt(const Scalar& d) {
  auto r = d.rational_value();
  if (!r) return std::nullopt;
  if (auto s = r->sqrt_exact()) return Scalar(*s);
  if (auto s = (*r / Rational(2)).sqrt_exact()) return Scalar(Quartic::monomial(*s, 2));
  return std::nullopt;
}

// Roots of c t^2 + b t + a on one axis, using known roots when available.
std::vector<Scalar> axis_roots(const Scalar& c, const Scalar& b, const Scalar& a, const std::vector<Scalar>& known) {
  std::vector<Scalar> roots;
  if (c.is_zero()) {
    if (!b.is_zero()) roots.push_back(-a / b);
    return roots;
  }
  if (!known.empty()) {
    roots.push_back(known[0]);
    roots.push_back(-b / c - known[0]);
  } else {
    const Scalar disc = b * b - Scalar(4) * c * a;
    const int sg = disc.sign();
    if (sg < 0) return roots;
    if (sg == 0) {
      roots.push_back(-b / (Scalar(2) * c));
      return roots;
    }
    auto root = exact_sqrt(disc);
    if (!root) throw NotExact("two_line_trace: axis intersection outside the supported field");
    roots.push_back((-b + *root) / (Scalar(2) * c));
    roots.push_back((-b - *root) / (Scalar(2) * c));
  }
  if (roots.size() == 2 && roots[0] == roots[1]) roots.pop_back();
  return roots;
}

}  // namespace

TwoLineTrace two_line_trace(const Hypersphere& circle, std::span<const Point> known) {
  if (circle.dim() != 2) throw PreconditionError("two_line_trace: circle must be planar");
  TwoLineTrace trace;
  std::vector<Scalar> known_x, known_y;
  for (const auto& p : known) {
    if (!on_sphere(p, circle)) throw PreconditionError("two_line_trace: known point is not on the circle");
    if (p.is_infinity()) continue;
    if (p[1].is_zero()) known_x.push_back(p[0]);
    if (p[0].is_zero()) known_y.push_back(p[1]);
  }
  const Scalar& c = circle.c();
  const Scalar& a = circle.a();
  const Scalar& b0 = circle.b()[0];
  const Scalar& b1 = circle.b()[1];
  std::vector<Point> pts;
  auto add_point = [&](Point p) {
    for (const auto& q : pts) {
      if (q == p) return;
    }
    pts.push_back(std::move(p));
  };
  if (c.is_zero() && a.is_zero() && (b0.is_zero() || b1.is_zero())) {
    trace.whole_axis = true;
    add_point(Point{Scalar(0), Scalar(0)});
    add_point(Point::infinity(2));
    trace.colors = b0.is_zero() ? std::vector<int>{1, 4, 5} : std::vector<int>{1, 2, 3};
    for (auto& p : pts) trace.points.push_back({p, 1});
    return trace;
  }
  for (const auto& x : axis_roots(c, b0, a, known_x)) add_point(Point{x, Scalar(0)});
  for (const auto& y : axis_roots(c, b1, a, known_y)) add_point(Point{Scalar(0), y});
  if (c.is_zero()) add_point(Point::infinity(2));
  for (auto& p : pts) {
    const int color = *two_line_axis_color(p);
    trace.points.push_back({std::move(p), color});
  }
  trace.colors = distinct_colors(trace.points);
  return trace;
}

TwoLineReport two_line_sharpness(std::span<const ColoredPoint> samples, unsigned threads, std::size_t max_recorded) {
  const std::size_t total = samples.size();
  for (const auto& cp : samples) {
    auto color = two_line_axis_color(cp.point);
    if (!color || *color != cp.color) throw PreconditionError("two_line_sharpness: samples must be colored axis points");
  }
  if (threads == 0) threads = 1;
  if (total < 3) return {};
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total - 2));

  struct Local {
    TwoLineReport report;
    std::vector<std::vector<std::size_t>> subsets;
  };
  std::vector<Local> locals(threads);
  auto worker = [&](unsigned t) {
    Local& local = locals[t];
    for (std::size_t i = t; i + 3 <= total; i += threads) {
      for (std::size_t j = i + 1; j < total; ++j) {
        for (std::size_t k = j + 1; k < total; ++k) {
          const std::array<Point, 3> three{samples[i].point, samples[j].point, samples[k].point};
          auto s = try_sphere_through(three);
          if (!s) continue;
          ++local.report.circles;
          const TwoLineTrace tr = two_line_trace(*s, three);
          const int colors = static_cast<int>(tr.colors.size());
          local.report.max_colors = std::max(local.report.max_colors, colors);
          if (colors > 3) {
            ++local.report.violation_count;
            if (local.subsets.size() < max_recorded) {
              local.subsets.push_back({i, j, k});
              local.report.violations.push_back(PolychromaticWitness{*s, tr.points, tr.colors, {i, j, k}});
            }
          }
        }
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  TwoLineReport out;
  for (auto& l : locals) {
    out.circles += l.report.circles;
    out.max_colors = std::max(out.max_colors, l.report.max_colors);
    out.violation_count += l.report.violation_count;
    for (auto& v : l.report.violations) out.violations.push_back(std::move(v));
  }
  std::sort(out.violations.begin(), out.violations.end(),
            [](const auto& a, const auto& b) { return a.defining < b.defining; });
  if (out.violations.size() > max_recorded) out.violations.erase(out.violations.begin() + static_cast<std::ptrdiff_t>(max_recorded), out.violations.end());
  return out;
}

}  // namespace polychrome
