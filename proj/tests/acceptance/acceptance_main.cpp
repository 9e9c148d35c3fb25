// Runs the acceptance criteria, one PASS/FAIL line each, with wall-clock
// limits. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "cli.hpp"
#include "oracles.hpp"
#include "polychrome/chromatic.hpp"
#include "polychrome/euclid.hpp"
#include "polychrome/json_io.hpp"
#include "polychrome/moebius.hpp"
#include "polychrome/random.hpp"
#include "polychrome/wcp.hpp"

using namespace polychrome;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

Point pt(Scalar x, Scalar y) { return Point{std::move(x), std::move(y)}; }

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Rational point on the circle with center c and radius r via the unit
// circle parametrization, or on the line through c with direction r.
Point on_circle(Rng& rng, const Rational& cx, const Rational& cy, const Rational& r) {
  const Rational t = rng.rational(12, 5);
  const Rational den = t * t + Rational(1);
  return pt(Scalar(cx + r * (Rational(1) - t * t) / den), Scalar(cy + r * Rational(2) * t / den));
}

std::vector<Point> concyclic_quadruple(Rng& rng) {
  std::vector<Point> q;
  if (rng.below(4) == 0) {
    // Extended line with infinity.
    const Rational dx = rng.rational(4, 2), dy = rng.nonzero_rational(4, 2);
    const Rational px = rng.rational(4, 2), py = rng.rational(4, 2);
    q.push_back(Point::infinity(2));
    while (q.size() < 4) {
      const Rational t = rng.rational(9, 3);
      Point p = pt(Scalar(px + t * dx), Scalar(py + t * dy));
      if (std::find(q.begin(), q.end(), p) == q.end()) q.push_back(p);
    }
  } else {
    Rational r = rng.nonzero_rational(5, 2);
    const Rational cx = rng.rational(5, 2), cy = rng.rational(5, 2);
    while (q.size() < 4) {
      Point p = on_circle(rng, cx, cy, r);
      if (std::find(q.begin(), q.end(), p) == q.end()) q.push_back(p);
    }
  }
  return q;
}

std::vector<Point> random_quadruple(Rng& rng) {
  std::vector<Point> q;
  while (q.size() < 4) {
    Point p = rng.below(6) == 0 ? Point::infinity(2) : pt(Scalar(rng.rational(4, 2)), Scalar(rng.rational(4, 2)));
    if (std::find(q.begin(), q.end(), p) == q.end()) q.push_back(p);
  }
  return q;
}

Outcome predicate_equivalence() {
  Rng rng(101);
  std::size_t agree = 0, cyclic = 0, with_inf = 0;
  const std::size_t total = 10000;
  for (std::size_t i = 0; i < total; ++i) {
    auto q = (i % 3 == 0) ? concyclic_quadruple(rng) : random_quadruple(rng);
    // Rotate so infinity visits every slot.
    std::rotate(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(i % 4), q.end());
    const bool c = concyclic(q[0], q[1], q[2], q[3]);
    const auto cr = cross_ratio(q[0], q[1], q[2], q[3]);
    const bool real = cr && cr->im.is_zero();
    agree += (c == real && c == oracle::cocircular(q[0], q[1], q[2], q[3])) ? 1 : 0;
    cyclic += c ? 1 : 0;
    for (const auto& p : q) with_inf += p.is_infinity() ? 1 : 0;
  }
  return {agree == total, fmt("%zu/%zu agree, %zu concyclic, %zu with infinity", agree, total, cyclic, with_inf)};
}

Outcome power_condition_check() {
  Rng rng(102);
  std::size_t agree = 0, holds = 0, total = 0;
  while (total < 1000) {
    const Rational x = rng.nonzero_rational(9, 4), x2 = rng.nonzero_rational(9, 4), y = rng.nonzero_rational(9, 4);
    Rational y2 = (total % 2 == 0) ? x * x2 / y : rng.nonzero_rational(9, 4);
    if (x == x2 || y == y2) continue;
    ++total;
    const bool p = power_condition(Scalar(x), Scalar(x2), Scalar(y), Scalar(y2));
    const bool c = concyclic(pt(Scalar(x), 0), pt(Scalar(x2), 0), pt(0, Scalar(y)), pt(0, Scalar(y2)));
    agree += p == c ? 1 : 0;
    holds += p ? 1 : 0;
  }
  return {agree == total, fmt("%zu/%zu agree, %zu satisfy x x' = y y'", agree, total, holds)};
}

PrimitiveMap random_primitive(Rng& rng) {
  if (rng.coin()) {
    const Rational r = rng.nonzero_rational(5, 3);
    return SphereInversion{pt(Scalar(rng.rational(4, 2)), Scalar(rng.rational(4, 2))), Scalar(r * r)};
  }
  return HyperplaneReflection{{Scalar(rng.rational(3, 2)), Scalar(rng.nonzero_rational(3, 2))},
                              Scalar(rng.rational(3, 2))};
}

Outcome moebius_invariance() {
  Rng rng(103);
  std::size_t images_ok = 0, commute_ok = 0, commute_checks = 0;
  for (int i = 0; i < 1000; ++i) {
    MoebiusMap f(2);
    const auto count = rng.between(1, 6);
    for (int j = 0; j < count; ++j) f.then(random_primitive(rng));
    const auto q = concyclic_quadruple(rng);
    std::vector<Point> img;
    for (const auto& p : q) img.push_back(f.apply(p));
    images_ok += concyclic(img[0], img[1], img[2], img[3]) ? 1 : 0;
    const Hypersphere s = sphere_through(std::vector<Point>{q[0], q[1], q[2]});
    const Hypersphere fs = f.image_sphere(s);
    for (int k = 0; k < 3; ++k) {
      const Point p = k == 0 ? q[3] : pt(Scalar(rng.rational(6, 3)), Scalar(rng.rational(6, 3)));
      ++commute_checks;
      commute_ok += on_sphere(p, s) == on_sphere(f.apply(p), fs) ? 1 : 0;
    }
  }
  std::size_t involution_ok = 0, involution_checks = 0;
  for (int i = 0; i < 100; ++i) {
    const PrimitiveMap g = random_primitive(rng);
    for (int j = 0; j < 50; ++j) {
      const Point p = j == 0 ? Point::infinity(2) : pt(Scalar(rng.rational(8, 3)), Scalar(rng.rational(8, 3)));
      ++involution_checks;
      involution_ok += polychrome::apply(g, polychrome::apply(g, p)) == p ? 1 : 0;
    }
  }
  const bool ok = images_ok == 1000 && commute_ok == commute_checks && involution_ok == involution_checks;
  return {ok, fmt("images %zu/1000 concyclic, on_sphere commutes %zu/%zu, involutions %zu/%zu", images_ok, commute_ok,
                  commute_checks, involution_ok, involution_checks)};
}

Outcome flag_sharpness() {
  std::string detail;
  bool ok = true;
  for (std::size_t n : {2u, 3u}) {
    const auto cfg = sample_config(ProceduralColoring(FlagInversive{n}), 30, 7);
    SearchStats st;
    const auto w = max_polychromatic(cfg, n - 1, threads(), &st);
    ok = ok && w.colors.size() <= n + 1 && witness_valid(w);
    detail += fmt("%sn=%zu: %zu points, %llu spheres, max %zu colors", detail.empty() ? "" : "; ", n, cfg.entries.size(),
                  static_cast<unsigned long long>(st.spheres_examined), w.colors.size());
  }
  return {ok, detail};
}

Outcome two_line_sharpness_check() {
  const auto cfg = sample_config(ProceduralColoring(TwoLine{false}), 40, 7);
  const auto rep = two_line_sharpness(cfg.entries, threads());
  return {rep.violation_count == 0 && rep.max_colors <= 3,
          fmt("%zu points, %llu circles, max %d line colors, %llu violations", cfg.entries.size(),
              static_cast<unsigned long long>(rep.circles), rep.max_colors,
              static_cast<unsigned long long>(rep.violation_count))};
}

Outcome coset_structure() {
  const CosetModel model = two_line_coset_model(50, 9);
  const auto good = coset_closure_check(model);
  const auto bad = coset_closure_check(two_line_coset_model(50, 9, true));
  const bool one_in_x5 = model.in_x5(Scalar(1)) && model.x5.front() == Scalar(1);
  auto fourth = [](const Scalar& s) { return s * s * s * s; };
  const bool powers = model.in_x5(fourth(model.rep_x4)) && model.in_x5(fourth(model.rep_y2)) &&
                      model.in_x5(fourth(model.rep_y3));
  const bool ok = good.violation_count == 0 && bad.violation_count >= 1 && one_in_x5 && powers;
  return {ok, fmt("%llu checks, %llu violations; corrupted model %llu violations; 1 in X5: %s; rep^4 in X5: %s",
                  static_cast<unsigned long long>(good.checks), static_cast<unsigned long long>(good.violation_count),
                  static_cast<unsigned long long>(bad.violation_count), one_in_x5 ? "yes" : "no",
                  powers ? "yes" : "no")};
}

Outcome extended_two_line_witness() {
  const ProceduralColoring c(TwoLine{true});
  const auto r = find_polychromatic(c, 4, 1000, 1);
  bool ok = r.witness && witness_valid(*r.witness, &c) && r.witness->colors == std::vector<int>{1, 2, 3, 4};
  const Scalar th(Quartic::theta());
  const std::vector<Point> doc{pt(0, th), pt(0, Scalar(Quartic::monomial(Rational(1, 2), 3))),
                               pt(Scalar(Quartic::monomial(Rational(1), 2)), 0),
                               pt(Scalar(Quartic::monomial(Rational(3, 2), 2)), Scalar(Quartic::monomial(Rational(1, 2), 3)))};
  std::set<int> doc_colors;
  for (const auto& p : doc) doc_colors.insert(c.color_of(p));
  const bool doc_ok = concyclic(doc[0], doc[1], doc[2], doc[3]) && doc_colors == std::set<int>{1, 2, 3, 4};
  ok = ok && doc_ok;
  return {ok, fmt("search witness %s after %llu spheres; documented instance %s", r.witness ? "found" : "missing",
                  static_cast<unsigned long long>(r.stats.spheres_examined), doc_ok ? "verified" : "rejected")};
}

Outcome separating_circles() {
  std::size_t valid = 0, brute = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto pts = generic_position_points(2, 5, mix_seed(104, i));
    std::vector<ColoredPoint> cps;
    for (std::size_t j = 0; j < 5; ++j) cps.push_back({pts[j], static_cast<int>(j) + 1});
    valid += separation_valid(separating_circle_5pts(cps)) ? 1 : 0;
    const auto b = separating_sphere_bruteforce(cps);
    brute += (b && separation_valid(*b)) ? 1 : 0;
  }
  std::size_t space = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto pts = generic_position_points(3, 6, mix_seed(105, i));
    std::vector<ColoredPoint> cps;
    for (std::size_t j = 0; j < 6; ++j) cps.push_back({pts[j], static_cast<int>(j) + 1});
    const auto b = separating_sphere_bruteforce(cps);
    space += (b && separation_valid(*b)) ? 1 : 0;
  }
  return {valid == 1000 && brute == 1000 && space == 100,
          fmt("plane: %zu/1000 valid, brute force %zu/1000; n=3: %zu/100", valid, brute, space)};
}

Outcome euclidean_analogue() {
  Rng rng(106);
  std::size_t nonempty = 0;
  const std::size_t pairs = 10000;
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::size_t n = 2 + rng.below(3);
    auto flat = [&](std::size_t d) {
      for (;;) {
        Matrix b(d, Vector(n + 1));
        for (auto& v : b)
          for (auto& x : v) x = rng.rational(5, 3);
        if (rank(b) == d) return GreatFlat(b);
      }
    };
    const GreatFlat s = flat(n), c = flat(2);
    const auto g = great_intersection(s, c);
    nonempty += (!is_zero_vector(g.direction) && s.contains(g.direction) && c.contains(g.direction)) ? 1 : 0;
  }
  const auto cfg = sample_config(ProceduralColoring(FlagEuclidean{2}), 25, 11);
  SearchStats st;
  const auto w = max_colors_great(cfg, &st);
  const bool ok = nonempty == pairs && st.spheres_examined >= 1000 && w.colors.size() <= 2;
  return {ok, fmt("%zu/%zu intersections; flag S^2: %llu great circles, max %zu colors", nonempty, pairs,
                  static_cast<unsigned long long>(st.spheres_examined), w.colors.size())};
}

Outcome cgp_and_refutation() {
  Rng rng(107);
  std::size_t agree = 0, total = 0;
  for (; total < 2000; ++total) {
    std::vector<Point> m;
    const std::size_t size = 1 + rng.below(8);
    while (m.size() < size) {
      Point p = rng.below(10) == 0 ? Point::infinity(2) : pt(Scalar(rng.between(-2, 2)), Scalar(rng.between(-2, 2)));
      if (std::find(m.begin(), m.end(), p) == m.end()) m.push_back(p);
    }
    agree += circular_general_position(m).verdict == oracle::cgp(m) ? 1 : 0;
  }
  const Point inf = Point::infinity(2);
  const std::vector<Point> five{pt(0, 0), pt(1, 0), inf, pt(0, 1), pt(1, 2)};
  const bool five_ok = circular_general_position(five).verdict;
  const bool four_false = !circular_general_position(std::vector<Point>(five.begin(), five.begin() + 4)).verdict;
  const ProceduralColoring c(TwoLine{true});
  const FiniteImageMap map(c, five, {{1, 0}, {2, 1}, {3, 2}, {4, 3}, {5, 4}});
  const auto r = five_point_refute(map, 1000, 1);
  std::set<std::string> distinct;
  for (const auto& p : r.images) distinct.insert(p.to_string());
  const bool refute_ok = witness_valid(r.witness, &c) && distinct.size() == 4 && !r.images_concyclic &&
                         !concyclic(r.images);
  return {agree == total && five_ok && four_false && refute_ok,
          fmt("%zu/%zu sets agree with brute force; {0,1,inf,i,1+2i}: %s; refutation %s", agree, total,
              five_ok ? "true" : "false", refute_ok ? "revalidated" : "invalid")};
}

Outcome sharp_map() {
  const std::vector<Point> m{pt(0, 0), pt(1, 0), Point::infinity(2), pt(0, 1)};
  const auto map = build_sharp_map(m);
  const auto r = wcp_check(map, sample_circles(1000, 6, 108));
  return {r.pass && r.circles_checked == 1000,
          fmt("%llu circles checked, %s", static_cast<unsigned long long>(r.circles_checked),
              r.pass ? "no violations" : "violation found")};
}

std::string cli_out(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  tools::run(args, out, err);
  return out.str();
}

Outcome determinism() {
  std::size_t same = 0, total = 0;
  auto check = [&](const std::string& a, const std::string& b) {
    ++total;
    same += (a == b && !a.empty()) ? 1 : 0;
  };
  const auto cfg = sample_config(ProceduralColoring(FlagInversive{2}), 15, 3);
  check(dump_json(to_json(max_polychromatic(cfg, 1, 1))), dump_json(to_json(max_polychromatic(cfg, 1, threads()))));
  check(dump_json(to_json(max_polychromatic(cfg, 1, 1))), dump_json(to_json(max_polychromatic(cfg, 1, 4))));
  const ProceduralColoring tl(TwoLine{true});
  check(dump_json(to_json(*find_polychromatic(tl, 4, 100, 5).witness)),
        dump_json(to_json(*find_polychromatic(tl, 4, 100, 5).witness)));
  const auto tcfg = sample_config(ProceduralColoring(TwoLine{false}), 8, 3);
  check(dump_json(to_json(two_line_sharpness(tcfg.entries, 1))), dump_json(to_json(two_line_sharpness(tcfg.entries, 4))));
  const std::vector<std::vector<std::string>> runs{
      {"verify-construction", "--kind", "flag", "--n", "2", "--samples", "10", "--seed", "4"},
      {"verify-construction", "--kind", "generic", "--n", "2", "--samples", "10", "--seed", "4"},
      {"verify-construction", "--kind", "two-line", "--samples", "8", "--seed", "4"},
      {"verify-construction", "--kind", "flag-euclidean", "--n", "2", "--samples", "10", "--seed", "4"},
      {"search-procedural", "--coloring", "two-line-extended", "--target", "4", "--seed", "2"},
      {"euclid", "intersect", "--trials", "30", "--seed", "4"},
      {"wcp", "sharp", "--circles", "50", "--seed", "4"}};
  for (const auto& args : runs) {
    check(cli_out(args), cli_out(args));
    if (args[0] == "verify-construction") {
      auto serial = args, parallel = args;
      serial.insert(serial.end(), {"--threads", "1"});
      parallel.insert(parallel.end(), {"--threads", "4"});
      check(cli_out(serial), cli_out(parallel));
    }
  }
  return {same == total, fmt("%zu/%zu reruns byte-identical", same, total)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "predicate equivalence", 10, predicate_equivalence},
      {2, "power condition", 5, power_condition_check},
      {3, "moebius invariance", 30, moebius_invariance},
      {4, "flag-coloring sharpness", 60, flag_sharpness},
      {5, "two-line sharpness", 120, two_line_sharpness_check},
      {6, "coset structure", 10, coset_structure},
      {7, "extended two-line 4-color witness", 10, extended_two_line_witness},
      {8, "separating circle", 120, separating_circles},
      {9, "euclidean analogue", 60, euclidean_analogue},
      {10, "cgp and five-point refutation", 30, cgp_and_refutation},
      {11, "sharp 4-point map", 60, sharp_map},
      {12, "determinism", 120, determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));
  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_s;
    const bool pass = o.ok && in_time;
    failed += pass ? 0 : 1;
    std::printf("AC%-2d %s  %-34s %7.2fs / %3.0fs  %s%s\n", c.id, pass ? "PASS" : "FAIL", c.name, secs, c.limit_s,
                o.detail.c_str(), in_time ? "" : " [time limit exceeded]");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
