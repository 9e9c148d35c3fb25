#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "polychrome/chromatic.hpp"
#include "polychrome/error.hpp"
#include "polychrome/random.hpp"

using namespace polychrome;

namespace {

Point pt(Scalar x, Scalar y) { return Point{std::move(x), std::move(y)}; }

ColoredConfig random_config(Rng& rng, std::size_t size, int k) {
  ColoredConfig cfg{2, k, {}};
  while (cfg.entries.size() < size) {
    Point p = rng.below(10) == 0 ? Point::infinity(2) : pt(Scalar(rng.rational(3, 1)), Scalar(rng.rational(3, 1)));
    bool fresh = true;
    for (const auto& e : cfg.entries) fresh = fresh && !(e.point == p);
    if (fresh) cfg.entries.push_back({p, static_cast<int>(rng.between(1, k))});
  }
  return cfg;
}

}  // namespace

TEST_CASE("max_polychromatic agrees with brute force on small configs") {
  Rng rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const ColoredConfig cfg = random_config(rng, 3 + rng.below(6), 5);
    const auto w = max_polychromatic(cfg, 1);
    CHECK(w.colors.size() == oracle::max_circle_colors(cfg));
    CHECK(witness_valid(w));
  }
}

TEST_CASE("max_polychromatic is independent of the thread count") {
  const ColoredConfig cfg = sample_config(ProceduralColoring(FlagInversive{2}), 12, 4);
  SearchStats s1, s4;
  const auto a = max_polychromatic(cfg, 1, 1, &s1);
  const auto b = max_polychromatic(cfg, 1, 4, &s4);
  CHECK(a.defining == b.defining);
  CHECK(a.colors == b.colors);
  CHECK(s1.spheres_examined == s4.spheres_examined);
  CHECK(a.colors.size() == 3);
}

TEST_CASE("sphere enumeration deduplicates") {
  ColoredConfig cfg{2, 4, {}};
  for (int i : {1, 2, 3, 4}) cfg.entries.push_back({pt(Scalar(i), 0), i});
  // Four collinear points: a single extended line.
  CHECK(enumerate_spheres(cfg, 1).size() == 1);
  cfg.entries.push_back({pt(0, 1), 1});
  CHECK(enumerate_spheres(cfg, 1).size() == 1 + 6);
  // Points (dimension 0 spheres) are pairs.
  CHECK(enumerate_spheres(cfg, 0).size() == 10);
}

TEST_CASE("witness validation catches tampering") {
  ColoredConfig cfg{2, 3, {{pt(1, 0), 1}, {pt(0, 1), 2}, {pt(-1, 0), 3}, {pt(5, 5), 1}}};
  auto w = max_polychromatic(cfg, 1);
  CHECK(witness_valid(w));
  w.points.push_back({pt(5, 5), 1});
  CHECK_FALSE(witness_valid(w));
}

TEST_CASE("find_polychromatic on the extended two-line coloring") {
  const ProceduralColoring c(TwoLine{true});
  const auto r = find_polychromatic(c, 4, 100, 1);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->colors == std::vector<int>{1, 2, 3, 4});
  CHECK(witness_valid(*r.witness, &c));
  const auto again = find_polychromatic(c, 4, 100, 1);
  CHECK(again.witness->defining == r.witness->defining);
}

TEST_CASE("flag coloring yields no n+2 colored witness") {
  const ProceduralColoring c(FlagInversive{2});
  const auto r = find_polychromatic(c, 4, 2000, 3);
  CHECK_FALSE(r.witness.has_value());
  CHECK(r.stats.spheres_examined <= 2000);
  CHECK_THROWS_AS(find_polychromatic(c, 0, 10, 1), PreconditionError);
}

TEST_CASE("five point separating circle") {
  const std::vector<ColoredPoint> five{
      {pt(0, 0), 1}, {pt(0, 1), 2}, {pt(0, 3), 3}, {pt(-2, 0), 4}, {pt(2, 0), 5}};
  const auto w = separating_circle_5pts(five);
  CHECK(separation_valid(w));
  std::set<int> def;
  for (const auto& cp : w.defining) def.insert(cp.color);
  CHECK(def == std::set<int>{2, 4, 5});
  CHECK(separated(w.separated_pair[0].point, w.separated_pair[1].point, w.sphere));
}

TEST_CASE("separation with infinity and random configurations") {
  Rng rng(41);
  int done = 0;
  while (done < 100) {
    std::vector<ColoredPoint> pts;
    for (int c = 1; c <= 5; ++c) {
      Point p = (c == 3 && rng.coin()) ? Point::infinity(2) : pt(Scalar(rng.rational(5, 2)), Scalar(rng.rational(5, 2)));
      pts.push_back({p, c});
    }
    std::vector<Point> raw;
    for (const auto& cp : pts) raw.push_back(cp.point);
    bool generic = true;
    for (std::size_t i = 0; i < 5 && generic; ++i)
      for (std::size_t j = i + 1; j < 5; ++j)
        if (raw[i] == raw[j]) generic = false;
    if (generic) {
      for (std::size_t skip = 0; skip < 5 && generic; ++skip) {
        std::vector<Point> q;
        for (std::size_t i = 0; i < 5; ++i)
          if (i != skip) q.push_back(raw[i]);
        if (oracle::cocircular(q[0], q[1], q[2], q[3])) generic = false;
      }
    }
    if (!generic) {
      CHECK_THROWS(separating_circle_5pts(pts));
      continue;
    }
    ++done;
    CHECK(separation_valid(separating_circle_5pts(pts)));
    const auto brute = separating_sphere_bruteforce(pts);
    REQUIRE(brute.has_value());
    CHECK(separation_valid(*brute));
  }
}

TEST_CASE("transfer maps") {
  CHECK(transfer(TransferKind::H, Scalar(2), Scalar(3), Scalar(4)) == Scalar(6));
  CHECK(transfer(TransferKind::M, Scalar(2), Scalar(3), Scalar(6)) == Scalar(4));
  CHECK_THROWS(transfer(TransferKind::H, Scalar(0), Scalar(1), Scalar(1)));
}

TEST_CASE("coset closure holds and detects corruption") {
  const auto good = coset_closure_check(two_line_coset_model(12, 5));
  CHECK(good.violation_count == 0);
  CHECK(good.checks > 0);
  const auto bad = coset_closure_check(two_line_coset_model(12, 5, true));
  CHECK(bad.violation_count > 0);
  CHECK(bad.violations.size() <= 100);
}

TEST_CASE("two-line trace of a circle") {
  const Scalar th(Quartic::theta());
  const std::vector<Point> known{pt(0, th), pt(Scalar(1), 0), pt(Scalar(-1), 0)};
  const auto tr = two_line_trace(sphere_through(known), known);
  CHECK_FALSE(tr.whole_axis);
  std::set<int> colors(tr.colors.begin(), tr.colors.end());
  CHECK(colors.count(5) == 1);
  CHECK(colors.count(2) == 1);
  // The other Y intersection is -1/theta, color 3.
  CHECK(colors.count(3) == 1);
  const auto axis = two_line_trace(Hypersphere::hyperplane({Scalar(0), Scalar(1)}, Scalar(0)));
  CHECK(axis.whole_axis);
  CHECK(axis.colors == std::vector<int>{1, 4, 5});
}

TEST_CASE("two-line sharpness on a small sample") {
  const auto cfg = sample_config(ProceduralColoring(TwoLine{false}), 6, 2);
  const auto serial = two_line_sharpness(cfg.entries, 1);
  const auto parallel = two_line_sharpness(cfg.entries, 3);
  CHECK(serial.violation_count == 0);
  CHECK(serial.max_colors <= 3);
  CHECK(serial.circles == parallel.circles);
  CHECK(serial.max_colors == parallel.max_colors);
}
