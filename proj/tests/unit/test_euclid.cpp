#include "doctest.h"
#include "oracles.hpp"
#include "polychrome/chromatic.hpp"
#include "polychrome/error.hpp"
#include "polychrome/euclid.hpp"
#include "polychrome/random.hpp"

using namespace polychrome;

namespace {

Vector vec(std::initializer_list<int> xs) {
  Vector v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("great flat validation") {
  CHECK_THROWS_AS(GreatFlat({vec({1, 0, 0}), vec({2, 0, 0})}), PreconditionError);
  const GreatFlat f({vec({1, 0, 0}), vec({0, 1, 0})});
  CHECK(f.contains(vec({3, -2, 0})));
  CHECK_FALSE(f.contains(vec({0, 0, 1})));
}

TEST_CASE("great intersection of coordinate planes") {
  const GreatFlat s({vec({1, 0, 0}), vec({0, 1, 0})});
  const GreatFlat c({vec({1, 0, 0}), vec({0, 0, 1})});
  const auto g = great_intersection(s, c);
  CHECK(g.exact);
  CHECK(g.points[0] == Point{Scalar(1), Scalar(0), Scalar(0)});
  CHECK(g.points[1] == Point{Scalar(-1), Scalar(0), Scalar(0)});
}

TEST_CASE("great intersections of random pairs lie in both flats") {
  Rng rng(51);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 2 + rng.below(3);
    auto flat = [&](std::size_t d) {
      for (;;) {
        Matrix b(d, Vector(n + 1));
        for (auto& v : b)
          for (auto& x : v) x = rng.rational(4, 3);
        if (rank(b) == d) return GreatFlat(b);
      }
    };
    const GreatFlat s = flat(n), c = flat(2);
    const auto g = great_intersection(s, c);
    CHECK_FALSE(is_zero_vector(g.direction));
    CHECK(s.contains(g.direction));
    CHECK(c.contains(g.direction));
    if (g.exact) {
      CHECK(squared_norm(g.points[0].coords()) == Scalar(1));
      CHECK(s.contains(g.points[0].coords()));
    }
  }
}

TEST_CASE("great flat through sphere points") {
  const std::vector<Point> p{Point{Scalar(0), Scalar(1), Scalar(0)}};
  const GreatFlat f = great_flat_through(p, 2);
  CHECK(f.dim() == 2);
  CHECK(f.contains(p[0].coords()));
  const std::vector<Point> three{Point{Scalar(1), Scalar(0), Scalar(0)}, Point{Scalar(0), Scalar(1), Scalar(0)},
                                 Point{Scalar(0), Scalar(0), Scalar(1)}};
  CHECK_THROWS(great_flat_through(three, 2));
}

TEST_CASE("max_colors_great agrees with brute force") {
  Rng rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    const auto pts = rational_sphere_points(2, 4 + rng.below(6), rng.next());
    ColoredConfig cfg{3, 3, {}};
    for (const auto& p : pts) cfg.entries.push_back({p, static_cast<int>(rng.between(1, 3))});
    const auto w = max_colors_great(cfg);
    CHECK(w.colors.size() == oracle::max_great_colors(cfg));
    CHECK(witness_valid(w));
  }
  const auto flag = sample_config(ProceduralColoring(FlagEuclidean{2}), 8, 3);
  CHECK(max_colors_great(flag).colors.size() == oracle::max_great_colors(flag));
  CHECK(oracle::max_great_colors(flag) <= 2);
}
