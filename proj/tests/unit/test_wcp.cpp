#include "doctest.h"
#include "oracles.hpp"
#include "polychrome/error.hpp"
#include "polychrome/random.hpp"
#include "polychrome/wcp.hpp"

using namespace polychrome;

namespace {

Point pt(int x, int y) { return Point{Scalar(x), Scalar(y)}; }
const Point inf = Point::infinity(2);

}  // namespace

TEST_CASE("circular general position examples") {
  CHECK_FALSE(circular_general_position(std::vector<Point>{pt(0, 0), pt(1, 0), inf, pt(0, 1)}).verdict);
  CHECK(circular_general_position(std::vector<Point>{pt(0, 0), pt(1, 0), inf, pt(0, 1), pt(1, 2)}).verdict);
  const auto r = circular_general_position(std::vector<Point>{pt(0, 0), pt(0, 1), pt(0, 2), inf, pt(1, 0)});
  CHECK_FALSE(r.verdict);
  REQUIRE(r.circle.has_value());
  CHECK(r.on_points == std::vector<std::size_t>{0, 1, 2, 3});
  const auto small = circular_general_position(std::vector<Point>{pt(3, 3)});
  CHECK_FALSE(small.verdict);
  CHECK(small.circle.has_value());
}

TEST_CASE("circular general position agrees with the 4-subset oracle") {
  Rng rng(61);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<Point> m;
    const std::size_t size = 1 + rng.below(8);
    while (m.size() < size) {
      Point p = rng.below(10) == 0 ? inf : Point{Scalar(rng.between(-2, 2)), Scalar(rng.between(-2, 2))};
      if (std::find(m.begin(), m.end(), p) == m.end()) m.push_back(p);
    }
    const auto r = circular_general_position(m);
    CHECK(r.verdict == oracle::cgp(m));
    CHECK(r.verdict == !r.circle.has_value());
  }
}

TEST_CASE("sampled circles carry their points") {
  const auto s = sample_circles(40, 5, 3);
  REQUIRE(s.size() == 40);
  for (const auto& c : s) {
    CHECK(c.points.size() == 5);
    for (const auto& p : c.points) CHECK(on_sphere(p, c.circle));
  }
  CHECK_THROWS_AS(sample_circles(1, 3, 1), PreconditionError);
}

TEST_CASE("sharp map passes; concyclic image rejected") {
  const std::vector<Point> m{pt(0, 0), pt(1, 0), inf, pt(0, 1)};
  const auto map = build_sharp_map(m);
  CHECK(wcp_check(map, sample_circles(300, 6, 9)).pass);
  const std::vector<Point> cyc{pt(1, 0), pt(0, 1), pt(-1, 0), pt(0, -1)};
  CHECK_THROWS_AS(build_sharp_map(cyc), PreconditionError);
}

TEST_CASE("wcp_check reports a non-concyclic image") {
  // Four listed points on the unit circle sent to 0, 1, infinity, i.
  const std::vector<Point> dom{pt(1, 0), pt(0, 1), pt(-1, 0), pt(0, -1)};
  const ProceduralColoring c(PointListBackground{2, dom, {1, 2, 3, 4}, 5});
  const FiniteImageMap map(c, {pt(0, 0), pt(1, 0), inf, pt(0, 1), pt(5, 5)}, {{1, 0}, {2, 1}, {3, 2}, {4, 3}, {5, 4}});
  const std::vector<CircleSample> s{{sphere_through(std::vector<Point>{dom[0], dom[1], dom[2]}), dom}};
  const auto r = wcp_check(map, s);
  CHECK_FALSE(r.pass);
  REQUIRE(r.violation.has_value());
  CHECK(r.violation->sample == 0);
  const FiniteImageMap constant(c, {pt(0, 0)}, {{1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}});
  CHECK(wcp_check(constant, s).pass);
}

TEST_CASE("five point refutation") {
  const ProceduralColoring c(TwoLine{true});
  const std::vector<Point> img{pt(0, 0), pt(1, 0), inf, pt(0, 1), pt(1, 2)};
  const FiniteImageMap map(c, img, {{1, 0}, {2, 1}, {3, 2}, {4, 3}, {5, 4}});
  const auto r = five_point_refute(map, 200, 1);
  CHECK(witness_valid(r.witness, &c));
  CHECK(r.images.size() == 4);
  CHECK_FALSE(r.images_concyclic);
  CHECK_FALSE(oracle::cocircular(r.images[0], r.images[1], r.images[2], r.images[3]));

  const FiniteImageMap sharp = build_sharp_map(std::vector<Point>{pt(0, 0), pt(1, 0), inf, pt(0, 1)});
  CHECK_THROWS_AS(five_point_refute(sharp), PreconditionError);
  const std::vector<Point> bad{pt(0, 0), pt(0, 1), pt(0, 2), inf, pt(1, 0)};
  CHECK_THROWS_AS(five_point_refute(FiniteImageMap(c, bad, {{1, 0}, {2, 1}, {3, 2}, {4, 3}, {5, 4}})),
                  PreconditionError);
}
