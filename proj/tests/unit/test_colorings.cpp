#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "polychrome/colorings.hpp"
#include "polychrome/error.hpp"

using namespace polychrome;

namespace {

Point pt(Scalar x, Scalar y) { return Point{std::move(x), std::move(y)}; }
const Scalar th{Quartic::theta()};

}  // namespace

TEST_CASE("flag coloring of the plane") {
  const ProceduralColoring c(FlagInversive{2});
  CHECK(c.k() == 4);
  CHECK(c.color_of(pt(0, 0)) == 1);
  CHECK(c.color_of(Point::infinity(2)) == 2);
  CHECK(c.color_of(pt(Scalar(Rational(-5, 3)), 0)) == 3);
  CHECK(c.color_of(pt(7, 1)) == 4);
  CHECK(c.class_size(1) == 1u);
  CHECK_FALSE(c.class_size(3).has_value());
  CHECK_THROWS_AS(c.color_of(Point{Scalar(1), Scalar(2), Scalar(3)}), PreconditionError);
}

TEST_CASE("two-line coloring classes") {
  const ProceduralColoring c(TwoLine{false});
  CHECK(c.k() == 5);
  CHECK(c.color_of(pt(0, th)) == 2);
  CHECK(c.color_of(pt(0, Scalar(Quartic::monomial(Rational(1, 2), 3)))) == 3);
  CHECK(c.color_of(pt(Scalar(Quartic::monomial(Rational(-3), 2)), 0)) == 4);
  CHECK(c.color_of(pt(Scalar(Rational(-2, 9)), 0)) == 5);
  CHECK(c.color_of(pt(0, 1)) == 1);
  CHECK(c.color_of(pt(0, 0)) == 1);
  CHECK(c.color_of(Point::infinity(2)) == 1);
  CHECK_THROWS_AS(c.color_of(pt(1, 1)), PreconditionError);
  const ProceduralColoring e(TwoLine{true});
  CHECK(e.color_of(pt(1, 1)) == 1);
  CHECK(e.is_two_line_extended());
}

TEST_CASE("euclidean flag coloring of S^2") {
  const ProceduralColoring c(FlagEuclidean{2});
  CHECK(c.k() == 3);
  CHECK(c.color_of(Point{Scalar(-1), Scalar(0), Scalar(0)}) == 1);
  CHECK(c.color_of(Point{Scalar(Rational(3, 5)), Scalar(Rational(4, 5)), Scalar(0)}) == 2);
  CHECK(c.color_of(Point{Scalar(0), Scalar(0), Scalar(1)}) == 3);
  CHECK_THROWS_AS(c.color_of(Point{Scalar(1), Scalar(1), Scalar(0)}), PreconditionError);
}

TEST_CASE("generic points coloring") {
  const auto pts = generic_position_points(2, 4, 9);
  REQUIRE(pts.size() == 4);
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      for (std::size_t c = b + 1; c < pts.size(); ++c)
        for (std::size_t d = c + 1; d < pts.size(); ++d) CHECK_FALSE(oracle::cocircular(pts[a], pts[b], pts[c], pts[d]));
  const ProceduralColoring c(GenericPoints{2, 5, pts});
  CHECK(c.color_of(pts[2]) == 3);
  CHECK(c.color_of(Point{Scalar(Rational(1, 1000)), Scalar(7)}) == 5);
  CHECK(c.class_size(2) == 1u);
  CHECK_THROWS_AS(c.sample_class(1, 2, 1), PreconditionError);

  std::vector<Point> bad{Point{Scalar(1), Scalar(0)}, Point{Scalar(0), Scalar(1)}, Point{Scalar(-1), Scalar(0)},
                         Point{Scalar(0), Scalar(-1)}};
  CHECK_THROWS_AS(ProceduralColoring(GenericPoints{2, 5, bad}), PreconditionError);
}

TEST_CASE("euclidean generic points are independent and on the sphere") {
  const auto pts = generic_position_points(2, 5, 4, GenericMode::Euclidean);
  for (const auto& p : pts) CHECK(squared_norm(p.coords()) == Scalar(1));
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      for (std::size_t c = b + 1; c < pts.size(); ++c) {
        const Scalar m[3][3] = {{pts[a][0], pts[a][1], pts[a][2]},
                                {pts[b][0], pts[b][1], pts[b][2]},
                                {pts[c][0], pts[c][1], pts[c][2]}};
        CHECK_FALSE(oracle::det3(m).is_zero());
      }
}

TEST_CASE("sampling is deterministic, distinct and class-correct") {
  for (const ProceduralColoring& c : {ProceduralColoring(FlagInversive{3}), ProceduralColoring(TwoLine{false}),
                                      ProceduralColoring(FlagEuclidean{2})}) {
    for (int color = 1; color <= c.k(); ++color) {
      const std::size_t want = c.class_size(color).value_or(12);
      const auto a = c.sample_class(color, want, 77);
      const auto b = c.sample_class(color, want, 77);
      CHECK(a == b);
      CHECK(a.size() == want);
      std::set<std::string> seen;
      for (const auto& p : a) {
        CHECK(c.color_of(p) == color);
        seen.insert(p.to_string());
      }
      CHECK(seen.size() == a.size());
    }
  }
}

TEST_CASE("stereographic points are rational points of the sphere") {
  const Point p = stereographic_point({Rational(1, 2), Rational(2)});
  CHECK(squared_norm(p.coords()) == Scalar(1));
  for (const auto& q : rational_sphere_points(3, 20, 2)) CHECK(squared_norm(q.coords()) == Scalar(1));
}

TEST_CASE("point list with background") {
  const ProceduralColoring c(PointListBackground{2, {Point{Scalar(0), Scalar(0)}}, {2}, 1});
  CHECK(c.color_of(Point{Scalar(0), Scalar(0)}) == 2);
  CHECK(c.color_of(Point::infinity(2)) == 1);
}

TEST_CASE("config validation") {
  ColoredConfig cfg{2, 3, {{Point{Scalar(0), Scalar(0)}, 1}, {Point{Scalar(0), Scalar(0)}, 2}}};
  CHECK_THROWS_AS(cfg.validate(), PreconditionError);
  cfg.entries[1].point = Point::infinity(2);
  CHECK_NOTHROW(cfg.validate());
  cfg.entries[1].color = 4;
  CHECK_THROWS_AS(cfg.validate(), PreconditionError);
}
