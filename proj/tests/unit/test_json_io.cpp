#include "doctest.h"
#include "polychrome/error.hpp"
#include "polychrome/json_io.hpp"

using namespace polychrome;

TEST_CASE("scalars round trip") {
  for (const Scalar& s : {Scalar(Rational(-7, 3)), Scalar(5), Scalar(Quartic(1, Rational(1, 2), 0, -3)),
                          Scalar::from_double(0.25)}) {
    CHECK(scalar_from_json(to_json(s)) == s);
  }
  CHECK(to_json(Scalar(Rational(4, 2))) == Json("2"));
  CHECK(scalar_from_json(Json(3)) == Scalar(3));
  CHECK(scalar_from_json(Json(0.5)).is_float());
  CHECK_THROWS_AS(scalar_from_json(Json("1/0")), Error);
}

TEST_CASE("points and spheres round trip") {
  const Point p{Scalar(1), Scalar(Quartic::theta())};
  CHECK(point_from_json(to_json(p)) == p);
  CHECK(point_from_json(to_json(Point::infinity(3))) == Point::infinity(3));
  CHECK(point_from_json(parse_json(R"({"infinity": true})")) == Point::infinity(2));
  const Hypersphere s = Hypersphere::from_center({Scalar(1), Scalar(2)}, Scalar(Rational(9, 4)));
  CHECK(sphere_from_json(to_json(s)) == s);
}

TEST_CASE("configs and colorings round trip") {
  const std::string text = R"({"n": 2, "k": 3, "points": [
    {"coords": ["1/2", "0"], "color": 1}, {"infinity": true, "color": 2}, {"coords": [0, 1], "color": 3}]})";
  const ColoredConfig cfg = config_from_json(parse_json(text));
  CHECK(cfg.entries.size() == 3);
  CHECK(cfg.entries[1].point.is_infinity());
  CHECK(config_from_json(to_json(cfg)).entries[0].point == cfg.entries[0].point);
  for (const ProceduralColoring& c : {ProceduralColoring(FlagInversive{3}), ProceduralColoring(TwoLine{true}),
                                      ProceduralColoring(FlagEuclidean{2})}) {
    CHECK(to_json(coloring_from_json(to_json(c))) == to_json(c));
  }
  CHECK(coloring_from_json(parse_json(R"({"kind": "two-line-extended"})")).is_two_line_extended());
}

TEST_CASE("witnesses round trip") {
  const auto r = find_polychromatic(ProceduralColoring(TwoLine{true}), 4, 100, 1);
  REQUIRE(r.witness.has_value());
  const PolychromaticWitness back = witness_from_json(to_json(*r.witness));
  CHECK(witness_valid(back));
  CHECK(dump_json(to_json(back)) == dump_json(to_json(*r.witness)));
}

TEST_CASE("malformed documents raise ParseError") {
  CHECK_THROWS_AS(parse_json("{"), ParseError);
  CHECK_THROWS_AS(config_from_json(parse_json(R"({"n": 2})")), ParseError);
  CHECK_THROWS_AS(coloring_from_json(parse_json(R"({"kind": "spiral"})")), ParseError);
  CHECK_THROWS_AS(point_from_json(parse_json(R"({"coords": "x"})")), ParseError);
}
