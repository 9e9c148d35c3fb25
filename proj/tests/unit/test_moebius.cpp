#include "doctest.h"
#include "oracles.hpp"
#include "polychrome/error.hpp"
#include "polychrome/moebius.hpp"
#include "polychrome/random.hpp"

using namespace polychrome;

namespace {

Point pt(Rational x, Rational y) { return Point{Scalar(std::move(x)), Scalar(std::move(y))}; }

PrimitiveMap random_primitive(Rng& rng) {
  if (rng.coin()) {
    Rational r = rng.nonzero_rational(4, 3);
    return SphereInversion{pt(rng.rational(4, 2), rng.rational(4, 2)), Scalar(r * r)};
  }
  return HyperplaneReflection{{Scalar(rng.rational(3, 2)), Scalar(rng.nonzero_rational(3, 2))},
                              Scalar(rng.rational(3, 2))};
}

}  // namespace

TEST_CASE("inversion swaps center and infinity") {
  const SphereInversion inv{pt(1, 1), Scalar(4)};
  CHECK(polychrome::apply(inv, pt(1, 1)) == Point::infinity(2));
  CHECK(polychrome::apply(inv, Point::infinity(2)) == pt(1, 1));
  CHECK(polychrome::apply(inv, pt(3, 1)) == pt(3, 1));
  CHECK(polychrome::apply(inv, pt(2, 1)) == pt(5, 1));
}

TEST_CASE("reflection fixes infinity and its mirror") {
  const HyperplaneReflection r{{Scalar(1), Scalar(1)}, Scalar(0)};
  CHECK(polychrome::apply(r, Point::infinity(2)) == Point::infinity(2));
  CHECK(polychrome::apply(r, pt(2, 3)) == pt(-3, -2));
  CHECK(polychrome::apply(r, pt(1, -1)) == pt(1, -1));
}

TEST_CASE("primitives are involutions") {
  Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    const PrimitiveMap f = random_primitive(rng);
    for (int j = 0; j < 10; ++j) {
      const Point p = pt(rng.rational(7, 3), rng.rational(7, 3));
      CHECK(polychrome::apply(f, polychrome::apply(f, p)) == p);
    }
  }
}

TEST_CASE("maps send circles to circles") {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    MoebiusMap f(2);
    const auto count = rng.between(1, 4);
    for (int j = 0; j < count; ++j) f.then(random_primitive(rng));
    const std::vector<Point> three{pt(rng.rational(5, 2), 0), pt(0, rng.nonzero_rational(5, 2)), pt(1, 1)};
    const auto s = try_sphere_through(three);
    if (!s) continue;
    const Hypersphere img = f.image_sphere(*s);
    for (const auto& p : three) CHECK(on_sphere(f.apply(p), img));
    const Point off = pt(rng.rational(9, 4), rng.rational(9, 4));
    CHECK(on_sphere(off, *s) == on_sphere(f.apply(off), img));
  }
}

TEST_CASE("inverse and compose") {
  Rng rng(23);
  MoebiusMap f(2), g(2);
  for (int j = 0; j < 3; ++j) f.then(random_primitive(rng));
  for (int j = 0; j < 2; ++j) g.then(random_primitive(rng));
  const MoebiusMap fg = compose(f, g);
  const MoebiusMap fi = inverse(f);
  for (int j = 0; j < 20; ++j) {
    const Point p = pt(rng.rational(9, 4), rng.rational(9, 4));
    CHECK(fg.apply(p) == f.apply(g.apply(p)));
    CHECK(fi.apply(f.apply(p)) == p);
  }
}

TEST_CASE("translation and dilation") {
  const MoebiusMap t = translation({Scalar(2), Scalar(-1)});
  CHECK(t.apply(pt(1, 1)) == pt(3, 0));
  CHECK(t.apply(Point::infinity(2)) == Point::infinity(2));
  const MoebiusMap d = dilation(2, Scalar(Rational(9, 4)));
  CHECK(d.apply(pt(4, 2)) == pt(9, Rational(9, 2)));
}

TEST_CASE("normalize sends p, q, r to 0, infinity, 1") {
  const Point p = pt(0, 0), q = pt(1, 0), r = pt(2, 0);
  const MoebiusMap f = normalize(p, q, r);
  CHECK(f.apply(p) == pt(0, 0));
  CHECK(f.apply(q) == Point::infinity(2));
  CHECK(f.apply(r) == pt(1, 0));
  // Orientation preserving: (z-p)/(z-q) (r-q)/(r-p) at z = i is (1-i)/4.
  CHECK(f.apply(pt(0, 1)) == pt(Rational(1, 4), Rational(-1, 4)));
  CHECK_THROWS_AS(normalize(pt(1, 2), pt(-1, 0), pt(3, 2)), NotExact);
  CHECK_THROWS_AS(normalize(p, p), PreconditionError);
}
