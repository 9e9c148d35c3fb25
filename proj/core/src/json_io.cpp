#include "polychrome/json_io.hpp"

#include <variant>

#include "polychrome/error.hpp"

namespace polychrome {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object with key '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw ParseError(std::string("key '") + key + "' must be an array");
  return a;
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

Json witness_points(const std::vector<ColoredPoint>& pts) {
  Json out = Json::array();
  for (const auto& cp : pts) out.push_back({{"point", to_json(cp.point)}, {"color", cp.color}});
  return out;
}

std::vector<ColoredPoint> witness_points_from(const Json& a) {
  if (!a.is_array()) throw ParseError("points must be an array");
  std::vector<ColoredPoint> out;
  for (const auto& e : a) out.push_back({point_from_json(field(e, "point")), field(e, "color").get<int>()});
  return out;
}

Json points_json(std::span<const Point> pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(to_json(p));
  return out;
}

std::vector<Point> points_from(const Json& a) {
  if (!a.is_array()) throw ParseError("expected an array of points");
  std::vector<Point> out;
  for (const auto& e : a) out.push_back(point_from_json(e));
  return out;
}

Json flat_json(const Flat& f) {
  Json basis = Json::array();
  for (const auto& v : f.basis) basis.push_back(to_json(v));
  return {{"base", to_json(f.base)}, {"basis", basis}};
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Scalar& s) {
  switch (s.backend()) {
    case Backend::Rational:
      return s.as_rational().to_string();
    case Backend::Quartic2: {
      Json a = Json::array();
      for (const auto& c : s.as_quartic().coeffs()) a.push_back(c.to_string());
      return a;
    }
    case Backend::Float64:
      return s.as_float();
  }
  return nullptr;
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) return Scalar::from_double(j.get<double>());
  if (j.is_array() && j.size() == 4) {
    std::array<Rational, 4> c;
    for (std::size_t i = 0; i < 4; ++i) {
      if (!j[i].is_string() && !j[i].is_number_integer()) throw ParseError("quartic coefficients must be rational strings");
      c[i] = j[i].is_string() ? Rational::parse(j[i].get<std::string>()) : Rational(j[i].get<std::int64_t>());
    }
    return Quartic(c[0], c[1], c[2], c[3]);
  }
  throw ParseError("invalid scalar: " + j.dump());
}

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(to_json(s));
  return a;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of scalars");
  Vector v;
  for (const auto& e : j) v.push_back(scalar_from_json(e));
  return v;
}

Json to_json(const Point& p) {
  if (p.is_infinity()) return {{"infinity", true}, {"dim", p.dim()}};
  return {{"coords", to_json(p.coords())}};
}

Point point_from_json(const Json& j) {
  return guarded([&] {
    if (j.is_object() && j.contains("infinity")) {
      if (!j["infinity"].is_boolean() || !j["infinity"].get<bool>()) throw ParseError("infinity must be true");
      const std::size_t dim = j.contains("dim") ? j["dim"].get<std::size_t>() : 2;
      return Point::infinity(dim);
    }
    return Point(vector_from_json(field(j, "coords")));
  });
}

Json to_json(const Hypersphere& s) { return {{"c", to_json(s.c())}, {"b", to_json(s.b())}, {"a", to_json(s.a())}}; }

Hypersphere sphere_from_json(const Json& j) {
  return guarded([&] {
    return Hypersphere(scalar_from_json(field(j, "c")), vector_from_json(field(j, "b")), scalar_from_json(field(j, "a")));
  });
}

Json to_json(const SubSphere& s) {
  return {{"dim", s.dim()}, {"carrier", flat_json(s.carrier())}, {"surface", to_json(s.surface())}};
}

Json to_json(const AnySphere& s) {
  return std::visit([](const auto& x) { return to_json(x); }, s);
}

AnySphere any_sphere_from_json(const Json& j) {
  return guarded([&]() -> AnySphere {
    if (j.is_object() && j.contains("surface")) {
      const Json& carrier = field(j, "carrier");
      Matrix basis;
      for (const auto& v : array_field(carrier, "basis")) basis.push_back(vector_from_json(v));
      return SubSphere(Flat{vector_from_json(field(carrier, "base")), std::move(basis)},
                       sphere_from_json(field(j, "surface")), field(j, "dim").get<std::size_t>());
    }
    return sphere_from_json(j);
  });
}

Json to_json(const MoebiusMap& f) {
  Json factors = Json::array();
  for (const auto& g : f.factors()) {
    factors.push_back(std::visit(
        overloaded{
            [](const SphereInversion& inv) -> Json {
              return {{"inversion", {{"center", to_json(inv.center)}, {"r2", to_json(inv.radius_sq)}}}};
            },
            [](const HyperplaneReflection& r) -> Json {
              return {{"reflection", {{"normal", to_json(r.normal)}, {"offset", to_json(r.offset)}}}};
            }},
        g));
  }
  return {{"dim", f.dim()}, {"factors", factors}};
}

MoebiusMap moebius_from_json(const Json& j) {
  return guarded([&] {
    std::vector<PrimitiveMap> factors;
    for (const auto& g : array_field(j, "factors")) {
      if (g.contains("inversion")) {
        const Json& inv = g["inversion"];
        factors.emplace_back(SphereInversion{point_from_json(field(inv, "center")), scalar_from_json(field(inv, "r2"))});
      } else if (g.contains("reflection")) {
        const Json& r = g["reflection"];
        factors.emplace_back(
            HyperplaneReflection{vector_from_json(field(r, "normal")), scalar_from_json(field(r, "offset"))});
      } else {
        throw ParseError("factor must be an inversion or a reflection");
      }
    }
    std::size_t dim = 0;
    if (j.contains("dim")) {
      dim = j["dim"].get<std::size_t>();
    } else if (!factors.empty()) {
      dim = primitive_dim(factors.front());
    } else {
      throw ParseError("empty map needs a 'dim'");
    }
    return MoebiusMap(dim, std::move(factors));
  });
}

Json to_json(const ProceduralColoring& c) {
  return std::visit(overloaded{
                        [](const FlagInversive& r) -> Json { return {{"kind", "flag"}, {"n", r.n}}; },
                        [](const GenericPoints& r) -> Json {
                          return {{"kind", r.euclidean ? "generic-euclidean" : "generic"},
                                  {"n", r.n},
                                  {"k", r.k},
                                  {"points", points_json(r.points)}};
                        },
                        [](const TwoLine& r) -> Json {
                          return {{"kind", r.extended ? "two-line-extended" : "two-line"}};
                        },
                        [](const FlagEuclidean& r) -> Json { return {{"kind", "flag-euclidean"}, {"n", r.n}}; },
                        [](const PointListBackground& r) -> Json {
                          return {{"kind", "point-list"},
                                  {"n", r.n},
                                  {"points", points_json(r.points)},
                                  {"colors", r.colors},
                                  {"background", r.background}};
                        }},
                    c.rule());
}

ProceduralColoring coloring_from_json(const Json& j) {
  return guarded([&] {
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "flag") return ProceduralColoring(FlagInversive{field(j, "n").get<std::size_t>()});
    if (kind == "two-line") {
      const bool extended = j.contains("extended") && j["extended"].get<bool>();
      return ProceduralColoring(TwoLine{extended});
    }
    if (kind == "two-line-extended") return ProceduralColoring(TwoLine{true});
    if (kind == "flag-euclidean") return ProceduralColoring(FlagEuclidean{field(j, "n").get<std::size_t>()});
    if (kind == "generic" || kind == "generic-euclidean") {
      return ProceduralColoring(GenericPoints{field(j, "n").get<std::size_t>(), field(j, "k").get<std::size_t>(),
                                              points_from(field(j, "points")), kind == "generic-euclidean"});
    }
    if (kind == "point-list") {
      return ProceduralColoring(PointListBackground{field(j, "n").get<std::size_t>(), points_from(field(j, "points")),
                                                    field(j, "colors").get<std::vector<int>>(),
                                                    field(j, "background").get<int>()});
    }
    throw ParseError("unknown coloring kind '" + kind + "'");
  });
}

Json to_json(const ColoredPoint& cp) {
  Json j = to_json(cp.point);
  j["color"] = cp.color;
  return j;
}

Json to_json(const ColoredConfig& c) {
  Json pts = Json::array();
  for (const auto& e : c.entries) {
    Json p = e.point.is_infinity() ? Json{{"infinity", true}} : Json{{"coords", to_json(e.point.coords())}};
    p["color"] = e.color;
    pts.push_back(p);
  }
  return {{"n", c.n}, {"k", c.k}, {"points", pts}};
}

ColoredConfig config_from_json(const Json& j) {
  return guarded([&] {
    ColoredConfig c;
    c.n = field(j, "n").get<std::size_t>();
    c.k = field(j, "k").get<int>();
    for (const auto& e : array_field(j, "points")) {
      Point p = e.contains("infinity") ? Point::infinity(c.n) : Point(vector_from_json(field(e, "coords")));
      c.entries.push_back({std::move(p), field(e, "color").get<int>()});
    }
    c.validate();
    return c;
  });
}

Json to_json(const PolychromaticWitness& w) {
  return {{"sphere", to_json(w.sphere)},
          {"points", witness_points(w.points)},
          {"colors", w.colors},
          {"defining", w.defining}};
}

PolychromaticWitness witness_from_json(const Json& j) {
  return guarded([&] {
    std::vector<std::size_t> defining;
    if (j.contains("defining")) defining = j["defining"].get<std::vector<std::size_t>>();
    return PolychromaticWitness{any_sphere_from_json(field(j, "sphere")), witness_points_from(field(j, "points")),
                                field(j, "colors").get<std::vector<int>>(), std::move(defining)};
  });
}

Json to_json(const SeparationWitness& w) {
  Json sides = Json::array();
  for (const auto& cp : w.separated_pair) sides.push_back(to_string(side(cp.point, w.sphere)));
  return {{"sphere", to_json(w.sphere)},
          {"defining", witness_points(w.defining)},
          {"separated", witness_points({w.separated_pair.begin(), w.separated_pair.end()})},
          {"sides", sides}};
}

SeparationWitness separation_from_json(const Json& j) {
  return guarded([&] {
    auto pair = witness_points_from(field(j, "separated"));
    if (pair.size() != 2) throw ParseError("separated must hold two points");
    return SeparationWitness{sphere_from_json(field(j, "sphere")), witness_points_from(field(j, "defining")),
                             {pair[0], pair[1]}};
  });
}

Json to_json(const CosetReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) {
    Json inputs = Json::array();
    for (const auto& s : x.inputs) inputs.push_back(to_json(s));
    v.push_back({{"rule", x.rule}, {"inputs", inputs}, {"value", to_json(x.value)}});
  }
  return {{"checks", r.checks}, {"violation_count", r.violation_count}, {"violations", v}};
}

Json to_json(const TwoLineReport& r) {
  Json v = Json::array();
  for (const auto& w : r.violations) v.push_back(to_json(w));
  return {{"circles", r.circles}, {"max_colors", r.max_colors}, {"violation_count", r.violation_count}, {"violations", v}};
}

Json to_json(const SearchStats& s) {
  return {{"spheres_examined", s.spheres_examined}, {"points_sampled", s.points_sampled}};
}

Json to_json(const GreatFlat& f) {
  Json basis = Json::array();
  for (const auto& v : f.basis()) basis.push_back(to_json(v));
  return {{"basis", basis}};
}

GreatFlat great_flat_from_json(const Json& j) {
  return guarded([&] {
    Matrix basis;
    for (const auto& v : array_field(j, "basis")) basis.push_back(vector_from_json(v));
    return GreatFlat(std::move(basis));
  });
}

Json to_json(const GreatIntersection& g) {
  return {{"direction", to_json(g.direction)}, {"points", points_json(g.points)}, {"exact", g.exact}};
}

Json to_json(const FiniteImageMap& m) {
  Json table = Json::object();
  for (const auto& [color, idx] : m.table()) table[std::to_string(color)] = idx;
  return {{"image", points_json(m.image())}, {"coloring", to_json(m.coloring())}, {"table", table}};
}

FiniteImageMap image_map_from_json(const Json& j) {
  return guarded([&] {
    std::map<int, std::size_t> table;
    const Json& t = field(j, "table");
    if (!t.is_object()) throw ParseError("table must be an object");
    for (const auto& [key, value] : t.items()) {
      try {
        table[std::stoi(key)] = value.get<std::size_t>();
      } catch (const std::logic_error&) {
        throw ParseError("table keys must be colors");
      }
    }
    return FiniteImageMap(coloring_from_json(field(j, "coloring")), points_from(field(j, "image")), std::move(table));
  });
}

Json to_json(const CgpReport& r) {
  Json j{{"verdict", r.verdict}};
  if (r.circle) {
    j["circle"] = to_json(*r.circle);
    j["on_points"] = r.on_points;
  }
  return j;
}

Json to_json(const WcpViolation& v) {
  return {{"sample", v.sample},
          {"sphere", to_json(v.circle)},
          {"points", witness_points(v.domain_points)},
          {"images", points_json(v.images)},
          {"non_concyclic", v.non_concyclic}};
}

Json to_json(const FivePointRefutation& r) {
  Json j = to_json(r.witness);
  j["images"] = points_json(r.images);
  j["images_concyclic"] = r.images_concyclic;
  return j;
}

}  // namespace polychrome
