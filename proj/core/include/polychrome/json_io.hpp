#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "polychrome/chromatic.hpp"
#include "polychrome/euclid.hpp"
#include "polychrome/moebius.hpp"
#include "polychrome/wcp.hpp"

namespace polychrome {

using Json = nlohmann::ordered_json;

/// Throws ParseError on malformed text.
Json parse_json(std::string_view text);
/// Two-space indented, trailing newline.
std::string dump_json(const Json& j);

// Rationals are "p/q" strings (integers as "p"), quartic elements arrays
// of four rational strings, Float64 values plain numbers. Integer JSON
// numbers are read as exact rationals.
Json to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);
Json to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json to_json(const Point& p);
Point point_from_json(const Json& j);
Json to_json(const Hypersphere& s);
Hypersphere sphere_from_json(const Json& j);
Json to_json(const SubSphere& s);
Json to_json(const AnySphere& s);
AnySphere any_sphere_from_json(const Json& j);

Json to_json(const MoebiusMap& f);
MoebiusMap moebius_from_json(const Json& j);

Json to_json(const ProceduralColoring& c);
ProceduralColoring coloring_from_json(const Json& j);
Json to_json(const ColoredConfig& c);
ColoredConfig config_from_json(const Json& j);
Json to_json(const ColoredPoint& cp);

Json to_json(const PolychromaticWitness& w);
PolychromaticWitness witness_from_json(const Json& j);
Json to_json(const SeparationWitness& w);
SeparationWitness separation_from_json(const Json& j);
Json to_json(const CosetReport& r);
Json to_json(const TwoLineReport& r);
Json to_json(const SearchStats& s);

Json to_json(const GreatFlat& f);
GreatFlat great_flat_from_json(const Json& j);
Json to_json(const GreatIntersection& g);

Json to_json(const FiniteImageMap& m);
FiniteImageMap image_map_from_json(const Json& j);
Json to_json(const CgpReport& r);
Json to_json(const WcpViolation& v);
Json to_json(const FivePointRefutation& r);

}  // namespace polychrome
