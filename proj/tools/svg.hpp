#pragma once

#include <string>
#include <vector>

#include "polychrome/chromatic.hpp"

namespace polychrome::tools {

struct Highlight {
  AnySphere sphere;
  std::vector<ColoredPoint> points;
};

/// Planar config as a deterministic SVG document; infinity is drawn as a
/// glyph in the top-right margin.
std::string render_svg(const ColoredConfig& config, const std::vector<Highlight>& highlights = {});

}  // namespace polychrome::tools
