#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "polychrome/error.hpp"

namespace polychrome::tools {

namespace {

constexpr double kSize = 640.0;
constexpr double kMargin = 48.0;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

const char* color_hex(int color) { return kPalette[static_cast<std::size_t>(color - 1) % std::size(kPalette)]; }

struct View {
  double min_x = -1, max_x = 1, min_y = -1, max_y = 1;
  double scale = 1;

  void fit() {
    const double w = std::max(max_x - min_x, 1e-9);
    const double h = std::max(max_y - min_y, 1e-9);
    scale = (kSize - 2 * kMargin) / std::max(w, h);
  }
  [[nodiscard]] double sx(double x) const { return kMargin + (x - min_x) * scale; }
  [[nodiscard]] double sy(double y) const { return kSize - kMargin - (y - min_y) * scale; }
};

std::optional<Hypersphere> planar(const AnySphere& s) {
  if (const auto* h = std::get_if<Hypersphere>(&s)) return *h;
  return std::get<SubSphere>(s).as_hypersphere();
}

}  // namespace

std::string render_svg(const ColoredConfig& config, const std::vector<Highlight>& highlights) {
  if (config.n != 2) throw PreconditionError("plot: only planar configurations can be drawn");
  View view;
  bool first = true;
  auto include = [&](double x, double y) {
    if (first) {
      view.min_x = view.max_x = x;
      view.min_y = view.max_y = y;
      first = false;
    }
    view.min_x = std::min(view.min_x, x);
    view.max_x = std::max(view.max_x, x);
    view.min_y = std::min(view.min_y, y);
    view.max_y = std::max(view.max_y, y);
  };
  for (const auto& e : config.entries) {
    if (e.point.is_finite()) include(e.point[0].to_double(), e.point[1].to_double());
  }
  for (const auto& h : highlights) {
    auto s = planar(h.sphere);
    if (s && !s->is_flat()) {
      const Vector c = s->center();
      const double r = std::sqrt(s->radius_sq().to_double());
      include(c[0].to_double() - r, c[1].to_double() - r);
      include(c[0].to_double() + r, c[1].to_double() + r);
    }
  }
  if (first) include(0, 0);
  const double pad = 0.05 * std::max({view.max_x - view.min_x, view.max_y - view.min_y, 1.0});
  view.min_x -= pad;
  view.max_x += pad;
  view.min_y -= pad;
  view.max_y += pad;
  view.fit();

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize << "\" viewBox=\"0 0 "
      << kSize << ' ' << kSize << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (view.min_x <= 0 && view.max_x >= 0) {
    out << "<line x1=\"" << num(view.sx(0)) << "\" y1=\"0\" x2=\"" << num(view.sx(0)) << "\" y2=\"" << kSize
        << "\" stroke=\"#dddddd\"/>\n";
  }
  if (view.min_y <= 0 && view.max_y >= 0) {
    out << "<line x1=\"0\" y1=\"" << num(view.sy(0)) << "\" x2=\"" << kSize << "\" y2=\"" << num(view.sy(0))
        << "\" stroke=\"#dddddd\"/>\n";
  }
  for (const auto& h : highlights) {
    auto s = planar(h.sphere);
    if (!s) continue;
    if (s->is_flat()) {
      // b0 x + b1 y + a = 0, drawn across the visible box.
      const double b0 = s->b()[0].to_double(), b1 = s->b()[1].to_double(), a = s->a().to_double();
      double x1, y1, x2, y2;
      if (std::fabs(b1) > std::fabs(b0)) {
        x1 = view.min_x;
        x2 = view.max_x;
        y1 = -(a + b0 * x1) / b1;
        y2 = -(a + b0 * x2) / b1;
      } else {
        y1 = view.min_y;
        y2 = view.max_y;
        x1 = -(a + b1 * y1) / b0;
        x2 = -(a + b1 * y2) / b0;
      }
      out << "<line class=\"witness\" x1=\"" << num(view.sx(x1)) << "\" y1=\"" << num(view.sy(y1)) << "\" x2=\""
          << num(view.sx(x2)) << "\" y2=\"" << num(view.sy(y2)) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    } else {
      const Vector c = s->center();
      const double r = std::sqrt(s->radius_sq().to_double());
      out << "<circle class=\"witness\" cx=\"" << num(view.sx(c[0].to_double())) << "\" cy=\""
          << num(view.sy(c[1].to_double())) << "\" r=\"" << num(r * view.scale)
          << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
  }
  auto on_highlight = [&](const Point& p) {
    for (const auto& h : highlights) {
      for (const auto& cp : h.points) {
        if (cp.point == p) return true;
      }
    }
    return false;
  };
  for (const auto& e : config.entries) {
    const bool mark = on_highlight(e.point);
    const char* stroke = mark ? " stroke=\"black\" stroke-width=\"2\"" : "";
    if (e.point.is_infinity()) {
      out << "<g class=\"infinity\"><circle cx=\"" << num(kSize - 24) << "\" cy=\"24\" r=\"6\" fill=\""
          << color_hex(e.color) << "\"" << stroke << "/><text x=\"" << num(kSize - 44) << "\" y=\"29\" font-size=\"14\">"
          << "&#8734;</text></g>\n";
      continue;
    }
    out << "<circle cx=\"" << num(view.sx(e.point[0].to_double())) << "\" cy=\"" << num(view.sy(e.point[1].to_double()))
        << "\" r=\"" << (mark ? 6 : 4) << "\" fill=\"" << color_hex(e.color) << "\"" << stroke << "/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace polychrome::tools
