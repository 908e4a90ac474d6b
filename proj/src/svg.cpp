#include "isoperim/svg.hpp"

#include <algorithm>
#include <sstream>

#include "isoperim/functionals.hpp"
#include "isoperim/io.hpp"

namespace isoperim {

namespace {

constexpr double kScale = 100.0;

std::string num(double v) { return format_double(std::round(v * 1e4) / 1e4 + 0.0); }

}  // namespace

std::string render_svg(const Shape& shape, std::optional<double> container_diameter) {
  const Disk bary = barycentric_disk(shape);
  const DiameterPair pair = diameter_pair(shape);
  const Disk container{(pair.a + pair.b) * 0.5,
                       0.5 * container_diameter.value_or(pair.length)};

  double lo_x = std::min(bary.center.x - bary.radius, container.center.x - container.radius);
  double hi_x = std::max(bary.center.x + bary.radius, container.center.x + container.radius);
  double lo_y = std::min(bary.center.y - bary.radius, container.center.y - container.radius);
  double hi_y = std::max(bary.center.y + bary.radius, container.center.y + container.radius);
  for (const Point& p : all_vertices(shape)) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  const double margin = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y);
  lo_x -= margin; hi_x += margin; lo_y -= margin; hi_y += margin;

  auto sx = [&](double x) { return num(x * kScale); };
  auto sy = [&](double y) { return num(-y * kScale); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(lo_x * kScale) << ' '
     << num(-hi_y * kScale) << ' ' << num((hi_x - lo_x) * kScale) << ' '
     << num((hi_y - lo_y) * kScale) << "\" width=\"" << num((hi_x - lo_x) * kScale)
     << "\" height=\"" << num((hi_y - lo_y) * kScale) << "\">\n";
  for (const auto& c : shape.components) {
    os << "  <path class=\"component\" fill=\"#3b6fb6\" fill-opacity=\"0.6\" stroke=\"#1d3a63\" "
          "stroke-width=\"1\" d=\"";
    for (std::size_t i = 0; i < c.size(); ++i) {
      os << (i == 0 ? "M" : " L") << sx(c[i].x) << ' ' << sy(c[i].y);
    }
    os << " Z\"/>\n";
  }
  os << "  <circle class=\"barycentric\" cx=\"" << sx(bary.center.x) << "\" cy=\""
     << sy(bary.center.y) << "\" r=\"" << num(bary.radius * kScale)
     << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
  os << "  <circle class=\"container\" cx=\"" << sx(container.center.x) << "\" cy=\""
     << sy(container.center.y) << "\" r=\"" << num(container.radius * kScale)
     << "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"2 3\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace isoperim
