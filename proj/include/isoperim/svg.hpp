#pragma once

#include <optional>
#include <string>

#include "isoperim/geometry.hpp"

namespace isoperim {

/// SVG with one <path> per component plus two <circle>s: the barycentric
/// disk and the container of diameter D (the shape's own diameter when D is
/// not given), centered at the midpoint of the diameter pair.
/// 100 SVG units per length unit, y axis pointing up.
std::string render_svg(const Shape& shape, std::optional<double> container_diameter = {});

}  // namespace isoperim
