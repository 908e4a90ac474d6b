#pragma once

// File formats: shape JSON, report JSON/CSV, profile and trace CSV,
// optimizer parameter and config JSON.

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "isoperim/constructions.hpp"
#include "isoperim/functionals.hpp"
#include "isoperim/optimality.hpp"
#include "isoperim/optimizer.hpp"

namespace isoperim {

using Json = nlohmann::json;

/// {"components": [{"vertices": [[x, y], ...]}, ...]}, CCW, no closing
/// repeat. Throws ErrorKind::Structural on schema violations.
Shape shape_from_json(const Json& j);
Json shape_to_json(const Shape& shape);

/// Parses and validates (including the O(n²) simplicity check when
/// `check_simple`). JSON syntax errors surface as ErrorKind::Structural.
Shape read_shape(std::istream& in, bool check_simple = false);
Shape read_shape_file(const std::string& path, bool check_simple = false);

Json report_to_json(const FunctionalReport& report);
std::string report_csv_header();
std::string report_csv_row(const FunctionalReport& report);

void write_profile_csv(std::ostream& out, const CurvatureProfile& profile);
void write_trace_csv(std::ostream& out, const OptimTrace& trace);

Json param_to_json(const ShapeParam& param);
ShapeParam param_from_json(const Json& j);
Json config_to_json(const OptimConfig& config);

Json competitor_to_json(const TwoDiskCompetitor& c);

/// Shortest round-tripping decimal form of a double.
std::string format_double(double v);

}  // namespace isoperim
