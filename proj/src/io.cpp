#include "isoperim/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace isoperim {

namespace {

Json point_json(Point p) { return Json::array({p.x, p.y}); }

Json nullable(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorKind::Structural, "shape JSON: " + what);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Shape shape_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("components") || !j["components"].is_array()) {
    schema_error("expected an object with a \"components\" array");
  }
  Shape shape;
  for (const auto& comp : j["components"]) {
    if (!comp.is_object() || !comp.contains("vertices") || !comp["vertices"].is_array()) {
      schema_error("each component needs a \"vertices\" array");
    }
    std::vector<Point> v;
    for (const auto& xy : comp["vertices"]) {
      if (!xy.is_array() || xy.size() != 2 || !xy[0].is_number() || !xy[1].is_number()) {
        schema_error("each vertex must be [x, y]");
      }
      v.push_back({xy[0].get<double>(), xy[1].get<double>()});
    }
    if (v.size() > 1 && v.front() == v.back()) {
      schema_error("first vertex repeated at the end");
    }
    shape.components.emplace_back(std::move(v));
  }
  return shape;
}

Json shape_to_json(const Shape& shape) {
  Json comps = Json::array();
  for (const auto& c : shape.components) {
    Json verts = Json::array();
    for (const Point& p : c.vertices()) verts.push_back(point_json(p));
    comps.push_back({{"vertices", std::move(verts)}});
  }
  return {{"components", std::move(comps)}};
}

Shape read_shape(std::istream& in, bool check_simple) {
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Structural, std::string("malformed JSON: ") + e.what());
  }
  Shape shape = shape_from_json(j);
  validate(shape, check_simple);
  return shape;
}

Shape read_shape_file(const std::string& path, bool check_simple) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return read_shape(in, check_simple);
}

Json report_to_json(const FunctionalReport& r) {
  Json j;
  j["area"] = r.area;
  j["perimeter"] = r.perimeter;
  j["barycenter"] = point_json(r.barycenter);
  j["diameter"] = r.diameter;
  j["delta"] = r.delta;
  j["lambda0"] = r.lambda0;
  j["fraenkel"] = nullable(r.fraenkel);
  j["fraenkel_center"] = std::isfinite(r.fraenkel_center.x)
                             ? point_json(r.fraenkel_center)
                             : Json(nullptr);
  j["objective"] = r.objective ? Json(*r.objective) : Json(nullptr);
  j["barycentric_disk"] = {{"center", point_json(r.barycentric_disk.center)},
                           {"radius", r.barycentric_disk.radius}};
  j["fraenkel_converged"] = r.fraenkel_converged;
  return j;
}

std::string report_csv_header() {
  return "area,perimeter,barycenter_x,barycenter_y,diameter,delta,lambda0,fraenkel,"
         "fraenkel_center_x,fraenkel_center_y,objective,barycentric_disk_x,"
         "barycentric_disk_y,barycentric_disk_radius";
}

std::string report_csv_row(const FunctionalReport& r) {
  auto cell = [](double v) { return std::isfinite(v) ? format_double(v) : std::string(); };
  std::ostringstream os;
  os << cell(r.area) << ',' << cell(r.perimeter) << ',' << cell(r.barycenter.x) << ','
     << cell(r.barycenter.y) << ',' << cell(r.diameter) << ',' << cell(r.delta) << ','
     << cell(r.lambda0) << ',' << cell(r.fraenkel) << ',' << cell(r.fraenkel_center.x) << ','
     << cell(r.fraenkel_center.y) << ',' << (r.objective ? cell(*r.objective) : "") << ','
     << cell(r.barycentric_disk.center.x) << ',' << cell(r.barycentric_disk.center.y) << ','
     << cell(r.barycentric_disk.radius);
  return os.str();
}

void write_profile_csv(std::ostream& out, const CurvatureProfile& profile) {
  out << "s,x,y,theta,kappa_measured,kappa_predicted,inside\n";
  for (const auto& s : profile.samples) {
    out << format_double(s.s) << ',' << format_double(s.pos.x) << ',' << format_double(s.pos.y)
        << ',' << format_double(s.theta) << ',' << format_double(s.kappa_measured) << ','
        << format_double(s.kappa_predicted) << ',' << (s.inside ? 1 : 0) << '\n';
  }
}

void write_trace_csv(std::ostream& out, const OptimTrace& trace) {
  out << "iter,J,delta,lambda0,diameter,grad_norm,step\n";
  for (const auto& r : trace.iterations) {
    out << r.iter << ',' << format_double(r.J) << ',' << format_double(r.delta) << ','
        << format_double(r.lambda0) << ',' << format_double(r.diameter) << ','
        << format_double(r.grad_norm) << ',' << format_double(r.step) << '\n';
  }
}

Json param_to_json(const ShapeParam& param) {
  Json comps = Json::array();
  for (const auto& c : param.components) {
    comps.push_back({{"center", point_json(c.center)},
                     {"r0", c.r0},
                     {"cos_coeffs", c.cos_coeffs},
                     {"sin_coeffs", c.sin_coeffs}});
  }
  return {{"components", std::move(comps)}};
}

ShapeParam param_from_json(const Json& j) {
  ShapeParam p;
  try {
    for (const auto& c : j.at("components")) {
      ComponentParam cp;
      cp.center = {c.at("center").at(0).get<double>(), c.at("center").at(1).get<double>()};
      cp.r0 = c.at("r0").get<double>();
      cp.cos_coeffs = c.at("cos_coeffs").get<std::vector<double>>();
      cp.sin_coeffs = c.at("sin_coeffs").get<std::vector<double>>();
      p.components.push_back(std::move(cp));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Structural, std::string("parameter JSON: ") + e.what());
  }
  return p;
}

Json config_to_json(const OptimConfig& c) {
  return {{"D", c.D},
          {"modes", c.modes},
          {"max_iters", c.max_iters},
          {"fd_step", c.fd_step},
          {"tol_grad", c.tol_grad},
          {"penalty_diameter", c.penalty_diameter},
          {"resolution", c.resolution},
          {"seed", c.seed}};
}

Json competitor_to_json(const TwoDiskCompetitor& c) {
  return {{"R1", c.R1},
          {"R2", c.R2},
          {"D", c.D},
          {"delta", c.delta},
          {"lambda0", c.lambda0},
          {"J", c.objective},
          {"barycenter_x", c.barycenter_x}};
}

}  // namespace isoperim
