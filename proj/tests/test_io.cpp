#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "isoperim/error.hpp"
#include "isoperim/io.hpp"
#include "isoperim/parallel.hpp"
#include "isoperim/svg.hpp"
#include "isoperim/verify.hpp"

using namespace isoperim;
using doctest::Approx;

namespace {

ErrorKind parse_error_kind(const std::string& text) {
  std::istringstream in(text);
  try {
    read_shape(in, true);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("accepted: " << text);
  return ErrorKind::Degenerate;
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("shape JSON round trip") {
  const auto [c, shape] = build_two_disk_competitor(10.0, 64);
  const Json j = shape_to_json(shape);
  std::istringstream in(j.dump());
  const Shape back = read_shape(in, true);
  REQUIRE(back.components.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    REQUIRE(back.components[k].size() == 64);
    for (std::size_t i = 0; i < 64; ++i) CHECK(back.components[k][i] == shape.components[k][i]);
  }
}

TEST_CASE("shape JSON errors") {
  CHECK(parse_error_kind("{") == ErrorKind::Structural);
  CHECK(parse_error_kind("[]") == ErrorKind::Structural);
  CHECK(parse_error_kind(R"({"components": [{"vertices": [[0,0],[1,0]]}]})") == ErrorKind::Structural);
  CHECK(parse_error_kind(R"({"components": [{"vertices": [[0,0],[0,1],[1,0]]}]})") == ErrorKind::Structural);
  CHECK(parse_error_kind(R"({"components": [{"vertices": [[0,0],[1,0],[0,1],[0,0]]}]})") == ErrorKind::Structural);
  CHECK(parse_error_kind(R"({"components": [{"vertices": [[0,0],[1,"a"],[0,1]]}]})") == ErrorKind::Structural);
  CHECK_THROWS_AS(read_shape_file("/nonexistent/shape.json"), std::ios_base::failure);
}

TEST_CASE("report JSON") {
  Shape disk;
  disk.components.push_back(polygonize_disk({{}, 1.0}, 512));
  const Json j = report_to_json(evaluate(disk));
  for (const char* key : {"area", "perimeter", "barycenter", "diameter", "delta", "lambda0", "fraenkel",
                          "fraenkel_center", "objective", "barycentric_disk"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["objective"].is_null());
  CHECK(j["area"].get<double>() == Approx(kPi));

  const Json k = report_to_json(evaluate(disk, {.fraenkel = false}));
  CHECK(k["fraenkel"].is_null());
}

TEST_CASE("CSV writers") {
  OptimTrace t;
  t.iterations.push_back({0, 0.1, 0.4, 2.0, 10.0, 0.01, 0.0});
  std::ostringstream os;
  write_trace_csv(os, t);
  CHECK(os.str() == "iter,J,delta,lambda0,diameter,grad_norm,step\n0,0.1,0.4,2,10,0.01,0\n");

  CurvatureProfile p;
  p.samples.push_back({0.5, {1.0, 2.0}, 0.25, 1.5, 1.25, true});
  std::ostringstream ps;
  write_profile_csv(ps, p);
  CHECK(ps.str() == "s,x,y,theta,kappa_measured,kappa_predicted,inside\n0.5,1,2,0.25,1.5,1.25,1\n");

  Shape disk;
  disk.components.push_back(polygonize_disk({{}, 1.0}, 64));
  const auto row = report_csv_row(evaluate(disk));
  CHECK(count(row, ",") == count(report_csv_header(), ","));
}

TEST_CASE("parameter JSON round trip") {
  ShapeParam p;
  p.components.push_back({{1.0, -2.0}, 0.7, {0.1, 0.2}, {0.0, -0.3}});
  const ShapeParam q = param_from_json(param_to_json(p));
  REQUIRE(q.components.size() == 1);
  CHECK(q.components[0].center == p.components[0].center);
  CHECK(q.components[0].sin_coeffs == p.components[0].sin_coeffs);
  CHECK_THROWS_AS(param_from_json(Json::parse(R"({"components": [{"r0": 1}]})")), Error);
}

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, kPi}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("SVG rendering") {
  const auto [c, shape] = build_two_disk_competitor(10.0, 128);
  const std::string svg = render_svg(shape, 10.0);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(count(svg, "<path") == 2);
  CHECK(count(svg, "<circle") == 2);
  CHECK(count(svg, "<svg") == 1);
  CHECK(svg.find("-0 ") == std::string::npos);
  CHECK(svg == render_svg(shape, 10.0));
}

TEST_CASE("paper check table") {
  const auto all = run_paper_checks();
  CHECK(all.size() > 50);
  for (const auto& r : all) CHECK_MESSAGE(r.pass, r.group << ": " << r.name);
  const auto th = run_paper_checks("thresholds");
  CHECK(th.size() == 5);
  for (const auto& r : th) CHECK(r.group == "thresholds");
}

TEST_CASE("parallel_for") {
  std::vector<int> hit(1000, 0);
  parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(100, [](std::size_t i) {
                    if (i == 57) throw Error(ErrorKind::Stencil, "boom");
                  }),
                  Error);
  CHECK(thread_count() >= 1);
}
