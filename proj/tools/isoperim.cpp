// isoperim: evaluate, construct, verify, shoot and optimize planar shapes.
//
// JSON goes to stdout, diagnostics to stderr.
// Exit codes: 0 ok, 1 I/O, 2 validation, 3 verification failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "isoperim/constructions.hpp"
#include "isoperim/error.hpp"
#include "isoperim/functionals.hpp"
#include "isoperim/io.hpp"
#include "isoperim/optimality.hpp"
#include "isoperim/optimizer.hpp"
#include "isoperim/svg.hpp"
#include "isoperim/verify.hpp"

namespace {

using namespace isoperim;

constexpr int kOk = 0;
constexpr int kIo = 1;
constexpr int kValidation = 2;
constexpr int kVerification = 3;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  return out;
}

void write_json(const std::string& path, const Json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

Json nullable(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

struct EvalArgs {
  std::string file;
  bool csv = false;
  bool no_fraenkel = false;
};

int run_eval(const EvalArgs& a) {
  const Shape shape = read_shape_file(a.file, true);
  const auto report = evaluate(shape, {.fraenkel = !a.no_fraenkel});
  if (a.csv) {
    std::cout << report_csv_header() << '\n' << report_csv_row(report) << '\n';
  } else {
    std::cout << report_to_json(report).dump(2) << '\n';
  }
  return kOk;
}

struct ConstructArgs {
  std::string kind;
  double D = 10.0;
  int n = 4;
  std::size_t resolution = 2048;
  std::string out = "construct";
};

int run_construct(const ConstructArgs& a) {
  Json analytic;
  Shape shape;
  if (a.kind == "two-disks") {
    auto [c, s] = build_two_disk_competitor(a.D, a.resolution);
    analytic = competitor_to_json(c);
    shape = std::move(s);
  } else {
    auto f = build_fuglede_sequence(a.n, a.resolution);
    std::optional<double> J;
    if (f.analytic_lambda0) J = f.analytic_delta / (*f.analytic_lambda0 * *f.analytic_lambda0);
    analytic = {{"R1", f.R},
                {"R2", f.r},
                {"n", a.n},
                {"delta", f.analytic_delta},
                {"lambda0", nullable(f.analytic_lambda0)},
                {"J", nullable(J)}};
    if (f.overlaps_barycentric_disk) {
      std::cerr << "warning: for n = " << a.n
                << " the small disk overlaps the barycentric disk, lambda0 != 2\n";
    }
    shape = std::move(f.shape);
  }
  write_json(a.out + ".shape.json", shape_to_json(shape));
  write_json(a.out + ".analytic.json", analytic);
  std::cout << analytic.dump(2) << '\n';
  return kOk;
}

struct VerifyArgs {
  std::string filter;
  bool json = false;
};

int run_verify(const VerifyArgs& a) {
  const auto rows = run_paper_checks(a.filter);
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.pass;
  if (a.json) {
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back({{"group", r.group},
                     {"name", r.name},
                     {"expected", r.expected},
                     {"computed", r.computed},
                     {"pass", r.pass}});
    }
    std::cout << Json{{"checks", arr}, {"all_pass", ok}}.dump(2) << '\n';
  } else {
    for (const auto& r : rows) {
      std::cout << (r.pass ? "PASS" : "FAIL") << "  [" << r.group << "] " << r.name
                << "  expected " << r.expected << "  computed " << r.computed << '\n';
    }
    std::cout << rows.size() << " checks, " << (ok ? "all passed" : "FAILURES") << '\n';
  }
  return ok ? kOk : kVerification;
}

struct ResidualArgs {
  std::string file;
  std::optional<double> D;
  std::string out;
  bool canonical = false;
};

int run_residual(const ResidualArgs& a) {
  Shape shape = read_shape_file(a.file, true);
  double angle = 0.0;
  if (a.canonical) {
    auto frame = canonical_rotation(shape);
    shape = std::move(frame.shape);
    angle = frame.angle;
  }
  const auto res = optimality_residual(shape, {.container_diameter = a.D});
  if (!a.out.empty()) {
    auto out = open_out(a.out);
    write_profile_csv(out, res.profile);
  }
  std::cout << Json{{"sup_norm", res.sup_norm},
                    {"l2_norm", res.l2_norm},
                    {"samples", res.profile.samples.size()},
                    {"excluded", res.excluded},
                    {"mu1", res.multipliers.mu1},
                    {"mu2", res.multipliers.mu2},
                    {"rotation", angle},
                    {"report", report_to_json(res.report)}}
                   .dump(2)
            << '\n';
  return kOk;
}

struct ShootArgs {
  ShootingParams p;
  int steps = 7000;
  bool closure = false;
  std::string out;
};

int run_shoot(ShootArgs a) {
  if (a.steps < 1) throw Error(ErrorKind::Domain, "--steps must be positive");
  a.p.step = a.p.arclength_budget / a.steps;
  Json extra;
  if (a.closure) {
    const auto c = find_closed_curve(a.p);
    a.p = c.params;
    extra = {{"converged", c.converged}, {"iterations", c.iterations}};
  }
  const auto r = shoot(a.p);
  if (!a.out.empty()) {
    auto out = open_out(a.out);
    write_profile_csv(out, r.profile);
  }
  Json switches = Json::array();
  for (const auto& s : r.switches) {
    switches.push_back({{"s", s.s},
                        {"x", s.pos.x},
                        {"y", s.pos.y},
                        {"kappa_before", s.kappa_before},
                        {"kappa_after", s.kappa_after},
                        {"entering", s.entering}});
  }
  Json j{{"closure_gap", r.closure_gap},
         {"end", {r.end.x, r.end.y}},
         {"theta_end", r.theta_end},
         {"theta0", a.p.theta0},
         {"a_in", a.p.a_in},
         {"a_out", a.p.a_out},
         {"mu1", a.p.mu1},
         {"length", a.p.arclength_budget},
         {"switches", switches}};
  if (a.closure) j["closure"] = extra;
  std::cout << j.dump(2) << '\n';
  return kOk;
}

struct OptimizeArgs {
  OptimConfig config;
  std::string init = "two-disks";
  int components = 2;
  std::string out = "optimize";
};

int run_optimize(const OptimizeArgs& a) {
  const auto& cfg = a.config;
  cfg.check();
  ShapeParam init;
  if (a.init == "two-disks") {
    init = from_competitor(build_two_disk_competitor(cfg.D).first, cfg.modes);
  } else if (a.init == "disks") {
    init = disks_init(a.components, cfg);
  } else {
    std::ifstream in(a.init);
    if (!in) throw std::ios_base::failure("cannot open " + a.init);
    Json j;
    try {
      in >> j;
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::Structural, std::string("parameter file: ") + e.what());
    }
    init = param_from_json(j);
  }
  const auto result = minimize(cfg, init);
  const auto& rows = result.trace.iterations;
  const Shape best = synthesize(result.param, cfg.resolution);
  write_json(a.out + ".shape.json", shape_to_json(best));
  write_json(a.out + ".param.json", param_to_json(result.param));
  write_json(a.out + ".config.json", config_to_json(cfg));
  {
    auto out = open_out(a.out + ".trace.csv");
    write_trace_csv(out, result.trace);
  }
  std::cout << Json{{"initial_J", rows.front().J},
                    {"final_J", rows.back().J},
                    {"iterations", rows.size() - 1},
                    {"stop", to_string(result.reason)}}
                   .dump(2)
            << '\n';
  return kOk;
}

struct RenderArgs {
  std::string file;
  std::optional<double> D;
  std::string out;
};

int run_render(const RenderArgs& a) {
  const Shape shape = read_shape_file(a.file);
  const std::string svg = render_svg(shape, a.D);
  if (a.out.empty()) {
    std::cout << svg;
  } else {
    auto out = open_out(a.out);
    out << svg;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantitative isoperimetric inequality toolkit"};
  app.require_subcommand(1);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate delta, lambda0, lambda and J of a shape file");
  eval->add_option("file", ev.file, "Shape JSON")->required();
  eval->add_flag("--csv", ev.csv, "CSV instead of JSON");
  eval->add_flag("--no-fraenkel", ev.no_fraenkel, "Skip the Fraenkel asymmetry search");

  ConstructArgs co;
  auto* construct = app.add_subcommand("construct", "Write an explicit competitor shape");
  construct->add_option("kind", co.kind, "two-disks | fuglede")
      ->required()
      ->check(CLI::IsMember({"two-disks", "fuglede"}));
  construct->add_option("--D", co.D, "Diameter bound (two-disks)");
  construct->add_option("--n", co.n, "Sequence index (fuglede)");
  construct->add_option("--resolution", co.resolution, "Vertices per disk");
  construct->add_option("--out", co.out, "Output prefix");

  VerifyArgs ve;
  auto* verify = app.add_subcommand("verify", "Check published constants and brackets");
  verify->add_option("--filter", ve.filter, "Keep groups containing this text");
  verify->add_flag("--json", ve.json, "Machine-readable output");

  ResidualArgs re;
  auto* residual = app.add_subcommand("residual", "Optimality-condition curvature residual");
  residual->add_option("file", re.file, "Shape JSON")->required();
  residual->add_option("--D", re.D, "Container diameter");
  residual->add_option("--out", re.out, "Profile CSV");
  residual->add_flag("--canonical", re.canonical, "Rotate so that mu2 = 0 first");

  ShootArgs sh;
  auto* shootc = app.add_subcommand("shoot", "Integrate the pendulum boundary equation");
  shootc->add_option("--mu1", sh.p.mu1);
  shootc->add_option("--a-in", sh.p.a_in);
  shootc->add_option("--a-out", sh.p.a_out);
  shootc->add_option("--x0", sh.p.start.x);
  shootc->add_option("--y0", sh.p.start.y);
  shootc->add_option("--theta0", sh.p.theta0);
  shootc->add_option("--length", sh.p.arclength_budget, "Arclength budget");
  shootc->add_option("--steps", sh.steps, "RK4 steps over the budget");
  shootc->add_flag("--closure", sh.closure, "Solve for theta0, a_out and length closing the curve");
  shootc->add_option("--out", sh.out, "Profile CSV");

  OptimizeArgs op;
  auto* optimize = app.add_subcommand("optimize", "Minimize J over Fourier shapes");
  optimize->add_option("--D", op.config.D);
  optimize->add_option("--init", op.init, "two-disks | disks | parameter JSON file");
  optimize->add_option("--components", op.components, "Disk count for --init disks");
  optimize->add_option("--modes", op.config.modes);
  optimize->add_option("--iters", op.config.max_iters);
  optimize->add_option("--resolution", op.config.resolution);
  optimize->add_option("--seed", op.config.seed);
  optimize->add_option("--fd-step", op.config.fd_step);
  optimize->add_option("--tol-grad", op.config.tol_grad);
  optimize->add_option("--penalty", op.config.penalty_diameter, "Diameter penalty weight, 0 = projection");
  optimize->add_option("--out", op.out, "Output prefix");

  RenderArgs rn;
  auto* render = app.add_subcommand("render", "SVG of a shape with its barycentric disk");
  render->add_option("file", rn.file, "Shape JSON")->required();
  render->add_option("--D", rn.D, "Container diameter");
  render->add_option("--out", rn.out, "SVG file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*eval) return run_eval(ev);
    if (*construct) return run_construct(co);
    if (*verify) return run_verify(ve);
    if (*residual) return run_residual(re);
    if (*shootc) return run_shoot(sh);
    if (*optimize) return run_optimize(op);
    if (*render) return run_render(rn);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == ErrorKind::Inconsistency ? kVerification : kValidation;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error (io): " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}
