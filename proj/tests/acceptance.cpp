// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "isoperim/constructions.hpp"
#include "isoperim/functionals.hpp"
#include "isoperim/optimality.hpp"
#include "isoperim/optimizer.hpp"
#include "isoperim/parallel.hpp"
#include "isoperim/verify.hpp"

using namespace isoperim;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

bool run_criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0.0 && secs > budget_s) o.require(false, fmt("took %.2f s, budget %.2f s", secs, budget_s));
  std::printf("%s criterion %d: %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, title, secs,
              o.detail.empty() ? "" : " -- ", o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

Outcome table_group(const char* group) {
  Outcome o;
  for (const auto& r : run_paper_checks(group)) {
    o.require(r.pass, r.name + " expected " + r.expected + " computed " + r.computed);
  }
  return o;
}

Outcome constants() { return table_group("thresholds"); }

Outcome brackets() {
  Outcome o = table_group("brackets");
  for (double D : {5.0, 7.0, 10.0, 10.1, 20.0, 50.0}) {
    o.require(p_poly(D, 1.0 - 1.0 / D - 2.0 / (D * D)) > 0.0, fmt("p_D(lo) <= 0 at D=%g", D));
    o.require(p_poly(D, 1.0 - 1.0 / D - 1.0 / (D * D)) < 0.0, fmt("p_D(mid) >= 0 at D=%g", D));
    o.require(p_poly(D, 1.0 - 1.0 / D) > 0.0, fmt("p_D(hi) <= 0 at D=%g", D));
    o.require(q_poly(D, 0.0) == D - 1.0, fmt("q_D(0) != D-1 at D=%g", D));
    o.require(q_poly(D, 1.0) == -2.0, fmt("q_D(1) != -2 at D=%g", D));
  }
  o.require(solve_R1_star(10.1) >= 0.8814, "R1*(10.1) < 0.8814");
  return o;
}

Outcome competitor() {
  Outcome o;
  const auto [c, shape] = build_two_disk_competitor(10.0);
  const auto r = evaluate(shape, {.fraenkel = false});
  const double delta = c.R1 + std::sqrt(1.0 - c.R1 * c.R1) - 1.0;
  o.require(std::abs(r.delta - delta) <= 1e-3, fmt("delta %.6g vs %.6g", r.delta, delta));
  o.require(std::abs(r.lambda0 - 2.0) <= 1e-3, fmt("lambda0 %.6g", r.lambda0));
  o.require(r.objective && std::abs(*r.objective - delta / 4.0) <= 1e-3, "J off");
  o.require(c.objective < 0.0885, fmt("J = %.6g", c.objective));
  return o;
}

Outcome ball_distance() {
  Outcome o;
  for (double a : {0.2, 0.5, 1.0, 1.5}) {
    Shape s;
    s.components.push_back(polygonize_disk({{a, 0.0}, 1.0}, 2048));
    const double kernel = symm_diff_area_disk(s, {{}, 1.0});
    const double exact = disk_disk_symm_diff(a);
    o.require(std::abs(kernel / exact - 1.0) <= 1e-3, fmt("a=%g rel err %.3g", a, kernel / exact - 1.0));
  }
  double prev = -1.0;
  for (int i = 0; i <= 2000; ++i) {
    const double a = 1e-3 * i;
    const double f = disk_disk_symm_diff(a);
    o.require(f > prev, fmt("not increasing at a=%g", a));
    if (a <= 1.0) o.require(f <= 4.0 * a, fmt("f(a) > 4a at a=%g", a));
    prev = f;
  }
  return o;
}

Outcome fuglede() {
  Outcome o;
  double prev_J = 1e9;
  for (int n : {4, 8, 16, 32, 64}) {
    const auto f = build_fuglede_sequence(n);
    const auto r = evaluate(f.shape, {.fraenkel = false});
    o.require(std::abs(r.area - kPi) <= 1e-6, fmt("n=%g area %.12g", n, r.area));
    o.require(norm(r.barycenter) <= 1e-9, fmt("n=%g |G| = %.3g", n, norm(r.barycenter)));
    o.require(std::abs(r.delta - f.analytic_delta) <= 1e-3, fmt("n=%g delta %.6g", n, r.delta));
    o.require(std::abs(r.lambda0 - 2.0) <= 1e-3, fmt("n=%g lambda0 %.6g", n, r.lambda0));
    o.require(r.objective && *r.objective < prev_J, fmt("n=%g J not decreasing", n));
    prev_J = r.objective.value_or(1e9);
  }
  return o;
}

double central(const std::function<double(const Shape&)>& F, const Shape& s,
               const PerturbationField& f, double t) {
  return (F(perturbed(s, f, t)) - F(perturbed(s, f, -t))) / (2.0 * t);
}

double richardson(const std::function<double(const Shape&)>& F, const Shape& s,
                  const PerturbationField& f) {
  const double coarse = central(F, s, f, 1e-4);
  const double fine = central(F, s, f, 1e-5);
  return fine + (fine - coarse) / 99.0;
}

Outcome derivatives() {
  Outcome o;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Shape> shapes;
  for (int i = 0; i < 5; ++i) {
    ComponentParam c{{u(rng), u(rng)}, 1.0 + 0.2 * u(rng), std::vector<double>(6), std::vector<double>(6)};
    for (int k = 0; k < 6; ++k) {
      c.cos_coeffs[k] = 0.12 * u(rng) / (k + 1);
      c.sin_coeffs[k] = 0.12 * u(rng) / (k + 1);
    }
    shapes.push_back(synthesize({{c}}, 512));
  }
  std::vector<std::vector<double>> coeffs;
  for (int j = 0; j < 5; ++j) {
    std::vector<double> cf(10);
    for (auto& x : cf) x = u(rng);
    coeffs.push_back(cf);
  }
  double worst_d = 0.0, worst_l = 0.0;
  for (const auto& s : shapes) {
    for (const auto& cf : coeffs) {
      PerturbationField f;
      f.normal_speed.emplace_back();
      const std::size_t n = s.components[0].size();
      for (std::size_t i = 0; i < n; ++i) {
        const double phi = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        double v = 0.0;
        for (int k = 0; k < 5; ++k) v += cf[2 * k] * std::cos(k * phi) + cf[2 * k + 1] * std::sin(k * phi);
        f.normal_speed[0].push_back(v);
      }
      const double dd = delta_derivative(s, f), fd_d = richardson(isoperimetric_deficit, s, f);
      const double dl = lambda0_derivative(s, f), fd_l = richardson(barycentric_asymmetry, s, f);
      worst_d = std::max(worst_d, std::abs(dd - fd_d) / std::abs(fd_d));
      worst_l = std::max(worst_l, std::abs(dl - fd_l) / std::abs(fd_l));
    }
  }
  o.require(worst_d <= 1e-3, fmt("delta rel err %.3g", worst_d));
  o.require(worst_l <= 1e-3, fmt("lambda0 rel err %.3g", worst_l));

  Shape disk;
  disk.components.push_back(polygonize_disk({{}, 1.0}, 2048));
  const auto samples = boundary_samples(disk)[0];
  PerturbationField dil, shift;
  dil.normal_speed.emplace_back(samples.size(), 1.0);
  shift.normal_speed.emplace_back();
  for (const auto& b : samples) shift.normal_speed[0].push_back(b.normal.x);
  for (const auto* f : {&dil, &shift}) {
    const double a = delta_derivative(disk, *f), b = lambda0_derivative(disk, *f);
    o.require(std::abs(a) <= 1e-8, fmt("disk d delta = %.3g", a));
    o.require(std::abs(b) <= 1e-8, fmt("disk d lambda0 = %.3g", b));
  }
  return o;
}

Outcome pendulum() {
  Outcome o;
  ShootingParams c;
  c.start = {1.5, 0.0};
  c.theta0 = kPi / 2.0;
  c.step = 2.0 * kPi / 7000.0;
  const auto circ = shoot(c);
  o.require(circ.closure_gap <= 1e-8, fmt("circle gap %.3g", circ.closure_gap));

  for (double mu1 : {0.02, 0.05}) {
    ShootingParams p;
    p.mu1 = mu1;
    p.a_in = 1.2;
    p.a_out = 1.1;
    p.start = {0.5, 0.0};
    p.theta0 = kPi / 2.0;
    p.step = 1e-4;
    p.arclength_budget = 7.0;
    const auto r = shoot(p);
    o.require(!r.switches.empty(), "no circle crossing");
    double worst = 0.0;
    for (const auto& s : r.profile.samples) {
      worst = std::max(worst, std::abs(s.kappa_measured - mu1 * s.pos.x - (s.inside ? p.a_in : p.a_out)));
    }
    o.require(worst <= 1e-8, fmt("mu1=%g: theta' - mu1 x off by %.3g", mu1, worst));
    const auto& v = r.profile.samples;
    for (const auto& sw : r.switches) {
      std::size_t i = 0;
      while (v[i].s < sw.s) ++i;
      const double jump = (v[i].kappa_measured - mu1 * v[i].pos.x) - (v[i - 1].kappa_measured - mu1 * v[i - 1].pos.x);
      const double expected = sw.entering ? p.a_in - p.a_out : p.a_out - p.a_in;
      o.require(std::abs(jump - expected) <= 1e-9, fmt("mu1=%g: jump off by %.3g", mu1, jump - expected));
      o.require(std::abs(std::abs(sw.kappa_after - sw.kappa_before) - std::abs(p.a_out - p.a_in)) <= 1e-9,
                "switch record");
    }
  }
  return o;
}

OptimResult run_optimizer(double D) {
  OptimConfig cfg;
  cfg.D = D;
  cfg.modes = 8;
  cfg.resolution = 512;
  cfg.max_iters = 300;
  return minimize(cfg, from_competitor(build_two_disk_competitor(D).first, cfg.modes));
}

double final_J_D10 = std::numeric_limits<double>::quiet_NaN();

Outcome optimizer_properties() {
  Outcome o;
  const double D = 10.0;
  const auto r = run_optimizer(D);
  const auto& rows = r.trace.iterations;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    o.require(rows[i].J <= rows[i - 1].J, fmt("J increased at iteration %g", static_cast<double>(i)));
  }
  for (std::size_t i = 0; i < r.trace.params.size(); ++i) {
    const Shape s = synthesize(r.trace.params[i], 512);
    const double a = area(s), d = diameter(s);
    bool apart = true;
    for (std::size_t p = 0; p < s.components.size(); ++p)
      for (std::size_t q = p + 1; q < s.components.size(); ++q) apart = apart && disjoint(s.components[p], s.components[q]);
    o.require(std::abs(a - kPi) <= 1e-9, fmt("iterate %g area %.12g", static_cast<double>(i), a));
    o.require(d <= D + 1e-9, fmt("iterate %g diameter %.12g", static_cast<double>(i), d));
    o.require(apart, fmt("iterate %g components overlap", static_cast<double>(i)));
  }
  o.require(rows.back().J <= rows.front().J - 1e-4,
            fmt("J %.8g -> %.8g", rows.front().J, rows.back().J));
  const auto res0 = optimality_residual(synthesize(r.trace.params.front(), 512), {.container_diameter = D});
  const auto res1 = optimality_residual(synthesize(r.param, 512), {.container_diameter = D});
  o.require(res1.l2_norm <= res0.l2_norm, fmt("residual L2 %.6g -> %.6g", res0.l2_norm, res1.l2_norm));
  final_J_D10 = rows.back().J;
  std::printf("  D=10: %zu iterations (%s), J %.8f -> %.8f, residual L2 %.5f -> %.5f\n", rows.size() - 1,
              to_string(r.reason), rows.front().J, rows.back().J, res0.l2_norm, res1.l2_norm);
  return o;
}

Outcome monotone_in_D() {
  Outcome o;
  if (!std::isfinite(final_J_D10)) final_J_D10 = run_optimizer(10.0).trace.iterations.back().J;
  const auto r = run_optimizer(20.0);
  const double j20 = r.trace.iterations.back().J;
  std::printf("  D=20: %zu iterations (%s), final J %.8f; D=10 final J %.8f\n", r.trace.iterations.size() - 1,
              to_string(r.reason), j20, final_J_D10);
  o.require(j20 <= final_J_D10 + 1e-4, fmt("J(20) = %.8g > J(10) = %.8g", j20, final_J_D10));
  return o;
}

// Area of the symmetric difference of two star polygons about a common
// center sampled on the same rays: wedge by wedge, the region between two
// chords.
double star_symm_diff(const std::vector<double>& ra, const std::vector<double>& rb) {
  const std::size_t n = ra.size();
  const double dphi = 2.0 * kPi / static_cast<double>(n);
  auto tri = [](Point a, Point b, Point c) { return 0.5 * std::abs(cross(b - a, c - a)); };
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const Point u0{std::cos(i * dphi), std::sin(i * dphi)};
    const Point u1{std::cos(j * dphi), std::sin(j * dphi)};
    const Point P0 = u0 * ra[i], P1 = u1 * ra[j], Q0 = u0 * rb[i], Q1 = u1 * rb[j];
    const double s0 = ra[i] - rb[i], s1 = ra[j] - rb[j];
    if (s0 * s1 >= 0.0) {
      total += std::abs(tri({}, P0, P1) - tri({}, Q0, Q1));
    } else {
      const Point dp = P1 - P0, dq = Q1 - Q0;
      const double k = cross(Q0 - P0, dq) / cross(dp, dq);
      const Point X = P0 + dp * k;
      total += tri(P0, Q0, X) + tri(X, P1, Q1);
    }
  }
  return total;
}

Outcome randomized_invariants() {
  Outcome o;
  const std::size_t count = 1000;
  struct Row {
    double delta, lambda0, fraenkel, delta_moved, lambda0_moved;
  };
  std::vector<Row> rows(count);
  parallel_for(count, [&](std::size_t i) {
    std::mt19937_64 rng(1000 + i);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int comps = 1 + static_cast<int>(i % 3);
    ShapeParam p;
    for (int c = 0; c < comps; ++c) {
      ComponentParam cp{{3.0 * c + 0.2 * u(rng), 0.3 * u(rng)}, 0.7 + 0.3 * u(rng),
                        std::vector<double>(4), std::vector<double>(4)};
      for (int k = 0; k < 4; ++k) {
        cp.cos_coeffs[k] = 0.1 * u(rng) / (k + 1);
        cp.sin_coeffs[k] = 0.1 * u(rng) / (k + 1);
      }
      p.components.push_back(cp);
    }
    const Shape s = synthesize(p, 128);
    const auto r = evaluate(s);
    const Shape m = translated(rotated(s, kPi * u(rng), {u(rng), u(rng)}), {5.0 * u(rng), 5.0 * u(rng)});
    rows[i] = {r.delta, r.lambda0, r.fraenkel, isoperimetric_deficit(m), barycentric_asymmetry(m)};
  });
  double worst_motion = 0.0;
  for (const auto& r : rows) {
    o.require(r.delta >= -1e-9, fmt("delta = %.3g", r.delta));
    o.require(r.fraenkel <= r.lambda0 + 1e-9, fmt("lambda %.6g > lambda0 %.6g", r.fraenkel, r.lambda0));
    o.require(r.lambda0 <= 2.0 + 1e-9, fmt("lambda0 = %.12g", r.lambda0));
    worst_motion = std::max({worst_motion, std::abs(r.delta - r.delta_moved), std::abs(r.lambda0 - r.lambda0_moved)});
  }
  o.require(worst_motion <= 1e-9, fmt("rigid motion changes delta/lambda0 by %.3g", worst_motion));

  // Barycenter displacement bound for equal-area pairs.
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = 256;
  double worst_ratio = 0.0;
  for (int pair = 0; pair < 200; ++pair) {
    std::vector<std::vector<double>> radii(2, std::vector<double>(n));
    std::vector<Shape> shapes;
    for (auto& r : radii) {
      std::vector<double> a(6), b(6);
      const double amp = 0.05 + 0.3 * (0.5 + 0.5 * u(rng));
      for (int k = 0; k < 6; ++k) {
        a[k] = amp * u(rng) / (k + 1);
        b[k] = amp * u(rng) / (k + 1);
      }
      for (std::size_t i = 0; i < n; ++i) {
        const double phi = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        double v = 1.0;
        for (int k = 0; k < 6; ++k) v += a[k] * std::cos((k + 1) * phi) + b[k] * std::sin((k + 1) * phi);
        r[i] = v;
      }
      std::vector<Point> pts(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double phi = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        pts[i] = {r[i] * std::cos(phi), r[i] * std::sin(phi)};
      }
      const double s = std::sqrt(kPi / std::abs(signed_area(pts)));
      for (auto& x : r) x *= s;
      for (auto& q : pts) q = q * s;
      Shape sh;
      sh.components.emplace_back(pts);
      shapes.push_back(sh);
    }
    const double sd = star_symm_diff(radii[0], radii[1]);
    Shape both;
    both.components = {shapes[0].components[0], shapes[1].components[0]};
    const double Dp = diameter(both);
    const double lhs = distance(barycenter(shapes[0]), barycenter(shapes[1]));
    const double rhs = Dp / (2.0 * area(shapes[0])) * sd;
    o.require(lhs <= rhs + 1e-9, fmt("pair %g: |dG| %.6g > bound %.6g", pair, lhs, rhs));
    worst_ratio = std::max(worst_ratio, lhs / rhs);
  }
  std::printf("  1000 shapes checked; largest |dG| / bound over 200 pairs: %.3f\n", worst_ratio);
  return o;
}

}  // namespace

int main() {
  std::printf("isoperim acceptance suite (%zu threads)\n", thread_count());
  bool ok = true;
  ok &= run_criterion(1, "published constants", 1.0, constants);
  ok &= run_criterion(2, "R1* bracket and q/p polynomial signs", 1.0, brackets);
  ok &= run_criterion(3, "two-disk competitor at D = 10", 0.0, competitor);
  ok &= run_criterion(4, "distance of two unit disks", 0.0, ball_distance);
  ok &= run_criterion(5, "Fuglede sequence", 0.0, fuglede);
  ok &= run_criterion(6, "shape derivatives vs finite differences", 0.0, derivatives);
  ok &= run_criterion(7, "pendulum shooting", 1.0, pendulum);
  ok &= run_criterion(8, "optimizer properties at D = 10", 0.0, optimizer_properties);
  ok &= run_criterion(9, "final J non-increasing in D", 0.0, monotone_in_D);
  ok &= run_criterion(10, "randomized invariants", 0.0, randomized_invariants);
  std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return ok ? 0 : 1;
}
