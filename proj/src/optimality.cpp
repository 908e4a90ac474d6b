#include "isoperim/optimality.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <limits>
#include <string>

namespace isoperim {

BarycentricPartition barycentric_partition(const Shape& shape) {
  return unit_circle_partition(normalize(shape).shape);
}

MultiplierPair multipliers(const FunctionalReport& report,
                           const BarycentricPartition& part) {
  if (!report.objective) {
    throw Error(ErrorKind::Undefined, "multipliers undefined: barycentric asymmetry is zero");
  }
  const double k = 4.0 * report.delta / (kPi * report.lambda0);
  return {k * (part.int_cos_out - part.int_cos_in), k * (part.int_sin_out - part.int_sin_in)};
}

MultiplierPair multipliers(const Shape& shape) {
  const auto report = evaluate(shape, {.fraenkel = false});
  return multipliers(report, barycentric_partition(shape));
}

double predicted_curvature(const FunctionalReport& report,
                           const BarycentricPartition& part,
                           const MultiplierPair& mult, Point p, bool inside) {
  const double delta = report.delta;
  const double lambda0 = report.lambda0;
  const double jump = 4.0 * delta / lambda0;
  return 1.0 - 3.0 * delta +
         4.0 * delta / (2.0 * kPi * lambda0) * (part.len_B_out - part.len_B_in) +
         (inside ? -jump : jump) + mult.mu1 * p.x + mult.mu2 * p.y;
}

ResidualReport optimality_residual(const Shape& shape, const ResidualOptions& options) {
  const NormalizedShape ns = normalize(shape);
  ResidualReport out;
  out.report = evaluate(ns.shape, {.fraenkel = false});
  out.partition = unit_circle_partition(ns.shape);
  out.multipliers = multipliers(out.report, out.partition);

  std::optional<Disk> container;
  if (options.container_diameter) {
    const auto pair = diameter_pair(ns.shape);
    container = Disk{(pair.a + pair.b) * 0.5, 0.5 * *options.container_diameter * ns.scale};
  }

  const auto samples = boundary_samples(ns.shape);
  double s_offset = 0.0;
  double sum_sq = 0.0;
  for (const auto& comp : samples) {
    double s = s_offset;
    double theta_prev = comp.empty() ? 0.0 : comp.front().theta;
    double unwrap = 0.0;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const auto& bs = comp[i];
      if (i > 0) {
        s += distance(comp[i - 1].pos, bs.pos);
        double step = bs.theta - theta_prev;
        if (step > kPi) unwrap -= 2.0 * kPi;
        if (step < -kPi) unwrap += 2.0 * kPi;
        theta_prev = bs.theta;
      }
      const double r = norm(bs.pos);
      const bool near_ball = std::abs(r - 1.0) < options.exclusion;
      const bool near_container =
          container && std::abs(distance(bs.pos, container->center) - container->radius) <
                           options.exclusion;
      if (near_ball || near_container) {
        ++out.excluded;
        continue;
      }
      const bool inside = r < 1.0 - 1e-12;
      CurvatureSample cs;
      cs.s = s;
      cs.pos = bs.pos;
      cs.theta = bs.theta + unwrap;
      cs.kappa_measured = bs.curvature;
      cs.kappa_predicted = predicted_curvature(out.report, out.partition, out.multipliers,
                                               bs.pos, inside);
      cs.inside = inside;
      const double res = cs.kappa_measured - cs.kappa_predicted;
      out.sup_norm = std::max(out.sup_norm, std::abs(res));
      sum_sq += res * res * bs.weight;
      out.profile.samples.push_back(cs);
    }
    if (!comp.empty()) s += distance(comp.back().pos, comp.front().pos);
    s_offset = s;
  }
  if (out.profile.samples.size() < 8) {
    throw Error(ErrorKind::InsufficientData,
                "only " + std::to_string(out.profile.samples.size()) +
                    " boundary samples can be evaluated");
  }
  out.l2_norm = std::sqrt(sum_sq);
  return out;
}

CanonicalFrame canonical_rotation(const Shape& shape) {
  const auto mult = multipliers(shape);
  CanonicalFrame frame;
  frame.angle = -std::atan2(mult.mu2, mult.mu1);
  frame.shape = rotated(shape, frame.angle, barycenter(shape));
  return frame;
}

namespace {

struct State {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

State rk4(const State& y0, double h, double a, double mu1) {
  auto f = [&](const State& s) {
    return State{std::cos(s.theta), std::sin(s.theta), a + mu1 * s.x};
  };
  auto axpy = [](const State& s, double t, const State& k) {
    return State{s.x + t * k.x, s.y + t * k.y, s.theta + t * k.theta};
  };
  const State k1 = f(y0);
  const State k2 = f(axpy(y0, 0.5 * h, k1));
  const State k3 = f(axpy(y0, 0.5 * h, k2));
  const State k4 = f(axpy(y0, h, k3));
  return {y0.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          y0.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
          y0.theta + h / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta)};
}

bool inside_unit(const State& s) { return s.x * s.x + s.y * s.y < 1.0; }

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a;
}

// d theta / ds at sample i from samples in [lo, hi] (one arc), skipping
// neighbours closer than `min_gap` when farther ones exist.
double arc_derivative(const std::vector<CurvatureSample>& v, std::size_t lo,
                      std::size_t hi, std::size_t i, double min_gap) {
  if (hi <= lo) return std::numeric_limits<double>::quiet_NaN();
  auto left = [&](std::size_t from) -> std::optional<std::size_t> {
    for (std::size_t j = from; j-- > lo;) {
      if (v[from].s - v[j].s >= min_gap || j == lo) return j;
    }
    return std::nullopt;
  };
  auto right = [&](std::size_t from) -> std::optional<std::size_t> {
    for (std::size_t j = from + 1; j <= hi; ++j) {
      if (v[j].s - v[from].s >= min_gap || j == hi) return j;
    }
    return std::nullopt;
  };
  const auto l = left(i);
  const auto r = right(i);
  if (l && r) {
    const double h1 = v[i].s - v[*l].s;
    const double h2 = v[*r].s - v[i].s;
    return -h2 / (h1 * (h1 + h2)) * v[*l].theta + (h2 - h1) / (h1 * h2) * v[i].theta +
           h1 / (h2 * (h1 + h2)) * v[*r].theta;
  }
  if (r) {
    const auto r2 = right(*r);
    const double h1 = v[*r].s - v[i].s;
    if (!r2) return (v[*r].theta - v[i].theta) / h1;
    const double h2 = v[*r2].s - v[*r].s;
    return -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * v[i].theta +
           (h1 + h2) / (h1 * h2) * v[*r].theta - h1 / (h2 * (h1 + h2)) * v[*r2].theta;
  }
  if (l) {
    const auto l2 = left(*l);
    const double h2 = v[i].s - v[*l].s;
    if (!l2) return (v[i].theta - v[*l].theta) / h2;
    const double h1 = v[*l].s - v[*l2].s;
    return h2 / (h1 * (h1 + h2)) * v[*l2].theta - (h1 + h2) / (h1 * h2) * v[*l].theta +
           (2.0 * h2 + h1) / (h2 * (h1 + h2)) * v[i].theta;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

ShootResult shoot(const ShootingParams& p) {
  if (!(p.step > 0.0) || !(p.arclength_budget > 0.0)) {
    throw Error(ErrorKind::Domain, "shooting needs a positive step and arclength budget");
  }
  ShootResult out;
  State y{p.start.x, p.start.y, p.theta0};
  bool side_in = inside_unit(y);
  auto a_of = [&](bool in) { return in ? p.a_in : p.a_out; };
  auto sample = [&](double s, const State& st, bool in) {
    CurvatureSample cs;
    cs.s = s;
    cs.pos = {st.x, st.y};
    cs.theta = st.theta;
    cs.kappa_predicted = a_of(in) + p.mu1 * st.x;
    cs.inside = in;
    return cs;
  };

  auto& samples = out.profile.samples;
  std::vector<std::size_t> arc_starts{0};
  samples.push_back(sample(0.0, y, side_in));

  double s = 0.0;
  const double total = p.arclength_budget;
  while (total - s > 1e-15 * std::max(1.0, total)) {
    const double h = std::min(p.step, total - s);
    const double a = a_of(side_in);
    State next = rk4(y, h, a, p.mu1);
    if (std::abs(next.theta - y.theta) >= kPi / 8.0) {
      throw Error(ErrorKind::Resolution, "step turns the tangent by pi/8 or more");
    }
    double taken = h;
    const bool switched = inside_unit(next) != side_in;
    if (switched) {
      double lo = 0.0;
      double hi = h;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (inside_unit(rk4(y, mid, a, p.mu1)) != side_in) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      taken = hi;
      next = rk4(y, taken, a, p.mu1);
    }
    y = next;
    s += taken;
    if (std::abs(y.x) > p.bound || std::abs(y.y) > p.bound) {
      throw Error(ErrorKind::Divergence, "trajectory left the bounding box at s = " +
                                             std::to_string(s));
    }
    if (switched) {
      SideSwitch sw;
      sw.s = s;
      sw.pos = {y.x, y.y};
      sw.theta = y.theta;
      sw.kappa_before = a_of(side_in) + p.mu1 * y.x;
      side_in = !side_in;
      sw.kappa_after = a_of(side_in) + p.mu1 * y.x;
      sw.entering = side_in;
      out.switches.push_back(sw);
      samples.push_back(sample(s, y, side_in));
      arc_starts.push_back(samples.size() - 1);
    } else {
      samples.push_back(sample(s, y, side_in));
    }
  }

  // Measured curvature: derivative of theta within each arc. A switch sample
  // closes one arc and opens the next; it takes the value of the new arc.
  const double min_gap = 0.25 * p.step;
  if (arc_starts.back() != samples.size() - 1) arc_starts.push_back(samples.size() - 1);
  if (arc_starts.size() == 1) arc_starts.push_back(0);
  for (std::size_t k = 0; k + 1 < arc_starts.size(); ++k) {
    const std::size_t lo = arc_starts[k];
    const std::size_t hi = arc_starts[k + 1];
    const bool last = k + 2 == arc_starts.size();
    for (std::size_t i = lo; i < hi || (last && i == hi); ++i) {
      samples[i].kappa_measured = arc_derivative(samples, lo, hi, i, min_gap);
    }
  }

  out.end = {y.x, y.y};
  out.theta_end = y.theta;
  const Point d = out.end - p.start;
  const double dt = wrap_angle(y.theta - p.theta0);
  out.closure_gap = std::sqrt(dot(d, d) + dt * dt);
  return out;
}

namespace {

Eigen::Vector3d closure_vector(const ShootingParams& p) {
  const auto r = shoot(p);
  return {r.end.x - p.start.x, r.end.y - p.start.y, wrap_angle(r.theta_end - p.theta0)};
}

ShootingParams with_unknowns(ShootingParams p, const Eigen::Vector3d& u) {
  p.theta0 = u[0];
  p.a_out = u[1];
  p.arclength_budget = u[2];
  return p;
}

}  // namespace

ClosureResult find_closed_curve(const ShootingParams& init) {
  ClosureResult res;
  res.params = init;
  Eigen::Vector3d r = closure_vector(init);
  res.gap = r.norm();
  if (res.gap >= 0.5) {
    throw Error(ErrorKind::Domain, "initial closure gap " + std::to_string(res.gap) +
                                       " is too large to refine");
  }
  Eigen::Vector3d u{init.theta0, init.a_out, init.arclength_budget};
  double damping = 1e-6;
  for (; res.iterations < 100 && res.gap >= 1e-8; ++res.iterations) {
    Eigen::Matrix3d jac;
    for (int j = 0; j < 3; ++j) {
      const double h = 1e-7 * std::max(1.0, std::abs(u[j]));
      Eigen::Vector3d up = u, um = u;
      up[j] += h;
      um[j] -= h;
      jac.col(j) = (closure_vector(with_unknowns(init, up)) -
                    closure_vector(with_unknowns(init, um))) / (2.0 * h);
    }
    bool improved = false;
    for (int attempt = 0; attempt < 20 && !improved; ++attempt) {
      const Eigen::Matrix3d normal =
          jac.transpose() * jac + damping * Eigen::Matrix3d::Identity();
      const Eigen::Vector3d delta = normal.ldlt().solve(-jac.transpose() * r);
      const Eigen::Vector3d trial = u + delta;
      if (!(trial[2] > 0.0)) {
        damping *= 10.0;
        continue;
      }
      Eigen::Vector3d rt;
      try {
        rt = closure_vector(with_unknowns(init, trial));
      } catch (const Error&) {
        damping *= 10.0;
        continue;
      }
      if (rt.norm() < res.gap) {
        u = trial;
        r = rt;
        res.gap = rt.norm();
        damping = std::max(damping * 0.1, 1e-12);
        improved = true;
      } else {
        damping *= 10.0;
      }
    }
    if (!improved) break;
  }
  res.params = with_unknowns(init, u);
  res.converged = res.gap < 1e-8;
  return res;
}

}  // namespace isoperim
