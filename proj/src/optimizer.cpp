#include "isoperim/optimizer.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

#include "isoperim/parallel.hpp"

namespace isoperim {

namespace {

constexpr double kLambda0Min = 1e-3;

}  // namespace

void OptimConfig::check() const {
  if (!(D >= 10.0)) throw Error(ErrorKind::Domain, "optimizer needs D >= 10");
  if (modes < 2) throw Error(ErrorKind::Domain, "optimizer needs at least 2 Fourier modes");
  if (resolution < 128) throw Error(ErrorKind::Domain, "optimizer needs resolution >= 128");
  if (!(fd_step > 0.0)) throw Error(ErrorKind::Domain, "fd_step must be positive");
  if (max_iters < 0) throw Error(ErrorKind::Domain, "max_iters must be non-negative");
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::GradientTolerance: return "gradient-tolerance";
    case StopReason::MaxIterations: return "max-iterations";
    case StopReason::LineSearchStall: return "line-search-stall";
  }
  return "unknown";
}

double radius_at(const ComponentParam& c, double phi) {
  double f = 1.0;
  for (std::size_t k = 0; k < c.cos_coeffs.size(); ++k) {
    f += c.cos_coeffs[k] * std::cos(static_cast<double>(k + 1) * phi);
  }
  for (std::size_t k = 0; k < c.sin_coeffs.size(); ++k) {
    f += c.sin_coeffs[k] * std::sin(static_cast<double>(k + 1) * phi);
  }
  return c.r0 * f;
}

double fourier_area(const ComponentParam& c) {
  double sum = 0.0;
  for (double a : c.cos_coeffs) sum += a * a;
  for (double b : c.sin_coeffs) sum += b * b;
  return kPi * c.r0 * c.r0 * (1.0 + 0.5 * sum);
}

double analytic_curvature(const ComponentParam& c, double phi) {
  double r = 1.0, dr = 0.0, ddr = 0.0;
  auto add = [&](double coeff, double k, bool cosine) {
    const double s = std::sin(k * phi), co = std::cos(k * phi);
    if (cosine) {
      r += coeff * co;
      dr -= coeff * k * s;
      ddr -= coeff * k * k * co;
    } else {
      r += coeff * s;
      dr += coeff * k * co;
      ddr -= coeff * k * k * s;
    }
  };
  for (std::size_t k = 0; k < c.cos_coeffs.size(); ++k) add(c.cos_coeffs[k], k + 1.0, true);
  for (std::size_t k = 0; k < c.sin_coeffs.size(); ++k) add(c.sin_coeffs[k], k + 1.0, false);
  r *= c.r0;
  dr *= c.r0;
  ddr *= c.r0;
  return (r * r + 2.0 * dr * dr - r * ddr) / std::pow(r * r + dr * dr, 1.5);
}

Shape synthesize(const ShapeParam& param, std::size_t resolution) {
  Shape shape;
  const double step = 2.0 * kPi / static_cast<double>(resolution);
  for (const auto& c : param.components) {
    std::vector<Point> v;
    v.reserve(resolution);
    for (std::size_t j = 0; j < resolution; ++j) {
      const double phi = step * static_cast<double>(j);
      const double r = radius_at(c, phi);
      if (!(r > 0.0)) {
        throw Error(ErrorKind::Domain, "radial function is not positive; component is not star-shaped");
      }
      v.push_back(c.center + Point{r * std::cos(phi), r * std::sin(phi)});
    }
    shape.components.emplace_back(std::move(v));
  }
  return shape;
}

namespace {

ShapeParam contract_centers(const ShapeParam& param, Point pivot, double factor) {
  ShapeParam out = param;
  for (auto& c : out.components) c.center = pivot + (c.center - pivot) * factor;
  return out;
}

void require_disjoint(const Shape& shape) {
  const auto& comps = shape.components;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      if (!disjoint(comps[i], comps[j])) {
        throw Error(ErrorKind::Infeasible, "components overlap");
      }
    }
  }
}

}  // namespace

ShapeParam project_constraints(const ShapeParam& param, const OptimConfig& config) {
  const std::size_t n = static_cast<std::size_t>(config.resolution);
  ShapeParam p = param;
  for (int pass = 0; pass < 2; ++pass) {
    const Shape shape = synthesize(p, n);
    const double a = area(shape);
    const Point g = barycenter(shape);
    const double s = std::sqrt(kPi / a);
    for (auto& c : p.components) {
      c.center = g + (c.center - g) * s;
      c.r0 *= s;
    }
    if (config.penalty_diameter > 0.0) break;

    const Shape unit = synthesize(p, n);
    const Point pivot = barycenter(unit);
    auto excess = [&](double factor) {
      return diameter(synthesize(contract_centers(p, pivot, factor), n)) - config.D;
    };
    const double e1 = excess(1.0);
    if (e1 <= 0.0) break;
    const double e0 = excess(0.0);
    if (e0 > 0.0) {
      throw Error(ErrorKind::Infeasible, "a single component is wider than D");
    }
    // Illinois regula falsi for excess(factor) = 0 on [0, 1], keeping the
    // feasible end as the answer.
    double lo = 0.0, flo = e0, hi = 1.0, fhi = e1;
    int side = 0;
    for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
      const double x = (lo * fhi - hi * flo) / (fhi - flo);
      const double fx = excess(x);
      if (fx > 0.0) {
        hi = x; fhi = fx;
        if (side == -1) flo *= 0.5;
        side = -1;
      } else {
        lo = x; flo = fx;
        if (side == 1) fhi *= 0.5;
        side = 1;
        if (fx > -1e-10) break;
      }
    }
    p = contract_centers(p, pivot, lo);
  }

  const Shape final_shape = synthesize(p, n);
  const double a = area(final_shape);
  if (std::abs(a - kPi) > 1e-9) {
    throw Error(ErrorKind::Inconsistency, "projection missed the area constraint");
  }
  if (config.penalty_diameter <= 0.0 && diameter(final_shape) > config.D + 1e-9) {
    throw Error(ErrorKind::Inconsistency, "projection missed the diameter constraint");
  }
  require_disjoint(final_shape);
  return p;
}

ObjectiveValue objective(const ShapeParam& param, const OptimConfig& config) {
  const Shape shape = synthesize(param, static_cast<std::size_t>(config.resolution));
  ObjectiveValue v;
  v.delta = isoperimetric_deficit(shape);
  v.lambda0 = barycentric_asymmetry(shape);
  v.diameter = diameter(shape);
  if (!(v.lambda0 >= kLambda0Min)) {
    throw Error(ErrorKind::Undefined, "barycentric asymmetry below 1e-3");
  }
  v.J = v.delta / (v.lambda0 * v.lambda0);
  v.merit = v.J;
  if (config.penalty_diameter > 0.0) {
    const double excess = std::max(0.0, v.diameter - config.D);
    v.merit += config.penalty_diameter * excess * excess;
  }
  return v;
}

std::vector<double> flatten(const ShapeParam& param) {
  std::vector<double> x;
  for (const auto& c : param.components) {
    x.push_back(c.center.x);
    x.push_back(c.center.y);
    x.push_back(c.r0);
    x.insert(x.end(), c.cos_coeffs.begin(), c.cos_coeffs.end());
    x.insert(x.end(), c.sin_coeffs.begin(), c.sin_coeffs.end());
  }
  return x;
}

ShapeParam unflatten(const ShapeParam& layout, const std::vector<double>& x) {
  if (x.size() != flatten(layout).size()) {
    throw Error(ErrorKind::Structural, "parameter vector has the wrong length");
  }
  ShapeParam p = layout;
  std::size_t i = 0;
  for (auto& c : p.components) {
    c.center = {x[i], x[i + 1]};
    c.r0 = x[i + 2];
    i += 3;
    for (auto& a : c.cos_coeffs) a = x[i++];
    for (auto& b : c.sin_coeffs) b = x[i++];
  }
  return p;
}

namespace {

std::optional<double> merit_at(const ShapeParam& layout, const std::vector<double>& x,
                               const OptimConfig& config) {
  try {
    return objective(project_constraints(unflatten(layout, x), config), config).merit;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Inconsistency) throw;
    return std::nullopt;
  }
}

double norm2(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

}  // namespace

std::vector<double> gradient(const ShapeParam& param, const OptimConfig& config) {
  const std::vector<double> x0 = flatten(param);
  const double h = config.fd_step;
  std::vector<double> g(x0.size(), 0.0);
  std::vector<int> failed(x0.size(), 0);
  const auto f0 = merit_at(param, x0, config);
  parallel_for(x0.size(), [&](std::size_t i) {
    std::vector<double> xp = x0, xm = x0;
    xp[i] += h;
    xm[i] -= h;
    const auto fp = merit_at(param, xp, config);
    const auto fm = merit_at(param, xm, config);
    if (fp && fm) {
      g[i] = (*fp - *fm) / (2.0 * h);
    } else if (fp && f0) {
      g[i] = (*fp - *f0) / h;
    } else if (fm && f0) {
      g[i] = (*f0 - *fm) / h;
    } else {
      failed[i] = 1;
    }
  });
  for (std::size_t i = 0; i < failed.size(); ++i) {
    if (failed[i]) {
      throw Error(ErrorKind::Stencil,
                  "objective undefined on both sides of coordinate " + std::to_string(i));
    }
  }
  return g;
}

OptimResult minimize(const OptimConfig& config, const ShapeParam& init) {
  config.check();
  OptimResult result;
  ShapeParam p = project_constraints(init, config);
  ObjectiveValue val = objective(p, config);
  std::vector<double> x = flatten(p);
  double t = 1.0;

  for (int iter = 0;; ++iter) {
    const std::vector<double> g = gradient(p, config);
    const double gnorm = norm2(g);
    result.trace.iterations.push_back(
        {iter, val.J, val.delta, val.lambda0, val.diameter, gnorm, iter == 0 ? 0.0 : t});
    result.trace.params.push_back(p);
    if (gnorm < config.tol_grad) {
      result.reason = StopReason::GradientTolerance;
      break;
    }
    if (iter >= config.max_iters) {
      result.reason = StopReason::MaxIterations;
      break;
    }

    bool accepted = false;
    double trial_t = std::min(2.0 * t, 1e3);
    for (int halving = 0; halving < 50; ++halving, trial_t *= 0.5) {
      std::vector<double> xt(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) xt[i] = x[i] - trial_t * g[i];
      ShapeParam cand;
      ObjectiveValue cv;
      try {
        cand = project_constraints(unflatten(p, xt), config);
        cv = objective(cand, config);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Inconsistency) throw;
        continue;
      }
      const std::vector<double> xc = flatten(cand);
      double slope = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) slope += g[i] * (xc[i] - x[i]);
      if (slope < 0.0 && cv.merit <= val.merit + 1e-4 * slope && cv.J <= val.J) {
        p = std::move(cand);
        x = xc;
        val = cv;
        t = trial_t;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      result.reason = StopReason::LineSearchStall;
      break;
    }
  }
  result.param = std::move(p);
  return result;
}

ShapeParam from_competitor(const TwoDiskCompetitor& competitor, int modes) {
  ShapeParam p;
  const std::vector<double> zeros(static_cast<std::size_t>(modes), 0.0);
  p.components.push_back({competitor.centers.first, competitor.R1, zeros, zeros});
  p.components.push_back({competitor.centers.second, competitor.R2, zeros, zeros});
  return p;
}

ShapeParam disks_init(int count, const OptimConfig& config) {
  if (count < 1) throw Error(ErrorKind::Domain, "need at least one component");
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> noise(-0.02, 0.02);
  const double r = 1.0 / std::sqrt(static_cast<double>(count));
  const double span = config.D - 2.0 * r;
  const std::size_t modes = static_cast<std::size_t>(config.modes);
  ShapeParam p;
  for (int i = 0; i < count; ++i) {
    ComponentParam c;
    const double x = count == 1 ? 0.0 : -0.5 * span + span * i / (count - 1.0);
    c.center = {0.9 * x, 0.0};
    c.r0 = r;
    c.cos_coeffs.resize(modes);
    c.sin_coeffs.resize(modes);
    for (std::size_t k = 1; k < modes; ++k) {
      c.cos_coeffs[k] = noise(rng);
      c.sin_coeffs[k] = noise(rng);
    }
    p.components.push_back(std::move(c));
  }
  return p;
}

}  // namespace isoperim
