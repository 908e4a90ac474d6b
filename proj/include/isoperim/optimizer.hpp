#pragma once

// Minimization of J over unions of star-shaped Fourier components under
// |K| = pi and diam(K) <= D.

#include <cstdint>
#include <string>
#include <vector>

#include "isoperim/constructions.hpp"
#include "isoperim/functionals.hpp"

namespace isoperim {

/// r(phi) = r0 (1 + Σ_k a_k cos(k phi) + b_k sin(k phi)), k = 1..modes,
/// about `center`.
struct ComponentParam {
  Point center;
  double r0 = 1.0;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;
};

struct ShapeParam {
  std::vector<ComponentParam> components;
};

struct OptimConfig {
  double D = 10.0;
  int modes = 8;
  int max_iters = 300;
  double fd_step = 1e-6;
  double tol_grad = 1e-7;
  // 0 enforces diam <= D by pulling components together. A positive weight
  // switches to a quadratic penalty on the excess instead.
  double penalty_diameter = 0.0;
  int resolution = 512;
  std::uint64_t seed = 1;

  void check() const;  // D >= 10, modes >= 2, resolution >= 128
};

struct TraceRow {
  int iter = 0;
  double J = 0.0;
  double delta = 0.0;
  double lambda0 = 0.0;
  double diameter = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;
};

struct OptimTrace {
  std::vector<TraceRow> iterations;
  std::vector<ShapeParam> params;  // the iterate behind each row
};

enum class StopReason { GradientTolerance, MaxIterations, LineSearchStall };
const char* to_string(StopReason reason);

struct OptimResult {
  ShapeParam param;
  OptimTrace trace;
  StopReason reason = StopReason::MaxIterations;
};

double radius_at(const ComponentParam& c, double phi);

/// Closed-form area of the smooth Fourier component:
/// pi r0^2 (1 + Σ (a_k^2 + b_k^2) / 2).
double fourier_area(const ComponentParam& c);

/// Curvature of the smooth boundary r(phi) at angle phi.
double analytic_curvature(const ComponentParam& c, double phi);

/// Equal-angle polygonization, `resolution` vertices per component, CCW.
/// Throws ErrorKind::Domain when r(phi) <= 0 at a sample.
Shape synthesize(const ShapeParam& param, std::size_t resolution);

/// Uniform scaling about the barycenter to area pi; then, if diam > D,
/// center offsets are contracted toward the barycenter until diam <= D.
/// Throws ErrorKind::Infeasible when the components would have to overlap
/// or one component alone is wider than D.
ShapeParam project_constraints(const ShapeParam& param, const OptimConfig& config);

/// Values of J and its ingredients at a feasible parameter.
struct ObjectiveValue {
  double J = 0.0;
  double delta = 0.0;
  double lambda0 = 0.0;
  double diameter = 0.0;
  double merit = 0.0;  // J, plus the diameter penalty in penalty mode
};

/// J(synthesize(project(param))). Throws ErrorKind::Undefined when lambda0
/// falls below 1e-3.
ObjectiveValue objective(const ShapeParam& param, const OptimConfig& config);

/// Flattened coordinates: per component cx, cy, r0, a_1..a_m, b_1..b_m.
std::vector<double> flatten(const ShapeParam& param);
ShapeParam unflatten(const ShapeParam& layout, const std::vector<double>& x);

/// Central differences of the merit along every flattened coordinate.
/// Falls back to a one-sided difference when one side of the stencil is
/// infeasible; throws ErrorKind::Stencil when both are.
std::vector<double> gradient(const ShapeParam& param, const OptimConfig& config);

/// Projected gradient descent with Armijo backtracking (factor 0.5,
/// c = 1e-4). Accepted iterates are feasible and J never increases.
OptimResult minimize(const OptimConfig& config, const ShapeParam& init);

/// Fourier parameters of the two-disk competitor, all coefficients zero.
ShapeParam from_competitor(const TwoDiskCompetitor& competitor, int modes);

/// `count` disks of equal area spread along the x axis inside diameter D,
/// with small seeded Fourier noise.
ShapeParam disks_init(int count, const OptimConfig& config);

}  // namespace isoperim
