#pragma once

// First-order optimality condition for minimizers of J: the predicted
// boundary curvature, its residual against a given shape, and boundary
// reconstruction by shooting the first-order pendulum form
//   theta'(s) = a + mu1 x(s),  a = a_in or a_out by side of the unit circle.

#include <optional>
#include <vector>

#include "isoperim/functionals.hpp"

namespace isoperim {

struct MultiplierPair {
  double mu1 = 0.0;
  double mu2 = 0.0;
};

struct CurvatureSample {
  double s = 0.0;
  Point pos;
  double theta = 0.0;
  double kappa_measured = 0.0;
  double kappa_predicted = 0.0;
  bool inside = false;
};

struct CurvatureProfile {
  std::vector<CurvatureSample> samples;
};

/// Partition of the unit barycentric circle after normalizing the shape
/// (barycenter at the origin, area pi).
BarycentricPartition barycentric_partition(const Shape& shape);

/// mu1 = 4 delta / (pi lambda0) (∫_out cos - ∫_in cos), mu2 likewise with sin.
/// Throws ErrorKind::Undefined when lambda0 is zero.
MultiplierPair multipliers(const FunctionalReport& report,
                           const BarycentricPartition& partition);
MultiplierPair multipliers(const Shape& shape);

/// C(x, y) = 1 - 3 delta + 4 delta (|∂B out| - |∂B in|) / (2 pi lambda0)
///           ± 4 delta / lambda0 + mu1 x + mu2 y,
/// with + outside the barycentric disk. `p` is in the normalized frame.
double predicted_curvature(const FunctionalReport& report,
                           const BarycentricPartition& partition,
                           const MultiplierPair& mult, Point p, bool inside);

struct ResidualOptions {
  // Container of diameter D (in the shape's units); boundary points on its
  // circle are excluded. The container is centered at the midpoint of the
  // shape's diameter pair.
  std::optional<double> container_diameter;
  // Samples this close (normalized units) to ∂B_G or ∂B_D are skipped.
  double exclusion = 1e-6;
};

struct ResidualReport {
  CurvatureProfile profile;  // normalized frame, evaluated samples only
  double sup_norm = 0.0;
  double l2_norm = 0.0;      // sqrt(∫ residual^2 ds) over evaluated samples
  std::size_t excluded = 0;
  FunctionalReport report;
  BarycentricPartition partition;
  MultiplierPair multipliers;
};

/// Measured (discrete) minus predicted curvature at every boundary vertex.
/// Throws ErrorKind::InsufficientData with fewer than 8 evaluable samples.
ResidualReport optimality_residual(const Shape& shape, const ResidualOptions& options = {});

/// The shape rotated about its barycenter by -atan2(mu2, mu1), which makes
/// mu2 vanish and mu1 >= 0.
struct CanonicalFrame {
  Shape shape;
  double angle = 0.0;
};
CanonicalFrame canonical_rotation(const Shape& shape);

struct ShootingParams {
  double a_out = 1.0;
  double a_in = 1.0;
  double mu1 = 0.0;
  Point start;
  double theta0 = 0.0;
  double arclength_budget = 2.0 * kPi;
  double step = 1e-3;
  double bound = 1e3;  // |x|, |y| beyond this is divergence
};

/// A crossing of the unit circle. theta is continuous there; the curvature
/// jumps from kappa_before to kappa_after.
struct SideSwitch {
  double s = 0.0;
  Point pos;
  double theta = 0.0;
  double kappa_before = 0.0;
  double kappa_after = 0.0;
  bool entering = false;
};

struct ShootResult {
  CurvatureProfile profile;  // kappa_measured from finite differences of theta
  std::vector<SideSwitch> switches;
  Point end;
  double theta_end = 0.0;
  double closure_gap = 0.0;  // |end - start| and tangent mismatch mod 2 pi
};

/// Classical RK4 with fixed step; circle crossings located by bisection to
/// 1e-12 in arclength. Throws ErrorKind::Divergence when the trajectory
/// leaves the box, ErrorKind::Resolution when one step turns by pi/8 or more.
ShootResult shoot(const ShootingParams& params);

struct ClosureResult {
  ShootingParams params;
  bool converged = false;
  double gap = 0.0;
  int iterations = 0;
};

/// Damped Gauss-Newton on (theta0, a_out, arclength_budget) with mu1, a_in
/// and the start point fixed, driving the closure gap below 1e-8.
/// Throws ErrorKind::Domain when the initial gap is 0.5 or more.
ClosureResult find_closed_curve(const ShootingParams& init);

}  // namespace isoperim
