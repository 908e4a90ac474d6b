#pragma once

// Closed-form competitor sets, polynomials and constants from the
// existence argument. These are the analytic ground truth the numerical
// kernel is checked against.

#include <optional>
#include <utility>

#include "isoperim/geometry.hpp"

namespace isoperim {

/// Two disks of radii R1 >= R2 with R1^2 + R2^2 = 1 on the x axis, the big
/// one touching x = D/2 and the small one touching x = -D/2.
struct TwoDiskCompetitor {
  double R1 = 0.0;
  double R2 = 0.0;
  double D = 0.0;
  std::pair<Point, Point> centers;  // (big, small)
  double delta = 0.0;
  double lambda0 = 0.0;
  double objective = 0.0;
  double barycenter_x = 0.0;
};

struct PaperConstants {
  double cicalese_leonardi = 0.0;  // pi / (8 (4 - pi))
  double tau_star = 0.0;           // 1.8296 / (2 + 8/pi)^2
  double equal_disk_J = 0.0;       // (sqrt 2 - 1) / 4
  double R1_hat = 0.0;             // (R + sqrt(1 - R^2) - 1)/4 = tau_star
};

/// |B_0 Δ B_a| for unit disks, a in [0, 2]; checks the bound <= 4a on [0, 1].
/// Throws ErrorKind::Domain outside [0, 2].
double ball_l1_distance(double a);

/// Perimeter of the convex hull of the disk of radius R1 at the origin and
/// a point at distance R2 >= R1. Throws ErrorKind::Domain when R1 > R2.
double hull_perimeter_disk_point(double R1, double R2);

struct CapGeometry {
  double cap_area = 0.0;      // alpha - sin(alpha) cos(alpha)
  double inner_radius = 0.0;  // cos(2 alpha)
};
/// Circular cap of the unit disk cut by a chord of half-aperture alpha.
/// Throws ErrorKind::Domain unless 0 < alpha < pi/2.
CapGeometry cap_geometry(double alpha);

/// q_D(R) = R^3 - D R^2 - 2R + D - 1.
double q_poly(double D, double R);
/// p_D(R) = 2R^4 - 2(D+2)R^3 + (D^2+4D-1)R^2 + (4-2D^2)R + D^2 - 2D.
double p_poly(double D, double R);

/// Root of p_D in (1 - 1/D - 2/D^2, 1 - 1/D - 1/D^2) by bisection to 1e-12.
/// Throws ErrorKind::Domain for D < 5 and ErrorKind::Inconsistency when the
/// bracket signs, q_D(R) >= 0, or (R+1)^2 p_D = q_D^2 - (1-R^2)^3 fail.
double solve_R1_star(double D);

/// The competitor whose barycentric disk is tangent to the big disk, plus
/// its polygonization (`resolution` vertices per disk, area exact).
/// Throws ErrorKind::Unsupported for D < 10.
std::pair<TwoDiskCompetitor, Shape> build_two_disk_competitor(
    double D, std::size_t resolution = 2048);

struct FugledeConstruction {
  Shape shape;
  double R = 0.0;  // 1 - 1/n, centered at (2, 0)
  double r = 0.0;  // sqrt(2n - 1) / n, centered at (-2(n-1)^2/(2n-1), 0)
  double analytic_delta = 0.0;
  std::optional<double> analytic_lambda0;  // 2 when the small disk clears B_G
  bool overlaps_barycentric_disk = false;
};

/// Two-disk family with area pi, barycenter at the origin and deficit
/// R + r - 1 -> 0. For n < 4 the small disk overlaps the unit barycentric
/// disk; the construction is still returned but analytic_lambda0 is empty.
/// Throws ErrorKind::Domain for n < 2.
FugledeConstruction build_fuglede_sequence(int n, std::size_t resolution = 2048);

PaperConstants paper_constants();

}  // namespace isoperim
