#include "isoperim/constructions.hpp"

#include <algorithm>
#include <string>

namespace isoperim {

namespace {

// Bisection for a sign change of f on [lo, hi].
template <class F>
double bisect(F&& f, double lo, double hi, double tol) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double ball_l1_distance(double a) {
  if (!(a >= 0.0 && a <= 2.0)) {
    throw Error(ErrorKind::Domain, "ball distance needs a in [0, 2], got " + std::to_string(a));
  }
  const double value = disk_disk_symm_diff(a);
  if (a <= 1.0 && value > 4.0 * a * (1.0 + 1e-15)) {
    throw Error(ErrorKind::Inconsistency, "ball distance exceeds 4a on [0, 1]");
  }
  return value;
}

double hull_perimeter_disk_point(double R1, double R2) {
  if (!(R1 > 0.0) || R1 > R2) {
    throw Error(ErrorKind::Domain, "hull perimeter needs 0 < R1 <= R2");
  }
  const double ratio = std::min(1.0, R1 / R2);
  return R1 * (2.0 * kPi - 2.0 * std::acos(ratio)) + 2.0 * std::sqrt(R2 * R2 - R1 * R1);
}

CapGeometry cap_geometry(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5 * kPi)) {
    throw Error(ErrorKind::Domain, "cap half-aperture must lie in (0, pi/2)");
  }
  CapGeometry cap{alpha - std::sin(alpha) * std::cos(alpha), std::cos(2.0 * alpha)};
  if (alpha < 0.05) {
    // alpha - sin(alpha)cos(alpha) = 2 alpha^3 / 3 - 2 alpha^5 / 15 + ...
    const double leading = 2.0 * alpha * alpha * alpha / 3.0;
    if (std::abs(cap.cap_area - leading) > alpha * alpha * leading) {
      throw Error(ErrorKind::Inconsistency, "cap area departs from 2 alpha^3 / 3");
    }
  }
  return cap;
}

double q_poly(double D, double R) {
  return ((R - D) * R - 2.0) * R + D - 1.0;
}

double p_poly(double D, double R) {
  return (((2.0 * R - 2.0 * (D + 2.0)) * R + (D * D + 4.0 * D - 1.0)) * R +
          (4.0 - 2.0 * D * D)) * R + D * D - 2.0 * D;
}

double solve_R1_star(double D) {
  if (!(D >= 5.0)) {
    throw Error(ErrorKind::Domain, "R1* bracket requires D >= 5");
  }
  const double lo = 1.0 - 1.0 / D - 2.0 / (D * D);
  const double hi = 1.0 - 1.0 / D - 1.0 / (D * D);
  auto p = [D](double R) { return p_poly(D, R); };
  if (!(p(lo) > 0.0) || !(p(hi) < 0.0)) {
    throw Error(ErrorKind::Inconsistency,
                "p_D does not change sign on the R1* bracket for D = " + std::to_string(D));
  }
  const double R = bisect(p, lo, hi, 1e-12);
  const double q = q_poly(D, R);
  if (q < 0.0) {
    throw Error(ErrorKind::Inconsistency, "q_D(R1*) is negative");
  }
  const double lhs = (R + 1.0) * (R + 1.0) * p_poly(D, R);
  const double s = 1.0 - R * R;
  const double rhs = q * q - s * s * s;
  // Both sides vanish at the root; p_D carries terms of size D^2, so that
  // sets the rounding scale.
  if (std::abs(lhs - rhs) > 1e-12 * (1.0 + D * D)) {
    throw Error(ErrorKind::Inconsistency, "p_D and q_D are not linked by the squared identity");
  }
  return R;
}

std::pair<TwoDiskCompetitor, Shape> build_two_disk_competitor(double D,
                                                              std::size_t resolution) {
  if (!(D >= 10.0)) {
    throw Error(ErrorKind::Unsupported,
                "two-disk competitor is only established for D >= 10, got D = " +
                    std::to_string(D));
  }
  TwoDiskCompetitor c;
  c.D = D;
  c.R1 = solve_R1_star(D);
  c.R2 = std::sqrt(1.0 - c.R1 * c.R1);
  c.centers = {{0.5 * D - c.R1, 0.0}, {-0.5 * D + c.R2, 0.0}};
  c.barycenter_x = c.R1 * c.R1 * (0.5 * D - c.R1) + c.R2 * c.R2 * (-0.5 * D + c.R2);
  const double tangency = c.barycenter_x + 1.0 - (0.5 * D - 2.0 * c.R1);
  if (std::abs(tangency) > 1e-9) {
    throw Error(ErrorKind::Inconsistency,
                "barycentric disk is not tangent to the big disk (residual " +
                    std::to_string(tangency) + ")");
  }
  c.delta = c.R1 + c.R2 - 1.0;
  c.lambda0 = 2.0;
  c.objective = c.delta / 4.0;

  Shape shape;
  shape.components.push_back(polygonize_disk({c.centers.first, c.R1}, resolution));
  shape.components.push_back(polygonize_disk({c.centers.second, c.R2}, resolution));
  return {c, std::move(shape)};
}

FugledeConstruction build_fuglede_sequence(int n, std::size_t resolution) {
  if (n < 2) {
    throw Error(ErrorKind::Domain, "Fuglede sequence needs n >= 2");
  }
  const double nd = static_cast<double>(n);
  FugledeConstruction f;
  f.R = 1.0 - 1.0 / nd;
  f.r = std::sqrt((2.0 * nd - 1.0) / (nd * nd));
  const Point big{2.0, 0.0};
  const Point small{-2.0 * (nd - 1.0) * (nd - 1.0) / (2.0 * nd - 1.0), 0.0};
  f.analytic_delta = f.R + f.r - 1.0;
  // The barycentric disk is the unit disk at the origin.
  f.overlaps_barycentric_disk = norm(small) < 1.0 + f.r || norm(big) < 1.0 + f.R;
  if (!f.overlaps_barycentric_disk) f.analytic_lambda0 = 2.0;
  f.shape.components.push_back(polygonize_disk({big, f.R}, resolution));
  f.shape.components.push_back(polygonize_disk({small, f.r}, resolution));
  return f;
}

PaperConstants paper_constants() {
  PaperConstants k;
  k.cicalese_leonardi = kPi / (8.0 * (4.0 - kPi));
  const double denom = 2.0 + 8.0 / kPi;
  k.tau_star = 1.8296 / (denom * denom);
  k.equal_disk_J = (std::sqrt(2.0) - 1.0) / 4.0;
  const double tau = k.tau_star;
  k.R1_hat = bisect([tau](double R) { return (R + std::sqrt(1.0 - R * R) - 1.0) / 4.0 - tau; },
                    1.0 / std::sqrt(2.0), 1.0, 1e-14);
  return k;
}

}  // namespace isoperim
