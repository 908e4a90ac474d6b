#pragma once

// Isoperimetric deficit, barycentric and Fraenkel asymmetries, the
// objective J = delta / lambda0^2, and first shape derivatives of each.

#include <optional>
#include <vector>

#include "isoperim/geometry.hpp"

namespace isoperim {

struct FunctionalReport {
  double area = 0.0;
  double perimeter = 0.0;
  Point barycenter;
  double diameter = 0.0;
  double delta = 0.0;     // isoperimetric deficit
  double lambda0 = 0.0;   // barycentric asymmetry
  double fraenkel = 0.0;  // Fraenkel asymmetry (inner minimisation)
  Point fraenkel_center;
  std::optional<double> objective;  // empty when lambda0 is (numerically) zero
  Disk barycentric_disk;
  bool fraenkel_converged = true;
};

struct EvalOptions {
  bool fraenkel = true;
  // lambda0 at or below this is treated as zero and J is reported undefined.
  // A 512-gon area-matched to its disk already has lambda0 ~ 1e-5.
  double lambda0_floor = 1e-4;
};

FunctionalReport evaluate(const Shape& shape, const EvalOptions& options = {});

/// delta = P / (2 sqrt(pi |K|)) - 1; scale free, so |K| need not be pi.
double isoperimetric_deficit(const Shape& shape);

/// |K Δ B_G| / |K| with B_G the equal-area disk at the barycenter.
double barycentric_asymmetry(const Shape& shape);

/// Disk of area |K| centered at the barycenter.
Disk barycentric_disk(const Shape& shape);

struct FraenkelResult {
  double value = 0.0;
  Point center;
  bool converged = true;
};

/// inf_y |K Δ B_y| / |K|. Nelder-Mead on the center, started at the
/// barycenter and, for multi-component shapes, from a 5x5 grid over the
/// bounding box. Never exceeds barycentric_asymmetry(shape).
FraenkelResult fraenkel_asymmetry(const Shape& shape);

/// Normal speed V·n sampled at every vertex of every component.
struct PerturbationField {
  std::vector<std::vector<double>> normal_speed;
};

/// Discrete boundary data at each vertex: outward normal (perpendicular to
/// the chord v[i+1] - v[i-1]), quadrature weight (half the chord), tangent
/// angle of the outgoing edge, and curvature n·(u_in - u_out) / weight with
/// u the unit edge directions. Weight and curvature are chosen so that
/// moving the vertex along its normal changes area and perimeter by
/// exactly weight and curvature·weight per unit speed. Positive curvature
/// on convex CCW parts.
struct BoundarySample {
  Point pos;
  Point normal;
  double weight = 0.0;
  double theta = 0.0;
  double curvature = 0.0;
};
std::vector<std::vector<BoundarySample>> boundary_samples(const Shape& shape);

/// The shape translated to put its barycenter at the origin and scaled to
/// area pi, so the barycentric disk is the unit disk.
struct NormalizedShape {
  Shape shape;
  double scale = 1.0;  // p' = scale * (p - origin)
  Point origin;
};
NormalizedShape normalize(const Shape& shape);

/// How the unit barycentric circle splits into arcs inside and outside the
/// (normalized) shape, with the integrals of cos t and sin t over each part.
struct BarycentricPartition {
  double len_B_out = 0.0;
  double len_B_in = 0.0;
  double int_cos_out = 0.0;
  double int_cos_in = 0.0;
  double int_sin_out = 0.0;
  double int_sin_in = 0.0;
  std::vector<ArcInterval> arcs;
};

/// Partition of an already normalized shape against the unit circle.
BarycentricPartition unit_circle_partition(const Shape& normalized);

/// d/dt delta((I + tV)K) at t = 0.
/// Equals ∫ (C - delta - 1) V·n / (2 pi) when |K| = pi; the general form
/// carries the area factor. Throws ErrorKind::Resolution when a component
/// has fewer than 16 vertices or the field does not match the shape.
double delta_derivative(const Shape& shape, const PerturbationField& field);

/// d/dt lambda0((I + tV)K) at t = 0, evaluated in the normalized frame:
/// (1/pi) [∫_{∂B out} W·n - ∫_{∂B in} W·n + ∫_{∂K out} V·n - ∫_{∂K in} V·n
///         - lambda0 ∫_{∂K} V·n], with W·n = a cos t + b sin t + alpha.
/// Boundary edges are split exactly where they cross the unit circle, and
/// the speed through each edge is interpolated linearly between vertices.
double lambda0_derivative(const Shape& shape, const PerturbationField& field);

/// dJ = d delta / lambda0^2 - 2 delta d lambda0 / lambda0^3.
/// Throws ErrorKind::Undefined when lambda0 is below the evaluation floor.
double objective_derivative(const Shape& shape, const PerturbationField& field);

/// The shape moved by t·(V·n)·n at each vertex, i.e. (I + tV)K for the
/// normal field sampled on the vertices.
Shape perturbed(const Shape& shape, const PerturbationField& field, double t);

}  // namespace isoperim
