#pragma once

// Planar shape kernel: simple CCW polygons, disks, and the exact
// polygon/disk measures every functional is built on.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "isoperim/error.hpp"

namespace isoperim {

inline constexpr double kPi = 3.14159265358979323846;

struct Point {
  double x = 0.0;
  double y = 0.0;

  Point& operator+=(Point o) { x += o.x; y += o.y; return *this; }
  Point& operator-=(Point o) { x -= o.x; y -= o.y; return *this; }
  Point& operator*=(double s) { x *= s; y *= s; return *this; }

  friend Point operator+(Point a, Point b) { return a += b; }
  friend Point operator-(Point a, Point b) { return a -= b; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }
  friend bool operator==(Point, Point) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

/// Rotate `p` by `angle` radians about `pivot`.
Point rotate(Point p, double angle, Point pivot = {});

struct Disk {
  Point center;
  double radius = 1.0;

  double area() const { return kPi * radius * radius; }
};

/// One simple polygon with counter-clockwise orientation. The closing
/// edge from the last vertex back to the first is implicit.
class PolygonComponent {
 public:
  PolygonComponent() = default;

  /// Throws ErrorKind::Structural for fewer than 3 vertices, non-finite
  /// coordinates, or non-positive signed area (clockwise input).
  explicit PolygonComponent(std::vector<Point> vertices);

  std::span<const Point> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }
  const Point& vertex(std::size_t i) const {
    return vertices_[i % vertices_.size()];
  }

 private:
  std::vector<Point> vertices_;
};

/// A finite disjoint union of simple CCW polygons.
struct Shape {
  std::vector<PolygonComponent> components;
};

// Signed shoelace area: positive for CCW vertex order.
double signed_area(std::span<const Point> vertices);

double area(const PolygonComponent& poly);
double area(const Shape& shape);

double perimeter(const PolygonComponent& poly);
double perimeter(const Shape& shape);

/// Area-weighted centroid. Throws ErrorKind::Degenerate for zero area.
Point barycenter(const Shape& shape);

/// Convex hull of a point cloud (Andrew's monotone chain), CCW, with
/// collinear points dropped. Throws ErrorKind::Degenerate when every
/// point is collinear.
PolygonComponent convex_hull(std::span<const Point> points);

/// Maximum pairwise distance over a convex CCW polygon (rotating calipers).
double hull_diameter(const PolygonComponent& hull);

/// Diameter of the union of all components: calipers on the joint hull.
double diameter(const Shape& shape);

/// A pair of vertices realising diameter(shape).
struct DiameterPair {
  Point a;
  Point b;
  double length = 0.0;
};
DiameterPair diameter_pair(const Shape& shape);

/// Exact area of disk ∩ polygon, summed edge by edge over the triangles
/// (center, v_i, v_{i+1}) with circular-sector terms for the parts of each
/// edge outside the disk.
double disk_polygon_intersection_area(const Disk& disk,
                                      const PolygonComponent& poly);

/// |shape Δ disk| = |shape| + |disk| - 2 Σ |component ∩ disk|.
double symm_diff_area_disk(const Shape& shape, const Disk& disk);

/// |B_0 Δ B_a| for two unit disks whose centers are `a` apart.
/// Throws ErrorKind::Domain for negative a.
double disk_disk_symm_diff(double a);

/// Regular n-gon whose area equals the disk area exactly; the circumradius
/// is inflated by sqrt(2π / (n sin(2π/n))). First vertex at polar angle
/// `phase`. Throws ErrorKind::Resolution for n < 8.
PolygonComponent polygonize_disk(const Disk& disk, std::size_t n,
                                 double phase = 0.0);

/// Point-in-polygon by winding number. Points on the boundary are
/// reported as either side.
bool contains(const PolygonComponent& poly, Point p);
bool contains(const Shape& shape, Point p);

/// Distance from p to the closest edge of any component.
double boundary_distance(const Shape& shape, Point p);

/// O(n²) segment-pair test; true when no two non-adjacent edges meet.
bool is_simple(const PolygonComponent& poly);

/// True when the two polygons share no point (edge crossings or
/// containment of one in the other both count as overlap).
bool disjoint(const PolygonComponent& a, const PolygonComponent& b);

/// Structural validation of a whole shape. `check_simple` enables the
/// O(n²) self-intersection and pairwise-disjointness tests.
void validate(const Shape& shape, bool check_simple);

/// Angular partition of a circle by a shape: the arcs inside and outside.
struct ArcInterval {
  double begin = 0.0;  // polar angle, radians
  double end = 0.0;    // begin < end, end - begin <= 2π
  bool inside = false;
};
std::vector<ArcInterval> circle_arcs(const Shape& shape, const Disk& circle);

// Rigid motions and dilations, applied to every vertex.
Shape translated(const Shape& shape, Point offset);
Shape rotated(const Shape& shape, double angle, Point pivot = {});
Shape scaled(const Shape& shape, double factor, Point pivot = {});

/// All vertices of all components, in order.
std::vector<Point> all_vertices(const Shape& shape);

}  // namespace isoperim
