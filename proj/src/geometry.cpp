#include "isoperim/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace isoperim {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Resolution: return "resolution";
    case ErrorKind::Inconsistency: return "inconsistency";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::Undefined: return "undefined";
    case ErrorKind::Stencil: return "stencil";
  }
  return "unknown";
}

Point rotate(Point p, double angle, Point pivot) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Point d = p - pivot;
  return pivot + Point{c * d.x - s * d.y, s * d.x + c * d.y};
}

PolygonComponent::PolygonComponent(std::vector<Point> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw Error(ErrorKind::Structural,
                "polygon needs at least 3 vertices, got " +
                    std::to_string(vertices_.size()));
  }
  for (const Point& p : vertices_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorKind::Structural, "polygon vertex is not finite");
    }
  }
  if (!(signed_area(vertices_) > 0.0)) {
    throw Error(ErrorKind::Structural,
                "polygon must be counter-clockwise with positive area");
  }
}

double signed_area(std::span<const Point> v) {
  const std::size_t n = v.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(v[i], v[(i + 1) % n]);
  }
  return 0.5 * twice;
}

double area(const PolygonComponent& poly) { return signed_area(poly.vertices()); }

double area(const Shape& shape) {
  double total = 0.0;
  for (const auto& c : shape.components) total += area(c);
  return total;
}

double perimeter(const PolygonComponent& poly) {
  double len = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    len += distance(poly[i], poly.vertex(i + 1));
  }
  return len;
}

double perimeter(const Shape& shape) {
  double total = 0.0;
  for (const auto& c : shape.components) total += perimeter(c);
  return total;
}

Point barycenter(const Shape& shape) {
  double twice_area = 0.0;
  Point moment;
  for (const auto& c : shape.components) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Point a = c[i];
      const Point b = c.vertex(i + 1);
      const double w = cross(a, b);
      twice_area += w;
      moment += (a + b) * w;
    }
  }
  if (!(twice_area > 0.0)) {
    throw Error(ErrorKind::Degenerate, "barycenter of a shape with zero area");
  }
  return moment * (1.0 / (3.0 * twice_area));
}

PolygonComponent convex_hull(std::span<const Point> input) {
  std::vector<Point> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) {
    throw Error(ErrorKind::Degenerate, "convex hull needs 3 distinct points");
  }

  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const Point p = pts[i];
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  if (hull.size() < 3) {
    throw Error(ErrorKind::Degenerate, "all points are collinear");
  }
  return PolygonComponent(std::move(hull));
}

namespace {

struct CaliperResult {
  std::size_t i = 0;
  std::size_t j = 0;
  double length = 0.0;
};

CaliperResult rotating_calipers(std::span<const Point> h) {
  const std::size_t m = h.size();
  CaliperResult best;
  auto consider = [&](std::size_t a, std::size_t b) {
    const double d = distance(h[a], h[b]);
    if (d > best.length) best = {a, b, d};
  };
  std::size_t k = 1;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = (i + 1) % m;
    const Point edge = h[j] - h[i];
    // Advance the antipodal vertex while it moves away from edge (i, j).
    for (std::size_t guard = 0; guard < m; ++guard) {
      const std::size_t next = (k + 1) % m;
      if (cross(edge, h[next] - h[i]) > cross(edge, h[k] - h[i])) {
        k = next;
      } else {
        break;
      }
    }
    // Near-cocircular hulls make the area comparison sensitive to rounding;
    // the neighbours of k are cheap to include.
    for (std::size_t off : {m - 1, std::size_t{0}, std::size_t{1}}) {
      const std::size_t kk = (k + off) % m;
      consider(i, kk);
      consider(j, kk);
    }
  }
  return best;
}

}  // namespace

double hull_diameter(const PolygonComponent& hull) {
  return rotating_calipers(hull.vertices()).length;
}

DiameterPair diameter_pair(const Shape& shape) {
  const auto pts = all_vertices(shape);
  const PolygonComponent hull = convex_hull(pts);
  const auto r = rotating_calipers(hull.vertices());
  return {hull[r.i], hull[r.j], r.length};
}

double diameter(const Shape& shape) { return diameter_pair(shape).length; }

namespace {

// Signed area of (disk of radius r at the origin) ∩ triangle(0, a, b).
double sector(Point a, Point b, double r) {
  return 0.5 * r * r * std::atan2(cross(a, b), dot(a, b));
}

double triangle_disk_area(Point a, Point b, double r) {
  const Point d = b - a;
  const double qa = dot(d, d);
  if (qa == 0.0) return 0.0;
  const double qb = dot(a, d);
  const double qc = dot(a, a) - r * r;
  const double disc = qb * qb - qa * qc;
  // Normalised discriminant; tangential contact counts as non-crossing.
  if (disc <= 1e-12 * qa * r * r) return sector(a, b, r);
  const double sq = std::sqrt(disc);
  const double t1 = (-qb - sq) / qa;
  const double t2 = (-qb + sq) / qa;
  if (t2 <= 0.0 || t1 >= 1.0) return sector(a, b, r);
  const Point p1 = a + d * std::max(t1, 0.0);
  const Point p2 = a + d * std::min(t2, 1.0);
  return sector(a, p1, r) + 0.5 * cross(p1, p2) + sector(p2, b, r);
}

}  // namespace

double disk_polygon_intersection_area(const Disk& disk,
                                      const PolygonComponent& poly) {
  double x0 = poly[0].x, x1 = x0, y0 = poly[0].y, y1 = y0;
  for (const Point& p : poly.vertices()) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const Point& c = disk.center;
  const double r = disk.radius;
  if (c.x + r <= x0 || c.x - r >= x1 || c.y + r <= y0 || c.y - r >= y1) return 0.0;

  double total = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    total += triangle_disk_area(poly[i] - disk.center,
                                poly.vertex(i + 1) - disk.center, disk.radius);
  }
  const double cap = std::min(disk.area(), area(poly));
  return std::clamp(total, 0.0, cap);
}

double symm_diff_area_disk(const Shape& shape, const Disk& disk) {
  double inter = 0.0;
  for (const auto& c : shape.components) {
    inter += disk_polygon_intersection_area(disk, c);
  }
  return std::max(0.0, area(shape) + disk.area() - 2.0 * inter);
}

double disk_disk_symm_diff(double a) {
  if (!(a >= 0.0)) {
    throw Error(ErrorKind::Domain, "center distance must be non-negative");
  }
  if (a >= 2.0) return 2.0 * kPi;
  return 4.0 * std::asin(0.5 * a) + 2.0 * a * std::sqrt(1.0 - 0.25 * a * a);
}

PolygonComponent polygonize_disk(const Disk& disk, std::size_t n, double phase) {
  if (n < 8) {
    throw Error(ErrorKind::Resolution,
                "disk polygonization needs at least 8 vertices");
  }
  const double step = 2.0 * kPi / static_cast<double>(n);
  const double inflate =
      std::sqrt(2.0 * kPi / (static_cast<double>(n) * std::sin(step)));
  const double r = disk.radius * inflate;
  std::vector<Point> v;
  v.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = phase + step * static_cast<double>(k);
    v.push_back(disk.center + Point{r * std::cos(t), r * std::sin(t)});
  }
  return PolygonComponent(std::move(v));
}

bool contains(const PolygonComponent& poly, Point p) {
  int winding = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point a = poly[i];
    const Point b = poly.vertex(i + 1);
    if (a.y <= p.y) {
      if (b.y > p.y && cross(b - a, p - a) > 0.0) ++winding;
    } else if (b.y <= p.y && cross(b - a, p - a) < 0.0) {
      --winding;
    }
  }
  return winding != 0;
}

bool contains(const Shape& shape, Point p) {
  return std::any_of(shape.components.begin(), shape.components.end(),
                     [&](const auto& c) { return contains(c, p); });
}

namespace {

double segment_distance(Point p, Point a, Point b) {
  const Point d = b - a;
  const double len2 = dot(d, d);
  const double t = len2 > 0.0 ? std::clamp(dot(p - a, d) / len2, 0.0, 1.0) : 0.0;
  return distance(p, a + d * t);
}

int orientation(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

struct Box {
  Point lo{std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity()};
  Point hi{-std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity()};
};

Box bounds(const PolygonComponent& poly) {
  Box b;
  for (const Point& p : poly.vertices()) {
    b.lo = {std::min(b.lo.x, p.x), std::min(b.lo.y, p.y)};
    b.hi = {std::max(b.hi.x, p.x), std::max(b.hi.y, p.y)};
  }
  return b;
}

}  // namespace

double boundary_distance(const Shape& shape, Point p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : shape.components) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      best = std::min(best, segment_distance(p, c[i], c.vertex(i + 1)));
    }
  }
  return best;
}

bool is_simple(const PolygonComponent& poly) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(poly[i], poly.vertex(i + 1), poly[j],
                             poly.vertex(j + 1))) {
        return false;
      }
    }
  }
  return true;
}

bool disjoint(const PolygonComponent& a, const PolygonComponent& b) {
  const Box ba = bounds(a);
  const Box bb = bounds(b);
  if (ba.hi.x < bb.lo.x || bb.hi.x < ba.lo.x || ba.hi.y < bb.lo.y ||
      bb.hi.y < ba.lo.y) {
    return true;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (segments_intersect(a[i], a.vertex(i + 1), b[j], b.vertex(j + 1))) {
        return false;
      }
    }
  }
  return !contains(a, b[0]) && !contains(b, a[0]);
}

void validate(const Shape& shape, bool check_simple) {
  if (shape.components.empty()) {
    throw Error(ErrorKind::Structural, "shape has no components");
  }
  if (!(area(shape) > 0.0)) {
    throw Error(ErrorKind::Structural, "shape area must be positive");
  }
  if (!check_simple) return;
  for (std::size_t i = 0; i < shape.components.size(); ++i) {
    if (!is_simple(shape.components[i])) {
      throw Error(ErrorKind::Structural,
                  "component " + std::to_string(i) + " self-intersects");
    }
    for (std::size_t j = i + 1; j < shape.components.size(); ++j) {
      if (!disjoint(shape.components[i], shape.components[j])) {
        throw Error(ErrorKind::Structural, "components " + std::to_string(i) +
                                               " and " + std::to_string(j) +
                                               " overlap");
      }
    }
  }
}

std::vector<ArcInterval> circle_arcs(const Shape& shape, const Disk& circle) {
  const double r = circle.radius;
  std::vector<double> angles;
  for (const auto& c : shape.components) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Point a = c[i] - circle.center;
      const Point d = c.vertex(i + 1) - c[i];
      const double qa = dot(d, d);
      if (qa == 0.0) continue;
      const double qb = dot(a, d);
      const double qc = dot(a, a) - r * r;
      const double disc = qb * qb - qa * qc;
      if (disc <= 1e-12 * qa * r * r) continue;
      const double sq = std::sqrt(disc);
      for (double t : {(-qb - sq) / qa, (-qb + sq) / qa}) {
        if (t < 0.0 || t >= 1.0) continue;
        const Point p = a + d * t;
        double phi = std::atan2(p.y, p.x);
        if (phi < 0.0) phi += 2.0 * kPi;
        angles.push_back(phi);
      }
    }
  }

  auto classify = [&](double phi) {
    const Point p = circle.center + Point{r * std::cos(phi), r * std::sin(phi)};
    return contains(shape, p);
  };

  std::vector<ArcInterval> arcs;
  if (angles.empty()) {
    arcs.push_back({0.0, 2.0 * kPi, classify(0.0)});
    return arcs;
  }
  std::sort(angles.begin(), angles.end());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double begin = angles[i];
    const double end = i + 1 < angles.size() ? angles[i + 1] : angles[0] + 2.0 * kPi;
    if (end - begin < 1e-14) continue;
    const double mid = 0.5 * (begin + end);
    if ((end - begin) * r > 1e-9) {
      const Point pm = circle.center + Point{r * std::cos(mid), r * std::sin(mid)};
      if (boundary_distance(shape, pm) < 1e-12 * std::max(1.0, r)) {
        throw Error(ErrorKind::Degenerate,
                    "shape boundary runs along the circle; partition is ambiguous");
      }
    }
    arcs.push_back({begin, end, classify(mid)});
  }
  return arcs;
}

Shape translated(const Shape& shape, Point offset) {
  Shape out;
  for (const auto& c : shape.components) {
    std::vector<Point> v(c.vertices().begin(), c.vertices().end());
    for (auto& p : v) p += offset;
    out.components.emplace_back(std::move(v));
  }
  return out;
}

Shape rotated(const Shape& shape, double angle, Point pivot) {
  Shape out;
  for (const auto& c : shape.components) {
    std::vector<Point> v;
    v.reserve(c.size());
    for (const Point& p : c.vertices()) v.push_back(rotate(p, angle, pivot));
    out.components.emplace_back(std::move(v));
  }
  return out;
}

Shape scaled(const Shape& shape, double factor, Point pivot) {
  Shape out;
  for (const auto& c : shape.components) {
    std::vector<Point> v;
    v.reserve(c.size());
    for (const Point& p : c.vertices()) v.push_back(pivot + (p - pivot) * factor);
    out.components.emplace_back(std::move(v));
  }
  return out;
}

std::vector<Point> all_vertices(const Shape& shape) {
  std::vector<Point> pts;
  for (const auto& c : shape.components) {
    pts.insert(pts.end(), c.vertices().begin(), c.vertices().end());
  }
  return pts;
}

}  // namespace isoperim
