#include "isoperim/functionals.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "isoperim/parallel.hpp"

namespace isoperim {

double isoperimetric_deficit(const Shape& shape) {
  const double a = area(shape);
  if (!(a > 0.0)) throw Error(ErrorKind::Degenerate, "deficit of a zero-area shape");
  return perimeter(shape) / (2.0 * std::sqrt(kPi * a)) - 1.0;
}

Disk barycentric_disk(const Shape& shape) {
  return {barycenter(shape), std::sqrt(area(shape) / kPi)};
}

double barycentric_asymmetry(const Shape& shape) {
  return symm_diff_area_disk(shape, barycentric_disk(shape)) / area(shape);
}

namespace {

struct Simplex2 {
  std::array<Point, 3> p;
  std::array<double, 3> f;
};

// Nelder-Mead on a 2D point. Returns the best vertex; `converged` is false
// when the iteration cap is hit first.
template <class F>
FraenkelResult nelder_mead(F&& fn, Point start, double step, double xtol) {
  Simplex2 s;
  s.p = {start, start + Point{step, 0.0}, start + Point{0.0, step}};
  for (int i = 0; i < 3; ++i) s.f[i] = fn(s.p[i]);

  bool converged = false;
  for (int iter = 0; iter < 500; ++iter) {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return s.f[a] < s.f[b]; });
    const int best = idx[0], mid = idx[1], worst = idx[2];

    const double size = std::max(distance(s.p[best], s.p[mid]),
                                 distance(s.p[best], s.p[worst]));
    if (size < xtol && s.f[worst] - s.f[best] <= 1e-13) {
      converged = true;
      break;
    }

    const Point centroid = (s.p[best] + s.p[mid]) * 0.5;
    const Point reflected = centroid + (centroid - s.p[worst]);
    const double fr = fn(reflected);
    if (fr < s.f[best]) {
      const Point expanded = centroid + (reflected - centroid) * 2.0;
      const double fe = fn(expanded);
      if (fe < fr) {
        s.p[worst] = expanded; s.f[worst] = fe;
      } else {
        s.p[worst] = reflected; s.f[worst] = fr;
      }
      continue;
    }
    if (fr < s.f[mid]) {
      s.p[worst] = reflected; s.f[worst] = fr;
      continue;
    }
    const bool outside = fr < s.f[worst];
    const Point contracted = outside ? centroid + (reflected - centroid) * 0.5
                                     : centroid + (s.p[worst] - centroid) * 0.5;
    const double fc = fn(contracted);
    if (fc < (outside ? fr : s.f[worst])) {
      s.p[worst] = contracted; s.f[worst] = fc;
      continue;
    }
    for (int i : {mid, worst}) {
      s.p[i] = s.p[best] + (s.p[i] - s.p[best]) * 0.5;
      s.f[i] = fn(s.p[i]);
    }
  }
  int best = 0;
  for (int i = 1; i < 3; ++i) {
    if (s.f[i] < s.f[best]) best = i;
  }
  return {s.f[best], s.p[best], converged};
}

bool better(const FraenkelResult& a, const FraenkelResult& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.center.x != b.center.x) return a.center.x < b.center.x;
  return a.center.y < b.center.y;
}

}  // namespace

FraenkelResult fraenkel_asymmetry(const Shape& shape) {
  const double a = area(shape);
  if (!(a > 0.0)) throw Error(ErrorKind::Degenerate, "Fraenkel asymmetry of zero area");
  const double r = std::sqrt(a / kPi);
  auto objective = [&](Point y) { return symm_diff_area_disk(shape, {y, r}) / a; };

  const Point g = barycenter(shape);
  std::vector<Point> starts{g};
  if (shape.components.size() > 1) {
    Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Point hi = lo * -1.0;
    for (const Point& p : all_vertices(shape)) {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        starts.push_back({lo.x + (hi.x - lo.x) * i / 4.0, lo.y + (hi.y - lo.y) * j / 4.0});
      }
    }
  }

  std::vector<FraenkelResult> runs(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    runs[i] = nelder_mead(objective, starts[i], 0.25 * r, 1e-9 * r);
  });

  FraenkelResult best = runs.front();
  for (const auto& run : runs) {
    if (better(run, best)) best = run;
  }
  return best;
}

FunctionalReport evaluate(const Shape& shape, const EvalOptions& options) {
  validate(shape, false);
  FunctionalReport rep;
  rep.area = area(shape);
  rep.perimeter = perimeter(shape);
  rep.barycenter = barycenter(shape);
  rep.diameter = diameter(shape);
  rep.delta = rep.perimeter / (2.0 * std::sqrt(kPi * rep.area)) - 1.0;
  rep.barycentric_disk = {rep.barycenter, std::sqrt(rep.area / kPi)};
  rep.lambda0 = symm_diff_area_disk(shape, rep.barycentric_disk) / rep.area;
  if (options.fraenkel) {
    const auto fr = fraenkel_asymmetry(shape);
    rep.fraenkel = std::min(fr.value, rep.lambda0);
    rep.fraenkel_center = fr.value <= rep.lambda0 ? fr.center : rep.barycenter;
    rep.fraenkel_converged = fr.converged;
  } else {
    rep.fraenkel = std::numeric_limits<double>::quiet_NaN();
    rep.fraenkel_center = {std::numeric_limits<double>::quiet_NaN(),
                           std::numeric_limits<double>::quiet_NaN()};
  }
  if (rep.lambda0 > options.lambda0_floor) {
    rep.objective = rep.delta / (rep.lambda0 * rep.lambda0);
  }
  return rep;
}

std::vector<std::vector<BoundarySample>> boundary_samples(const Shape& shape) {
  std::vector<std::vector<BoundarySample>> out;
  out.reserve(shape.components.size());
  for (const auto& c : shape.components) {
    const std::size_t n = c.size();
    std::vector<BoundarySample> samples(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Point prev = c.vertex(i + n - 1);
      const Point cur = c[i];
      const Point next = c.vertex(i + 1);
      const Point e0 = cur - prev;
      const Point e1 = next - cur;
      const Point chord = next - prev;
      const double chord_len = norm(chord);
      auto& s = samples[i];
      s.pos = cur;
      s.normal = Point{chord.y, -chord.x} * (1.0 / chord_len);
      // Moving this vertex by t along the normal changes the area by
      // t * chord / 2 and the perimeter by t * n·(u0 - u1).
      s.weight = 0.5 * chord_len;
      s.theta = std::atan2(e1.y, e1.x);
      const Point turn = e0 * (1.0 / norm(e0)) - e1 * (1.0 / norm(e1));
      s.curvature = dot(s.normal, turn) / s.weight;
    }
    out.push_back(std::move(samples));
  }
  return out;
}

NormalizedShape normalize(const Shape& shape) {
  const double a = area(shape);
  if (!(a > 0.0)) throw Error(ErrorKind::Degenerate, "cannot normalize a zero-area shape");
  NormalizedShape ns;
  ns.origin = barycenter(shape);
  ns.scale = std::sqrt(kPi / a);
  ns.shape = scaled(translated(shape, ns.origin * -1.0), ns.scale);
  return ns;
}

BarycentricPartition unit_circle_partition(const Shape& normalized) {
  BarycentricPartition part;
  part.arcs = circle_arcs(normalized, Disk{{0.0, 0.0}, 1.0});
  for (const auto& arc : part.arcs) {
    const double len = arc.end - arc.begin;
    const double ic = std::sin(arc.end) - std::sin(arc.begin);
    const double is = std::cos(arc.begin) - std::cos(arc.end);
    if (arc.inside) {
      part.len_B_in += len;
      part.int_cos_in += ic;
      part.int_sin_in += is;
    } else {
      part.len_B_out += len;
      part.int_cos_out += ic;
      part.int_sin_out += is;
    }
  }
  return part;
}

namespace {

void check_field(const Shape& shape, const PerturbationField& field) {
  if (field.normal_speed.size() != shape.components.size()) {
    throw Error(ErrorKind::Resolution, "field has " +
                                           std::to_string(field.normal_speed.size()) +
                                           " components, shape has " +
                                           std::to_string(shape.components.size()));
  }
  for (std::size_t k = 0; k < shape.components.size(); ++k) {
    if (shape.components[k].size() < 16) {
      throw Error(ErrorKind::Resolution,
                  "curvature needs at least 16 vertices per component");
    }
    if (field.normal_speed[k].size() != shape.components[k].size()) {
      throw Error(ErrorKind::Resolution, "field sample count does not match component " +
                                             std::to_string(k));
    }
    for (double v : field.normal_speed[k]) {
      if (!std::isfinite(v)) throw Error(ErrorKind::Domain, "field value is not finite");
    }
  }
}

// Normal speed along each edge, linear between the endpoint values
// v_i (n_i · nu) where nu is the edge's own outward normal. This is the
// exact first-order flux of the vertex motion through the edge.
struct EdgeSpeed {
  Point a;
  Point d;
  double len = 0.0;
  double va = 0.0;
  double vb = 0.0;
};

std::vector<EdgeSpeed> edge_speeds(const Shape& shape, const PerturbationField& field,
                                   double speed_scale) {
  const auto samples = boundary_samples(shape);
  std::vector<EdgeSpeed> edges;
  for (std::size_t k = 0; k < shape.components.size(); ++k) {
    const auto& c = shape.components[k];
    const auto& s = samples[k];
    const auto& v = field.normal_speed[k];
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      EdgeSpeed e;
      e.a = c[i];
      e.d = c[j] - c[i];
      e.len = norm(e.d);
      const Point nu = Point{e.d.y, -e.d.x} * (1.0 / e.len);
      e.va = speed_scale * v[i] * dot(s[i].normal, nu);
      e.vb = speed_scale * v[j] * dot(s[j].normal, nu);
      edges.push_back(e);
    }
  }
  return edges;
}

// ∫_{∂K out} v - ∫_{∂K in} v relative to the unit circle, edges split at
// their circle crossings.
double signed_out_minus_in(const std::vector<EdgeSpeed>& edges) {
  double total = 0.0;
  for (const auto& e : edges) {
    const Point a = e.a;
    const Point d = e.d;
    std::array<double, 4> cuts{0.0, 1.0, 1.0, 1.0};
    std::size_t ncut = 1;
    const double qa = dot(d, d);
    const double qb = dot(a, d);
    const double qc = dot(a, a) - 1.0;
    const double disc = qb * qb - qa * qc;
    if (qa > 0.0 && disc > 1e-12 * qa) {
      const double sq = std::sqrt(disc);
      for (double t : {(-qb - sq) / qa, (-qb + sq) / qa}) {
        if (t > 0.0 && t < 1.0) cuts[ncut++] = t;
      }
    }
    cuts[ncut++] = 1.0;
    for (std::size_t j = 0; j + 1 < ncut; ++j) {
      const double t0 = cuts[j];
      const double t1 = cuts[j + 1];
      if (t1 <= t0) continue;
      const double tm = 0.5 * (t0 + t1);
      const bool in = norm(a + d * tm) < 1.0 - 1e-12;
      // ∫_{t0}^{t1} (va (1-t) + vb t) len dt
      const double piece = e.len * (t1 - t0) * (e.va + (e.vb - e.va) * tm);
      total += in ? -piece : piece;
    }
  }
  return total;
}

}  // namespace

double delta_derivative(const Shape& shape, const PerturbationField& field) {
  check_field(shape, field);
  const auto samples = boundary_samples(shape);
  double d_perimeter = 0.0;
  double d_area = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    for (std::size_t i = 0; i < samples[k].size(); ++i) {
      const auto& s = samples[k][i];
      const double vn = field.normal_speed[k][i];
      d_perimeter += s.curvature * vn * s.weight;
      d_area += vn * s.weight;
    }
  }
  const double a = area(shape);
  const double delta = perimeter(shape) / (2.0 * std::sqrt(kPi * a)) - 1.0;
  return d_perimeter / (2.0 * std::sqrt(kPi * a)) - (delta + 1.0) * d_area / (2.0 * a);
}

double lambda0_derivative(const Shape& shape, const PerturbationField& field) {
  check_field(shape, field);
  const NormalizedShape ns = normalize(shape);
  const auto edges = edge_speeds(ns.shape, field, ns.scale);

  double flux = 0.0;
  Point moment;
  for (const auto& e : edges) {
    flux += 0.5 * e.len * (e.va + e.vb);
    const Point b = e.a + e.d;
    moment += (e.a * (e.va / 3.0 + e.vb / 6.0) + b * (e.va / 6.0 + e.vb / 3.0)) * e.len;
  }
  const double a = moment.x / kPi;
  const double b = moment.y / kPi;
  const double alpha = flux / (2.0 * kPi);

  const auto part = unit_circle_partition(ns.shape);
  const double ball_term = a * (part.int_cos_out - part.int_cos_in) +
                           b * (part.int_sin_out - part.int_sin_in) +
                           alpha * (part.len_B_out - part.len_B_in);
  const double boundary_term = signed_out_minus_in(edges);
  const double lambda0 = symm_diff_area_disk(ns.shape, {{0.0, 0.0}, 1.0}) / area(ns.shape);
  return (ball_term + boundary_term - lambda0 * flux) / kPi;
}

double objective_derivative(const Shape& shape, const PerturbationField& field) {
  check_field(shape, field);
  const double lambda0 = barycentric_asymmetry(shape);
  if (!(lambda0 > EvalOptions{}.lambda0_floor)) {
    throw Error(ErrorKind::Undefined, "objective undefined: barycentric asymmetry is zero");
  }
  const double delta = isoperimetric_deficit(shape);
  const double dd = delta_derivative(shape, field);
  const double dl = lambda0_derivative(shape, field);
  return dd / (lambda0 * lambda0) - 2.0 * delta * dl / (lambda0 * lambda0 * lambda0);
}

Shape perturbed(const Shape& shape, const PerturbationField& field, double t) {
  check_field(shape, field);
  const auto samples = boundary_samples(shape);
  Shape out;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    std::vector<Point> v;
    v.reserve(samples[k].size());
    for (std::size_t i = 0; i < samples[k].size(); ++i) {
      const auto& s = samples[k][i];
      v.push_back(s.pos + s.normal * (t * field.normal_speed[k][i]));
    }
    out.components.emplace_back(std::move(v));
  }
  return out;
}

}  // namespace isoperim
