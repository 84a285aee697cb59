#include <transmod/geom.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace transmod {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Arc full_arc(const Point& c, double r) { return Arc{c, r, 0.0, kTwoPi}; }

bool finite(const Point& p) { return std::isfinite(p.x()) && std::isfinite(p.y()); }

bool polygon_contains(const std::vector<Point>& v, const Point& p) {
  bool inside = false;
  const std::size_t n = v.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = v[i];
    const Point& b = v[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double xc = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < xc) inside = !inside;
    }
  }
  return inside;
}

double signed_area(const std::vector<Point>& v) {
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    s += a.x() * b.y() - a.y() * b.x();
  }
  return 0.5 * s;
}

// Distance/max-distance dispatch over primitive bags.
double min_distance(const Boundary& a, const Boundary& b) {
  double best = std::numeric_limits<double>::infinity();
  auto upd = [&](double d) { best = std::min(best, d); };
  for (const auto& p : a.points) {
    for (const auto& q : b.points) upd((p - q).norm());
    for (const auto& s : b.segments) upd(point_segment_distance(p, s));
    for (const auto& c : b.arcs) upd(point_arc_distance(p, c));
  }
  for (const auto& s : a.segments) {
    for (const auto& q : b.points) upd(point_segment_distance(q, s));
    for (const auto& t : b.segments) upd(segment_segment_distance(s, t));
    for (const auto& c : b.arcs) upd(segment_arc_distance(s, c));
  }
  for (const auto& c : a.arcs) {
    for (const auto& q : b.points) upd(point_arc_distance(q, c));
    for (const auto& t : b.segments) upd(segment_arc_distance(t, c));
    for (const auto& d : b.arcs) upd(arc_arc_distance(c, d));
  }
  return best;
}

double max_distance(const Boundary& a, const Boundary& b) {
  double best = 0;
  auto upd = [&](double d) { best = std::max(best, d); };
  for (const auto& p : a.points) {
    for (const auto& q : b.points) upd((p - q).norm());
    for (const auto& s : b.segments) upd(point_segment_max_distance(p, s));
    for (const auto& c : b.arcs) upd(point_arc_max_distance(p, c));
  }
  for (const auto& s : a.segments) {
    for (const auto& q : b.points) upd(point_segment_max_distance(q, s));
    for (const auto& t : b.segments) upd(segment_segment_max_distance(s, t));
    for (const auto& c : b.arcs) upd(segment_arc_max_distance(s, c));
  }
  for (const auto& c : a.arcs) {
    for (const auto& q : b.points) upd(point_arc_max_distance(q, c));
    for (const auto& t : b.segments) upd(segment_arc_max_distance(t, c));
    for (const auto& d : b.arcs) upd(arc_arc_max_distance(c, d));
  }
  return best;
}

Boundary point_boundary(const Point& x) {
  Boundary b;
  b.points.push_back(x);
  return b;
}

void extend(Box& b, const Point& p) {
  b.min = b.min.cwiseMin(p);
  b.max = b.max.cwiseMax(p);
}

void extend_arc(Box& b, const Arc& a) {
  extend(b, a.first());
  extend(b, a.last());
  for (int k = 0; k < 4; ++k) {
    const double th = k * kPi / 2;
    if (angle_in_arc(th, a)) extend(b, a.point_at(th));
  }
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * tol) return left + right + delta / 15;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (b <= a) return 0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

const char* kind_name(const PlanarSet& s) {
  return std::visit(overloaded{[](const Disk&) { return "disk"; }, [](const PointSet&) { return "point"; },
                               [](const SegmentSet&) { return "segment"; }, [](const Circle&) { return "circle"; },
                               [](const AxisRect&) { return "axis_rect"; },
                               [](const PolarRect&) { return "polar_rect"; },
                               [](const Polygon&) { return "polygon"; }},
                    s);
}

void validate(const PlanarSet& s) {
  std::visit(overloaded{
                 [](const Disk& d) {
                   if (!finite(d.center) || !(d.radius > 0) || !std::isfinite(d.radius))
                     throw Error(Errc::InvalidShape, "disk radius must be positive and finite");
                 },
                 [](const PointSet& p) {
                   if (!finite(p.p)) throw Error(Errc::InvalidShape, "point must be finite");
                 },
                 [](const SegmentSet& g) {
                   if (!finite(g.a) || !finite(g.b)) throw Error(Errc::InvalidShape, "segment must be finite");
                 },
                 [](const Circle& c) {
                   if (!finite(c.center) || !(c.radius > 0) || !std::isfinite(c.radius))
                     throw Error(Errc::InvalidShape, "circle radius must be positive and finite");
                 },
                 [](const AxisRect& r) {
                   if (!finite(r.corner) || !(r.width > 0) || !(r.height > 0) || !std::isfinite(r.width) ||
                       !std::isfinite(r.height))
                     throw Error(Errc::InvalidShape, "axis_rect needs positive width and height");
                 },
                 [](const PolarRect& p) {
                   if (!finite(p.center) || !(p.r_in > 0) || !(p.r_out > p.r_in) || !std::isfinite(p.r_out))
                     throw Error(Errc::InvalidShape, "polar_rect needs 0 < r_in < r_out");
                   if (!(p.theta_max > p.theta_min) || p.theta_max > p.theta_min + kTwoPi * (1 + 1e-15))
                     throw Error(Errc::InvalidShape, "polar_rect needs theta_min < theta_max <= theta_min + 2pi");
                 },
                 [](const Polygon& g) {
                   const auto& v = g.vertices;
                   if (v.size() < 3) throw Error(Errc::InvalidShape, "polygon needs at least 3 vertices");
                   for (const auto& p : v)
                     if (!finite(p)) throw Error(Errc::InvalidShape, "polygon vertex must be finite");
                   if (std::abs(signed_area(v)) <= 0) throw Error(Errc::InvalidShape, "polygon has zero area");
                   const std::size_t n = v.size();
                   for (std::size_t i = 0; i < n; ++i) {
                     const Segment e{v[i], v[(i + 1) % n]};
                     if ((e.a - e.b).norm() == 0) throw Error(Errc::InvalidShape, "polygon has repeated vertex");
                     for (std::size_t j = i + 1; j < n; ++j) {
                       if (j == i + 1 || (i == 0 && j == n - 1)) continue;
                       const Segment f{v[j], v[(j + 1) % n]};
                       if (segments_intersect(e, f)) throw Error(Errc::InvalidShape, "polygon is not simple");
                     }
                   }
                 },
             },
             s);
}

bool is_solid(const PlanarSet& s) {
  return std::holds_alternative<Disk>(s) || std::holds_alternative<AxisRect>(s) ||
         std::holds_alternative<PolarRect>(s) || std::holds_alternative<Polygon>(s);
}

bool contains(const PlanarSet& s, const Point& p, double tol) {
  return std::visit(
      overloaded{
          [&](const Disk& d) { return (p - d.center).norm() <= d.radius + tol; },
          [&](const PointSet& q) { return (p - q.p).norm() <= tol; },
          [&](const SegmentSet& g) { return point_segment_distance(p, Segment{g.a, g.b}) <= tol; },
          [&](const Circle& c) { return std::abs((p - c.center).norm() - c.radius) <= tol; },
          [&](const AxisRect& r) {
            return p.x() >= r.corner.x() - tol && p.x() <= r.corner.x() + r.width + tol &&
                   p.y() >= r.corner.y() - tol && p.y() <= r.corner.y() + r.height + tol;
          },
          [&](const PolarRect& q) {
            const Point d = p - q.center;
            const double rr = d.norm();
            if (rr < q.r_in - tol || rr > q.r_out + tol) return false;
            const Arc window{q.center, rr, q.theta_min, q.theta_max - q.theta_min};
            if (angle_in_arc(std::atan2(d.y(), d.x()), window, 0.0)) return true;
            if (tol <= 0) return false;
            return point_segment_distance(p, Segment{q.center + q.r_in * Point(std::cos(q.theta_min), std::sin(q.theta_min)),
                                                     q.center + q.r_out * Point(std::cos(q.theta_min), std::sin(q.theta_min))}) <= tol ||
                   point_segment_distance(p, Segment{q.center + q.r_in * Point(std::cos(q.theta_max), std::sin(q.theta_max)),
                                                     q.center + q.r_out * Point(std::cos(q.theta_max), std::sin(q.theta_max))}) <= tol;
          },
          [&](const Polygon& g) {
            if (polygon_contains(g.vertices, p)) return true;
            if (tol <= 0) return false;
            const auto& v = g.vertices;
            for (std::size_t i = 0; i < v.size(); ++i)
              if (point_segment_distance(p, Segment{v[i], v[(i + 1) % v.size()]}) <= tol) return true;
            return false;
          },
      },
      s);
}

Boundary boundary(const PlanarSet& s) {
  Boundary b;
  std::visit(overloaded{
                 [&](const Disk& d) { b.arcs.push_back(full_arc(d.center, d.radius)); },
                 [&](const PointSet& q) { b.points.push_back(q.p); },
                 [&](const SegmentSet& g) {
                   if ((g.a - g.b).norm() == 0)
                     b.points.push_back(g.a);
                   else
                     b.segments.push_back(Segment{g.a, g.b});
                 },
                 [&](const Circle& c) { b.arcs.push_back(full_arc(c.center, c.radius)); },
                 [&](const AxisRect& r) {
                   const Point p0 = r.corner;
                   const Point p1 = r.corner + Point(r.width, 0);
                   const Point p2 = r.corner + Point(r.width, r.height);
                   const Point p3 = r.corner + Point(0, r.height);
                   b.segments = {{p0, p1}, {p1, p2}, {p2, p3}, {p3, p0}};
                 },
                 [&](const PolarRect& q) {
                   const double span = q.theta_max - q.theta_min;
                   b.arcs.push_back(Arc{q.center, q.r_in, q.theta_min, span});
                   b.arcs.push_back(Arc{q.center, q.r_out, q.theta_min, span});
                   if (span < kTwoPi * (1 - 1e-14)) {
                     for (double th : {q.theta_min, q.theta_max}) {
                       const Point u(std::cos(th), std::sin(th));
                       b.segments.push_back(Segment{q.center + q.r_in * u, q.center + q.r_out * u});
                     }
                   }
                 },
                 [&](const Polygon& g) {
                   const auto& v = g.vertices;
                   for (std::size_t i = 0; i < v.size(); ++i) b.segments.push_back(Segment{v[i], v[(i + 1) % v.size()]});
                 },
             },
             s);
  return b;
}

Box bbox(const PlanarSet& s) {
  const double inf = std::numeric_limits<double>::infinity();
  Box box{Point(inf, inf), Point(-inf, -inf)};
  const Boundary b = boundary(s);
  for (const auto& p : b.points) extend(box, p);
  for (const auto& g : b.segments) {
    extend(box, g.a);
    extend(box, g.b);
  }
  for (const auto& a : b.arcs) extend_arc(box, a);
  return box;
}

Point rep_point(const PlanarSet& s) {
  return std::visit(overloaded{[](const Disk& d) -> Point { return d.center; },
                               [](const PointSet& q) -> Point { return q.p; },
                               [](const SegmentSet& g) -> Point { return g.a; },
                               [](const Circle& c) -> Point { return c.center + Point(c.radius, 0); },
                               [](const AxisRect& r) -> Point { return r.corner; },
                               [](const PolarRect& q) -> Point {
                                 return q.center + q.r_in * Point(std::cos(q.theta_min), std::sin(q.theta_min));
                               },
                               [](const Polygon& g) -> Point { return g.vertices.front(); }},
                    s);
}

double area(const PlanarSet& s) {
  return std::visit(overloaded{[](const Disk& d) { return kPi * d.radius * d.radius; },
                               [](const AxisRect& r) { return r.width * r.height; },
                               [](const PolarRect& q) {
                                 return 0.5 * (q.theta_max - q.theta_min) * (q.r_out * q.r_out - q.r_in * q.r_in);
                               },
                               [](const Polygon& g) { return std::abs(signed_area(g.vertices)); },
                               [](const auto&) { return 0.0; }},
                    s);
}

PlanarSet translated(const PlanarSet& s, const Point& t) {
  return std::visit(overloaded{[&](Disk d) -> PlanarSet { d.center += t; return d; },
                               [&](PointSet q) -> PlanarSet { q.p += t; return q; },
                               [&](SegmentSet g) -> PlanarSet { g.a += t; g.b += t; return g; },
                               [&](Circle c) -> PlanarSet { c.center += t; return c; },
                               [&](AxisRect r) -> PlanarSet { r.corner += t; return r; },
                               [&](PolarRect q) -> PlanarSet { q.center += t; return q; },
                               [&](Polygon g) -> PlanarSet {
                                 for (auto& v : g.vertices) v += t;
                                 return g;
                               }},
                    s);
}

PlanarSet scaled(const PlanarSet& s, double k) {
  return std::visit(overloaded{[&](Disk d) -> PlanarSet { d.center *= k; d.radius *= k; return d; },
                               [&](PointSet q) -> PlanarSet { q.p *= k; return q; },
                               [&](SegmentSet g) -> PlanarSet { g.a *= k; g.b *= k; return g; },
                               [&](Circle c) -> PlanarSet { c.center *= k; c.radius *= k; return c; },
                               [&](AxisRect r) -> PlanarSet {
                                 r.corner *= k; r.width *= k; r.height *= k;
                                 return r;
                               },
                               [&](PolarRect q) -> PlanarSet {
                                 q.center *= k; q.r_in *= k; q.r_out *= k;
                                 return q;
                               },
                               [&](Polygon g) -> PlanarSet {
                                 for (auto& v : g.vertices) v *= k;
                                 return g;
                               }},
                    s);
}

double diam(const PlanarSet& s) {
  if (const auto* d = std::get_if<Disk>(&s)) return 2 * d->radius;
  if (const auto* c = std::get_if<Circle>(&s)) return 2 * c->radius;
  if (std::holds_alternative<PointSet>(s)) return 0;
  const Boundary b = boundary(s);
  return max_distance(b, b);
}

double dist(const PlanarSet& a, const PlanarSet& b) {
  const auto* da = std::get_if<Disk>(&a);
  const auto* db = std::get_if<Disk>(&b);
  if (da && db) return std::max(0.0, (da->center - db->center).norm() - da->radius - db->radius);
  const double d = min_distance(boundary(a), boundary(b));
  if (d == 0) return 0;
  // No boundary contact: the sets are nested or apart.
  if (is_solid(a) && contains(a, rep_point(b), 0.0)) return 0;
  if (is_solid(b) && contains(b, rep_point(a), 0.0)) return 0;
  return d;
}

double dmin(const Point& x, const PlanarSet& s) {
  if (const auto* d = std::get_if<Disk>(&s)) return std::max(0.0, (x - d->center).norm() - d->radius);
  if (is_solid(s) && contains(s, x, 0.0)) return 0;
  return min_distance(point_boundary(x), boundary(s));
}

double dmax(const Point& x, const PlanarSet& s) {
  if (const auto* d = std::get_if<Disk>(&s)) return (x - d->center).norm() + d->radius;
  return max_distance(point_boundary(x), boundary(s));
}

double arc_measure(const PlanarSet& s, const Point& x, double radius) {
  if (!is_solid(s) || radius < 0) return 0;
  if (radius == 0) return contains(s, x, 0.0) ? kTwoPi : 0.0;
  if (const auto* d = std::get_if<Disk>(&s)) {
    const double dd = (x - d->center).norm();
    const double R = d->radius;
    if (dd + radius <= R) return kTwoPi;
    if (radius >= dd + R || dd >= radius + R) return 0;
    const double c = std::clamp((radius * radius + dd * dd - R * R) / (2 * radius * dd), -1.0, 1.0);
    return 2 * std::acos(c);
  }
  const Boundary b = boundary(s);
  std::vector<double> angles;
  for (const auto& g : b.segments) {
    for (double t : segment_circle_params(g, x, radius)) {
      const Point p = g.a + t * (g.b - g.a) - x;
      angles.push_back(wrap_angle(std::atan2(p.y(), p.x())));
    }
  }
  for (const auto& a : b.arcs) {
    for (double th : circle_circle_angles(x, radius, a.center, a.radius)) {
      const Point p = x + radius * Point(std::cos(th), std::sin(th)) - a.center;
      if (angle_in_arc(std::atan2(p.y(), p.x()), a)) angles.push_back(wrap_angle(th));
    }
  }
  auto on = [&](double th) { return contains(s, x + radius * Point(std::cos(th), std::sin(th)), 0.0); };
  if (angles.empty()) return on(0.0) ? kTwoPi : 0.0;
  std::sort(angles.begin(), angles.end());
  double total = 0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double a0 = angles[i];
    const double a1 = (i + 1 < angles.size()) ? angles[i + 1] : angles[0] + kTwoPi;
    if (a1 - a0 <= 0) continue;
    if (on(0.5 * (a0 + a1))) total += a1 - a0;
  }
  return total;
}

double area_in_ball(const PlanarSet& s, const Point& x, double r) {
  if (!is_solid(s) || r <= 0) return 0;
  if (const auto* d = std::get_if<Disk>(&s)) return disk_intersection_area(x, r, d->center, d->radius);
  if (dmin(x, s) >= r) return 0;
  if (dmax(x, s) <= r) return area(s);
  // Split at radii where the circle passes a corner or is tangent to a primitive.
  std::vector<double> cuts{0.0, r};
  auto cut = [&](double v) {
    if (v > 0 && v < r) cuts.push_back(v);
  };
  const Boundary b = boundary(s);
  for (const auto& g : b.segments) {
    cut((g.a - x).norm());
    cut((g.b - x).norm());
    cut(point_segment_distance(x, g));
  }
  for (const auto& a : b.arcs) {
    const double dd = (a.center - x).norm();
    cut(std::abs(dd - a.radius));
    cut(dd + a.radius);
    cut((a.first() - x).norm());
    cut((a.last() - x).norm());
    cut(point_arc_distance(x, a));
    cut(point_arc_max_distance(x, a));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const auto f = [&](double t) { return arc_measure(s, x, t) * t; };
  const double tol = 1e-11 * r * r;
  double total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate(f, cuts[i], cuts[i + 1], tol);
  return total;
}

double relative_distance(const PlanarSet& e, const PlanarSet& f) {
  validate(e);
  validate(f);
  const double de = diam(e);
  const double df = diam(f);
  if (de <= 0 || df <= 0) throw Error(Errc::DegenerateContinuum, "relative distance needs non-degenerate sets");
  const double d = dist(e, f);
  if (d <= 0) throw Error(Errc::NotDisjoint, "sets intersect");
  return d / std::min(de, df);
}

FatnessReport is_tau_fat(const PlanarSet& a, double tau, int sample_density) {
  validate(a);
  if (!is_solid(a)) throw Error(Errc::DegenerateContinuum, std::string("fatness undefined for ") + kind_name(a));
  if (!(tau > 0 && tau <= 1)) throw Error(Errc::PreconditionViolated, "tau must lie in (0,1]");
  sample_density = std::max(sample_density, 4);

  std::vector<Point> centres;
  const Boundary b = boundary(a);
  for (const auto& g : b.segments) {
    for (int k = 0; k <= sample_density; ++k) centres.push_back(g.a + (double(k) / sample_density) * (g.b - g.a));
  }
  for (const auto& arc : b.arcs) {
    for (int k = 0; k <= sample_density; ++k) centres.push_back(arc.point_at(arc.start + arc.span * k / sample_density));
  }
  const Box box = bbox(a);
  const Point ext = box.max - box.min;
  for (int i = 0; i < sample_density; ++i) {
    for (int j = 0; j < sample_density; ++j) {
      const Point p = box.min + Point(ext.x() * (i + 0.5) / sample_density, ext.y() * (j + 0.5) / sample_density);
      if (contains(a, p, 0.0)) centres.push_back(p);
    }
  }

  const double D = diam(a);
  std::vector<double> radii;
  for (int k = 0; k < sample_density; ++k) radii.push_back(D * std::pow(1e-3, 1.0 - double(k) / (sample_density - 1)));

  FatnessReport rep;
  rep.tau_estimate = std::numeric_limits<double>::infinity();
  auto probe = [&](const Point& x, double r) {
    const double ratio = area_in_ball(a, x, r) / (kPi * r * r);
    ++rep.samples_used;
    if (ratio < rep.tau_estimate) {
      rep.tau_estimate = ratio;
      rep.witness_x = x;
      rep.witness_r = r;
    }
  };
  for (const auto& x : centres) {
    const double far = dmax(x, a);
    for (double r : radii)
      if (r <= far) probe(x, r);
    probe(x, far);
  }
  rep.tau_estimate = std::min(rep.tau_estimate, 1.0);
  rep.fat = rep.tau_estimate >= tau;
  return rep;
}

QuasiroundFit quasiround_fit(const PlanarSet& a) {
  validate(a);
  if (!is_solid(a)) throw Error(Errc::EmptyInterior, std::string(kind_name(a)) + " has no interior");
  if (const auto* d = std::get_if<Disk>(&a)) return {d->center, d->radius, 1.0};
  if (const auto* r = std::get_if<AxisRect>(&a)) {
    const double m = std::min(r->width, r->height);
    return {r->corner + 0.5 * Point(r->width, r->height), 0.5 * m, std::hypot(r->width, r->height) / m};
  }
  const Boundary b = boundary(a);
  const double inf = std::numeric_limits<double>::infinity();
  auto inner = [&](const Point& x) { return contains(a, x, 0.0) ? min_distance(point_boundary(x), b) : 0.0; };
  auto ratio = [&](const Point& x) {
    const double din = inner(x);
    return din > 0 ? max_distance(point_boundary(x), b) / din : inf;
  };
  const Box box = bbox(a);
  const Point ext = box.max - box.min;
  constexpr int kGrid = 40;
  Point best = box.min + 0.5 * ext;
  double fbest = ratio(best);
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const Point p = box.min + Point(ext.x() * (i + 0.5) / kGrid, ext.y() * (j + 0.5) / kGrid);
      const double f = ratio(p);
      if (f < fbest) {
        fbest = f;
        best = p;
      }
    }
  }
  double step = ext.maxCoeff() / kGrid;
  const double stop = 1e-10 * ext.maxCoeff();
  while (step > stop) {
    bool moved = false;
    for (const Point& dir : {Point(1, 0), Point(-1, 0), Point(0, 1), Point(0, -1), Point(1, 1), Point(-1, -1),
                            Point(1, -1), Point(-1, 1)}) {
      const Point p = best + step * dir;
      const double f = ratio(p);
      if (f < fbest) {
        fbest = f;
        best = p;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  if (!std::isfinite(fbest)) throw Error(Errc::EmptyInterior, "no interior point found");
  return {best, inner(best), fbest};
}

double quasiroundness(const PlanarSet& a) { return quasiround_fit(a).lambda; }

std::pair<double, double> annular_reach(const Annulus& a, const PlanarSet& c) {
  const double lo = std::max(dmin(a.center, c), a.r);
  const double hi = std::min(dmax(a.center, c), a.R);
  return {lo, hi};
}

double annular_width(const Annulus& a, const PlanarSet& c) {
  const auto [lo, hi] = annular_reach(a, c);
  if (lo > hi) return 0;
  return std::log(hi / lo);
}

double annular_width(const Annulus& a, const std::vector<PlanarSet>& pieces) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0;
  for (const auto& c : pieces) {
    const auto [l, h] = annular_reach(a, c);
    if (l > h) continue;
    lo = std::min(lo, l);
    hi = std::max(hi, h);
  }
  if (lo > hi) return 0;
  return std::log(hi / lo);
}

int count_crossing_disks(const Annulus& a, const std::vector<PlanarSet>& disks) {
  std::vector<Disk> ds;
  for (const auto& s : disks) {
    const auto* d = std::get_if<Disk>(&s);
    if (!d) throw Error(Errc::InvalidShape, "count_crossing_disks takes disks only");
    validate(s);
    ds.push_back(*d);
  }
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = i + 1; j < ds.size(); ++j)
      if ((ds[i].center - ds[j].center).norm() <= ds[i].radius + ds[j].radius)
        throw Error(Errc::OverlappingDisks, "disks " + std::to_string(i) + " and " + std::to_string(j) + " meet");
  int count = 0;
  for (const auto& d : ds) {
    const double c = (d.center - a.center).norm();
    if (c - d.radius <= a.r && c + d.radius >= a.R) ++count;
  }
  return count;
}

int count_fat_meeting(const PlanarSet& e, const std::vector<PlanarSet>& sets, double tau, double lambda) {
  validate(e);
  const double de = diam(e);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    validate(sets[i]);
    if (lambda * diam(sets[i]) < de * (1 - 1e-12))
      throw Error(Errc::PreconditionViolated, "set " + std::to_string(i) + " is too small");
    if (!(std::holds_alternative<Disk>(sets[i]) && tau <= 0.25) && !is_tau_fat(sets[i], tau, 12).fat)
      throw Error(Errc::PreconditionViolated, "set " + std::to_string(i) + " is not tau-fat");
    for (std::size_t j = 0; j < i; ++j)
      if (dist(sets[i], sets[j]) <= 0)
        throw Error(Errc::PreconditionViolated, "sets " + std::to_string(j) + " and " + std::to_string(i) + " meet");
  }
  int count = 0;
  for (const auto& k : sets)
    if (dist(e, k) <= 0) ++count;
  return count;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol, int panels) {
  if (b <= a) return 0;
  panels = std::max(panels, 1);
  double total = 0;
  const double step = (b - a) / panels;
  for (int k = 0; k < panels; ++k)
    total += integrate(f, a + k * step, k + 1 == panels ? b : a + (k + 1) * step, tol / panels);
  return total;
}

}  // namespace transmod
