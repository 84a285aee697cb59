#pragma once

// Distance kernels between boundary primitives (points, segments, circular
// arcs). Everything here is templated on the scalar type and works on Eigen
// 2-vectors; PlanarSet geometry in geom.hpp is assembled from these.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace transmod {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
struct SegmentT {
  Vec2<Scalar> a;
  Vec2<Scalar> b;
};

/// Arc of the circle (center, radius) covering angles [start, start + span],
/// span in (0, 2π].
template <typename Scalar>
struct ArcT {
  Vec2<Scalar> center;
  Scalar radius;
  Scalar start;
  Scalar span;

  Vec2<Scalar> point_at(Scalar theta) const {
    return center + radius * Vec2<Scalar>(std::cos(theta), std::sin(theta));
  }
  Vec2<Scalar> first() const { return point_at(start); }
  Vec2<Scalar> last() const { return point_at(start + span); }
  bool full() const { return span >= Scalar(2) * std::numbers::pi_v<Scalar> * (1 - Scalar(1e-14)); }
};

template <typename Scalar>
inline Scalar wrap_angle(Scalar theta) {
  constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  Scalar r = std::fmod(theta, two_pi);
  if (r < 0) r += two_pi;
  return r;
}

template <typename Scalar>
inline bool angle_in_arc(Scalar theta, const ArcT<Scalar>& arc, Scalar eps = Scalar(1e-12)) {
  if (arc.full()) return true;
  const Scalar d = wrap_angle(theta - arc.start);
  constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  return d <= arc.span + eps || d >= two_pi - eps;
}

template <typename Scalar>
inline Scalar cross2(const Vec2<Scalar>& u, const Vec2<Scalar>& v) {
  return u.x() * v.y() - u.y() * v.x();
}

template <typename Scalar>
inline Vec2<Scalar> closest_point_on_segment(const Vec2<Scalar>& p, const SegmentT<Scalar>& s) {
  const Vec2<Scalar> d = s.b - s.a;
  const Scalar len2 = d.squaredNorm();
  if (len2 == 0) return s.a;
  const Scalar t = std::clamp((p - s.a).dot(d) / len2, Scalar(0), Scalar(1));
  return s.a + t * d;
}

template <typename Scalar>
inline Scalar point_segment_distance(const Vec2<Scalar>& p, const SegmentT<Scalar>& s) {
  return (p - closest_point_on_segment(p, s)).norm();
}

template <typename Scalar>
inline Scalar point_segment_max_distance(const Vec2<Scalar>& p, const SegmentT<Scalar>& s) {
  return std::max((p - s.a).norm(), (p - s.b).norm());
}

template <typename Scalar>
inline Scalar point_arc_distance(const Vec2<Scalar>& p, const ArcT<Scalar>& arc) {
  const Vec2<Scalar> d = p - arc.center;
  const Scalar r = d.norm();
  if (r == 0) return arc.radius;
  if (angle_in_arc(std::atan2(d.y(), d.x()), arc)) return std::abs(r - arc.radius);
  return std::min((p - arc.first()).norm(), (p - arc.last()).norm());
}

template <typename Scalar>
inline Scalar point_arc_max_distance(const Vec2<Scalar>& p, const ArcT<Scalar>& arc) {
  const Vec2<Scalar> d = p - arc.center;
  const Scalar r = d.norm();
  if (r == 0) return arc.radius;
  const Scalar away = std::atan2(d.y(), d.x()) + std::numbers::pi_v<Scalar>;
  if (angle_in_arc(away, arc)) return r + arc.radius;
  return std::max((p - arc.first()).norm(), (p - arc.last()).norm());
}

template <typename Scalar>
inline bool segments_intersect(const SegmentT<Scalar>& s, const SegmentT<Scalar>& t) {
  const Vec2<Scalar> r = s.b - s.a;
  const Vec2<Scalar> q = t.b - t.a;
  const Scalar d1 = cross2<Scalar>(r, t.a - s.a);
  const Scalar d2 = cross2<Scalar>(r, t.b - s.a);
  const Scalar d3 = cross2<Scalar>(q, s.a - t.a);
  const Scalar d4 = cross2<Scalar>(q, s.b - t.a);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  // Collinear or touching cases fall through to the distance test.
  return point_segment_distance<Scalar>(t.a, s) == 0 || point_segment_distance<Scalar>(t.b, s) == 0 ||
         point_segment_distance<Scalar>(s.a, t) == 0 || point_segment_distance<Scalar>(s.b, t) == 0;
}

template <typename Scalar>
inline Scalar segment_segment_distance(const SegmentT<Scalar>& s, const SegmentT<Scalar>& t) {
  if (segments_intersect(s, t)) return 0;
  return std::min({point_segment_distance<Scalar>(s.a, t), point_segment_distance<Scalar>(s.b, t),
                   point_segment_distance<Scalar>(t.a, s), point_segment_distance<Scalar>(t.b, s)});
}

template <typename Scalar>
inline Scalar segment_segment_max_distance(const SegmentT<Scalar>& s, const SegmentT<Scalar>& t) {
  return std::max(point_segment_max_distance<Scalar>(s.a, t), point_segment_max_distance<Scalar>(s.b, t));
}

/// Parameters t in [0,1] where the segment meets the full circle.
template <typename Scalar>
inline std::vector<Scalar> segment_circle_params(const SegmentT<Scalar>& s, const Vec2<Scalar>& c,
                                                 Scalar radius) {
  std::vector<Scalar> out;
  const Vec2<Scalar> d = s.b - s.a;
  const Vec2<Scalar> f = s.a - c;
  const Scalar a = d.squaredNorm();
  if (a == 0) return out;
  const Scalar b = 2 * f.dot(d);
  const Scalar cc = f.squaredNorm() - radius * radius;
  const Scalar disc = b * b - 4 * a * cc;
  if (disc < 0) return out;
  const Scalar sq = std::sqrt(disc);
  for (Scalar t : {(-b - sq) / (2 * a), (-b + sq) / (2 * a)}) {
    if (t >= Scalar(-1e-14) && t <= Scalar(1 + 1e-14)) out.push_back(std::clamp(t, Scalar(0), Scalar(1)));
  }
  return out;
}

template <typename Scalar>
inline Scalar segment_arc_distance(const SegmentT<Scalar>& s, const ArcT<Scalar>& arc) {
  for (Scalar t : segment_circle_params(s, arc.center, arc.radius)) {
    const Vec2<Scalar> p = s.a + t * (s.b - s.a) - arc.center;
    if (angle_in_arc(std::atan2(p.y(), p.x()), arc)) return 0;
  }
  Scalar best = std::min(point_arc_distance(s.a, arc), point_arc_distance(s.b, arc));
  best = std::min({best, point_segment_distance(arc.first(), s), point_segment_distance(arc.last(), s)});
  const Vec2<Scalar> foot = closest_point_on_segment(arc.center, s);
  const Vec2<Scalar> fd = foot - arc.center;
  if (fd.norm() > 0 && angle_in_arc(std::atan2(fd.y(), fd.x()), arc))
    best = std::min(best, std::abs(fd.norm() - arc.radius));
  return best;
}

template <typename Scalar>
inline Scalar segment_arc_max_distance(const SegmentT<Scalar>& s, const ArcT<Scalar>& arc) {
  return std::max(point_arc_max_distance(s.a, arc), point_arc_max_distance(s.b, arc));
}

/// Intersection angles (w.r.t. circle c1) of two full circles.
template <typename Scalar>
inline std::vector<Scalar> circle_circle_angles(const Vec2<Scalar>& c1, Scalar r1, const Vec2<Scalar>& c2,
                                                Scalar r2) {
  std::vector<Scalar> out;
  const Vec2<Scalar> d = c2 - c1;
  const Scalar dist = d.norm();
  if (dist == 0 || dist > r1 + r2 || dist < std::abs(r1 - r2)) return out;
  const Scalar base = std::atan2(d.y(), d.x());
  const Scalar cosv = std::clamp((r1 * r1 + dist * dist - r2 * r2) / (2 * r1 * dist), Scalar(-1), Scalar(1));
  const Scalar off = std::acos(cosv);
  out.push_back(base - off);
  if (off > 0) out.push_back(base + off);
  return out;
}

namespace detail {
template <typename Scalar>
inline bool arc_windows_overlap(const ArcT<Scalar>& a, const ArcT<Scalar>& b) {
  if (a.full() || b.full()) return true;
  return angle_in_arc(b.start, a) || angle_in_arc(a.start, b);
}
}  // namespace detail

template <typename Scalar>
inline Scalar arc_arc_distance(const ArcT<Scalar>& a, const ArcT<Scalar>& b) {
  const Vec2<Scalar> d = b.center - a.center;
  const Scalar dist = d.norm();
  if (dist == 0) {
    if (detail::arc_windows_overlap(a, b)) return std::abs(a.radius - b.radius);
  } else {
    for (Scalar th : circle_circle_angles(a.center, a.radius, b.center, b.radius)) {
      const Vec2<Scalar> p = a.point_at(th) - b.center;
      if (angle_in_arc(th, a) && angle_in_arc(std::atan2(p.y(), p.x()), b)) return 0;
    }
  }
  Scalar best = std::min({point_arc_distance(a.first(), b), point_arc_distance(a.last(), b),
                          point_arc_distance(b.first(), a), point_arc_distance(b.last(), a)});
  if (dist > 0) {
    const Scalar base = std::atan2(d.y(), d.x());
    for (Scalar ta : {base, base + std::numbers::pi_v<Scalar>}) {
      if (!angle_in_arc(ta, a)) continue;
      for (Scalar tb : {base, base + std::numbers::pi_v<Scalar>}) {
        if (!angle_in_arc(tb, b)) continue;
        best = std::min(best, (a.point_at(ta) - b.point_at(tb)).norm());
      }
    }
  }
  return best;
}

template <typename Scalar>
inline Scalar arc_arc_max_distance(const ArcT<Scalar>& a, const ArcT<Scalar>& b) {
  const Vec2<Scalar> d = b.center - a.center;
  const Scalar dist = d.norm();
  Scalar best = std::max({point_arc_max_distance(a.first(), b), point_arc_max_distance(a.last(), b),
                          point_arc_max_distance(b.first(), a), point_arc_max_distance(b.last(), a)});
  if (dist == 0) {
    ArcT<Scalar> flipped = b;
    flipped.start += std::numbers::pi_v<Scalar>;
    if (detail::arc_windows_overlap(a, flipped)) best = std::max(best, a.radius + b.radius);
    return best;
  }
  const Scalar base = std::atan2(d.y(), d.x());
  for (Scalar ta : {base, base + std::numbers::pi_v<Scalar>}) {
    if (!angle_in_arc(ta, a)) continue;
    for (Scalar tb : {base, base + std::numbers::pi_v<Scalar>}) {
      if (!angle_in_arc(tb, b)) continue;
      best = std::max(best, (a.point_at(ta) - b.point_at(tb)).norm());
    }
  }
  return best;
}

/// Area of the intersection of two disks.
template <typename Scalar>
inline Scalar disk_intersection_area(const Vec2<Scalar>& c0, Scalar r0, const Vec2<Scalar>& c1, Scalar r1) {
  const Scalar d = (c1 - c0).norm();
  if (d >= r0 + r1) return 0;
  if (d <= std::abs(r1 - r0)) return std::numbers::pi_v<Scalar> * std::min(r0, r1) * std::min(r0, r1);
  const Scalar a0 = std::acos(std::clamp((d * d + r0 * r0 - r1 * r1) / (2 * d * r0), Scalar(-1), Scalar(1)));
  const Scalar a1 = std::acos(std::clamp((d * d + r1 * r1 - r0 * r0) / (2 * d * r1), Scalar(-1), Scalar(1)));
  const Scalar k = (-d + r0 + r1) * (d + r0 - r1) * (d - r0 + r1) * (d + r0 + r1);
  return r0 * r0 * a0 + r1 * r1 * a1 - Scalar(0.5) * std::sqrt(std::max(k, Scalar(0)));
}

}  // namespace transmod
