#pragma once

#include <transmod/error.hpp>
#include <transmod/primitives.hpp>

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace transmod {

using Point = Vec2<double>;
using Segment = SegmentT<double>;
using Arc = ArcT<double>;

struct Disk {
  Point center;
  double radius;
};

struct PointSet {
  Point p;
};

/// Closed straight segment; a degenerate-interior continuum.
struct SegmentSet {
  Point a;
  Point b;
};

/// The circle itself (not the disk).
struct Circle {
  Point center;
  double radius;
};

struct AxisRect {
  Point corner;  // lower-left
  double width;
  double height;
};

/// {center + r e^{iθ} : r_in <= r <= r_out, theta_min <= θ <= theta_max}
struct PolarRect {
  Point center;
  double r_in;
  double r_out;
  double theta_min;
  double theta_max;
};

struct Polygon {
  std::vector<Point> vertices;
};

using PlanarSet = std::variant<Disk, PointSet, SegmentSet, Circle, AxisRect, PolarRect, Polygon>;

struct Box {
  Point min;
  Point max;
};

struct Annulus {
  Point center;
  double r;
  double R;
};

/// Boundary of a set as a bag of primitives.
struct Boundary {
  std::vector<Point> points;
  std::vector<Segment> segments;
  std::vector<Arc> arcs;
};

const char* kind_name(const PlanarSet& s);

void validate(const PlanarSet& s);
bool is_solid(const PlanarSet& s);
bool contains(const PlanarSet& s, const Point& p, double tol = 1e-12);
Boundary boundary(const PlanarSet& s);
Box bbox(const PlanarSet& s);
Point rep_point(const PlanarSet& s);
double area(const PlanarSet& s);

PlanarSet translated(const PlanarSet& s, const Point& t);
PlanarSet scaled(const PlanarSet& s, double factor);

double diam(const PlanarSet& s);
double dist(const PlanarSet& a, const PlanarSet& b);
double dmin(const Point& x, const PlanarSet& s);
double dmax(const Point& x, const PlanarSet& s);

/// Angular measure of {θ : x + s e^{iθ} ∈ S}.
double arc_measure(const PlanarSet& s, const Point& x, double radius);
/// Area of S ∩ B(x, r).
double area_in_ball(const PlanarSet& s, const Point& x, double r);

double relative_distance(const PlanarSet& e, const PlanarSet& f);

struct FatnessReport {
  double tau_estimate = 1.0;
  Point witness_x = Point::Zero();
  double witness_r = 0.0;
  long samples_used = 0;
  bool fat = true;
};

FatnessReport is_tau_fat(const PlanarSet& a, double tau, int sample_density = 24);

struct QuasiroundFit {
  Point center;
  double r_in;
  double lambda;
};

QuasiroundFit quasiround_fit(const PlanarSet& a);
double quasiroundness(const PlanarSet& a);

/// Interval of |x - y| over y in A ∩ C; empty (lo > hi) when they miss.
std::pair<double, double> annular_reach(const Annulus& a, const PlanarSet& c);
double annular_width(const Annulus& a, const PlanarSet& c);
/// Width of a union: log(sup / inf) over the pieces meeting A.
double annular_width(const Annulus& a, const std::vector<PlanarSet>& pieces);

/// Adaptive Simpson over [a, b], started on `panels` equal pieces.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol, int panels = 16);

int count_crossing_disks(const Annulus& a, const std::vector<PlanarSet>& disks);
int count_fat_meeting(const PlanarSet& e, const std::vector<PlanarSet>& sets, double tau, double lambda);

}  // namespace transmod
