#include <doctest.h>

#include <transmod/modsolve.hpp>

#include <cmath>
#include <random>

using namespace transmod;

namespace {

constexpr double kPi = 3.14159265358979323846;

CurveFamilySpec crossing() {
  CurveFamilySpec f;
  f.sources = {SegmentSet{Point(0, 0), Point(0, 1)}};
  f.sinks = {SegmentSet{Point(1, 0), Point(1, 1)}};
  return f;
}

std::vector<int> row_path(const QuotientGrid& g, int j) {
  std::vector<int> v;
  for (int i = 0; i < g.chart.nx; ++i) v.push_back(g.free_of_cell[g.cell(i, j)]);
  return v;
}

}  // namespace

TEST_SUITE("modsolve") {

TEST_CASE("zero density gives zero length") {
  const QuotientGrid g = rasterize(DomainSpec{}, 1.0 / 16);
  const auto rho = MassDistribution::zeros(g);
  CHECK(transboundary_length(g, rho, make_path(g, row_path(g, 3))) == 0.0);
}

TEST_CASE("unit density on a straight crossing has unit length") {
  const int n = 32;
  const QuotientGrid g = rasterize(DomainSpec{}, 1.0 / n);
  MassDistribution rho = MassDistribution::zeros(g);
  rho.rho_cells.setOnes();
  CHECK(std::abs(transboundary_length(g, rho, make_path(g, row_path(g, 7))) - 1.0) <= 1.0 / n);
}

TEST_CASE("a single contracted weight of one makes a path admissible") {
  DomainSpec d;
  d.continua = {AxisRect{Point(0.4, 0.4), 0.2, 0.2}};
  const QuotientGrid g = rasterize(d, 1.0 / 20);
  MassDistribution rho = MassDistribution::zeros(g);
  rho.rho_contracted[0] = 1;
  const auto p = trace_polyline(g, {Point(0.025, 0.5), Point(0.975, 0.5)});
  CHECK(transboundary_length(g, rho, make_path(g, p)) == doctest::Approx(1.0));
}

TEST_CASE("non-adjacent vertices are rejected") {
  const QuotientGrid g = rasterize(DomainSpec{}, 1.0 / 16);
  const std::vector<int> bad = {g.free_of_cell[g.cell(0, 0)], g.free_of_cell[g.cell(5, 5)]};
  CHECK_THROWS_AS(make_path(g, bad), Error);
}

TEST_CASE("oracle lengths") {
  const QuotientGrid g = rasterize(DomainSpec{}, 1.0 / 64);
  const auto ends = family_endpoints(g, crossing());
  MassDistribution rho = MassDistribution::zeros(g);
  auto p = shortest_path(g, rho, ends);
  REQUIRE(p);
  CHECK(transboundary_length(g, rho, *p) == 0.0);
  rho.rho_cells.setOnes();
  p = shortest_path(g, rho, ends);
  REQUIRE(p);
  CHECK(std::abs(transboundary_length(g, rho, *p) - 1.0) <= 1.0 / 64);
}

TEST_CASE("forbidding the only bridge disconnects the family") {
  DomainSpec d;
  d.ambient = Box{Point(0, 0), Point(2, 1)};
  d.continua = {AxisRect{Point(0.9, -0.5), 0.2, 1.2}};
  const QuotientGrid g = rasterize(d, 1.0 / 16);
  // Restricted to the strip below the top of the wall, every path must cross it.
  CurveFamilySpec f;
  f.sources = {SegmentSet{Point(0, 0.1), Point(0, 0.4)}};
  f.sinks = {SegmentSet{Point(2, 0.1), Point(2, 0.4)}};
  f.restriction = Box{Point(0, 0), Point(2, 0.5)};
  CHECK(modulus(g, f).status == SolveStatus::converged);
  f.forbidden = {0};
  const auto ends = family_endpoints(g, f);
  CHECK(!shortest_path(g, MassDistribution::zeros(g), ends));
  const ModulusResult r = modulus(g, f);
  CHECK(r.status == SolveStatus::infeasible_family);
  CHECK(r.value == 0.0);
}

TEST_CASE("unit square crossing") {
  const QuotientGrid g = rasterize(DomainSpec{}, 1.0 / 64);
  const ModulusResult r = modulus(g, crossing());
  CHECK(r.status == SolveStatus::converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(0.10));
  CHECK(r.lower_bound <= r.value + 1e-12);
  CHECK(r.value <= r.upper_bound + 1e-12);
  CHECK(r.gap() <= 0.02 * r.value + 1e-12);
  CHECK(r.shortest_final >= 1 - 1e-3);
}

TEST_CASE("rectangle crossing scales as width over height") {
  // Strip of width 1/4 and height 1/8, crossed between its vertical sides.
  DomainSpec d;
  d.ambient = Box{Point(0, 0), Point(0.25, 0.125)};
  const QuotientGrid g = rasterize(d, 1.0 / 256);
  CurveFamilySpec f;
  f.sources = {SegmentSet{Point(0, 0), Point(0, 0.125)}};
  f.sinks = {SegmentSet{Point(0.25, 0), Point(0.25, 0.125)}};
  const ModulusResult r = modulus(g, f);
  CHECK(r.value == doctest::Approx(0.5).epsilon(0.10));
}

TEST_CASE("the solver density is admissible") {
  DomainSpec d;
  d.continua = {Disk{Point(0.5, 0.5), 0.2}};
  const QuotientGrid g = rasterize(d, 1.0 / 32);
  const ModulusResult r = modulus(g, crossing());
  REQUIRE(r.status == SolveStatus::converged);
  const auto rep = verify_admissible(g, r.density, crossing(), 200, 3);
  CHECK(rep.admissible);
  CHECK(rep.min_length >= 1 - 1e-3);
  const auto zero = verify_admissible(g, MassDistribution::zeros(g), crossing(), 20, 3);
  CHECK(!zero.admissible);
  CHECK(zero.min_length == 0.0);
}

TEST_CASE("annulus on a log-polar chart") {
  DomainSpec d;
  d.ambient = Box{Point(-3, -3), Point(3, 3)};
  const int nx = 32, ny = static_cast<int>(std::lround(2 * kPi * nx));
  const QuotientGrid g = rasterize_log_polar(d, Point(0, 0), 1, std::exp(1.0), nx, ny);
  CurveFamilySpec f;
  f.sources = {Circle{Point(0, 0), 1}};
  f.sinks = {Circle{Point(0, 0), std::exp(1.0)}};
  const ModulusResult r = modulus(g, f);
  CHECK(r.status == SolveStatus::converged);
  CHECK(r.value == doctest::Approx(2 * kPi).epsilon(0.10));
}

TEST_CASE("forbidding more continua never increases the value") {
  DomainSpec d;
  d.continua = {Disk{Point(0.3, 0.5), 0.12}, Disk{Point(0.7, 0.5), 0.12}};
  const QuotientGrid g = rasterize(d, 1.0 / 32);
  CurveFamilySpec f = crossing();
  const ModulusResult r0 = modulus(g, f);
  f.forbidden = {0};
  const ModulusResult r1 = modulus(g, f);
  f.forbidden = {0, 1};
  const ModulusResult r2 = modulus(g, f);
  CHECK(r1.value <= r0.value + r0.gap() + r1.gap());
  CHECK(r2.value <= r1.value + r1.gap() + r2.gap());
}

TEST_CASE("repeat solves are bit identical") {
  DomainSpec d;
  d.continua = {Disk{Point(0.4, 0.6), 0.15}};
  const QuotientGrid g = rasterize(d, 1.0 / 32);
  const ModulusResult a = modulus(g, crossing());
  const ModulusResult b = modulus(g, crossing());
  CHECK(a.value == b.value);
  CHECK(a.upper_bound == b.upper_bound);
  CHECK(a.iterations == b.iterations);
  CHECK((a.density.rho_cells.array() == b.density.rho_cells.array()).all());
}

TEST_CASE("iteration cap is reported") {
  const QuotientGrid g = rasterize(DomainSpec{}, 1.0 / 32);
  SolverConfig cfg;
  cfg.max_paths = 2;
  cfg.batch = 1;
  cfg.warm_start = false;
  const ModulusResult r = modulus(g, crossing(), cfg);
  CHECK(r.status == SolveStatus::iteration_cap);
  CHECK(r.lower_bound <= r.upper_bound);
}

}  // TEST_SUITE
