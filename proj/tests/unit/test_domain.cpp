#include <doctest.h>

#include <transmod/domain.hpp>
#include <transmod/gallery.hpp>

#include <cmath>
#include <set>

using namespace transmod;

namespace {
constexpr double kPi = 3.14159265358979323846;

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::ParseError;
}
}  // namespace

TEST_SUITE("domain") {

TEST_CASE("empty unit box at h = 1/4") {
  DomainSpec d;
  const QuotientGrid g = rasterize(d, 0.25);
  CHECK(g.n_free() == 16);
  CHECK(g.contracted_count() == 0);
  CHECK(g.free_area() == doctest::Approx(1.0));
}

TEST_CASE("one centred disk") {
  DomainSpec d;
  d.continua = {Disk{Point(0.5, 0.5), 0.3}};
  const QuotientGrid g = rasterize(d, 0.05);
  CHECK(g.contracted_count() == 1);
  const double exact = 1 - kPi * 0.09;
  CHECK(std::abs(g.free_area() - exact) <= 0.05 * 2 * kPi * 0.3);
}

TEST_CASE("twin squares window has exactly two contracted vertices") {
  const ScenarioCase c = twin_squares_domain(2);
  const QuotientGrid g = rasterize(c.domain, 1.0 / 64);
  CHECK(g.contracted_count() == 2);
}

TEST_CASE("every cell has exactly one status") {
  DomainSpec d;
  d.continua = {Disk{Point(0.3, 0.3), 0.15}, AxisRect{Point(0.6, 0.55), 0.3, 0.2}};
  const QuotientGrid g = rasterize(d, 1.0 / 32);
  int free = 0, inside = 0;
  for (std::size_t c = 0; c < g.labels.size(); ++c) {
    const int l = g.labels[c];
    if (l == kFree) {
      ++free;
      CHECK(g.free_of_cell[c] >= 0);
    } else {
      CHECK(g.free_of_cell[c] == -1);
      if (l >= 0) ++inside;
    }
  }
  CHECK(free == g.n_free());
  CHECK(free + inside <= static_cast<int>(g.labels.size()));
}

TEST_CASE("refinement keeps the contracted vertex count") {
  DomainSpec d;
  d.continua = {Disk{Point(0.25, 0.5), 0.1}, Disk{Point(0.75, 0.5), 0.1}, AxisRect{Point(0.4, 0.1), 0.2, 0.1}};
  int first = -1;
  for (double h : {1.0 / 32, 1.0 / 64, 1.0 / 128}) {
    const int k = rasterize(d, h).contracted_count();
    if (first < 0) first = k;
    CHECK(k == first);
  }
  CHECK(first == 3);
}

TEST_CASE("free area converges at rate h") {
  DomainSpec d;
  d.continua = {Disk{Point(0.5, 0.5), 0.3}};
  const double exact = 1 - kPi * 0.09;
  double prev = 1;
  for (double h : {1.0 / 16, 1.0 / 64, 1.0 / 256}) {
    const double err = std::abs(rasterize(d, h).free_area() - exact);
    CHECK(err <= 2 * kPi * 0.3 * h);
    CHECK(err <= prev + 1e-12);
    prev = err;
  }
}

TEST_CASE("rasterize errors") {
  DomainSpec close;
  close.continua = {AxisRect{Point(0.2, 0.2), 0.2, 0.2}, AxisRect{Point(0.41, 0.2), 0.2, 0.2}};
  CHECK(code_of([&] { rasterize(close, 0.1); }) == Errc::SpacingTooCoarse);

  DomainSpec wall;
  wall.continua = {AxisRect{Point(0.45, -0.5), 0.1, 2}};
  CHECK(code_of([&] { rasterize(wall, 1.0 / 32); }) == Errc::DisconnectedComplement);

  DomainSpec overlap;
  overlap.continua = {Disk{Point(0.4, 0.5), 0.2}, Disk{Point(0.6, 0.5), 0.2}};
  CHECK_THROWS_AS(validate_domain(overlap), Error);
}

TEST_CASE("opposite edges give opposite cell columns") {
  DomainSpec d;
  const QuotientGrid g = rasterize(d, 1.0 / 16);
  CurveFamilySpec f;
  f.sources = {SegmentSet{Point(0, 0), Point(0, 1)}};
  f.sinks = {SegmentSet{Point(1, 0), Point(1, 1)}};
  const auto ends = family_endpoints(g, f);
  CHECK(ends.sources.size() == 16);
  CHECK(ends.sinks.size() == 16);
  for (int s : ends.sources) CHECK(g.cell_of_free[s] % g.chart.nx == 0);
  for (int s : ends.sinks) CHECK(g.cell_of_free[s] % g.chart.nx == g.chart.nx - 1);
}

TEST_CASE("forbidden continua become untraversable") {
  const ScenarioCase c = kissing_disks_domain(2);
  const QuotientGrid g = rasterize(c.domain, 1.0 / 32);
  const auto ends = family_endpoints(g, c.family);
  REQUIRE(ends.allowed_contracted.size() == 2);
  CHECK(!ends.allowed_contracted[0]);
  CHECK(!ends.allowed_contracted[1]);
  CHECK(!ends.sources.empty());
  CHECK(!ends.sinks.empty());
}

TEST_CASE("a source inside a continuum has no free cells") {
  DomainSpec d;
  d.continua = {Disk{Point(0.5, 0.5), 0.3}};
  const QuotientGrid g = rasterize(d, 1.0 / 32);
  CurveFamilySpec f;
  f.sources = {Disk{Point(0.5, 0.5), 0.05}};
  f.sinks = {SegmentSet{Point(1, 0), Point(1, 1)}};
  CHECK(code_of([&] { family_endpoints(g, f); }) == Errc::EmptyEndpointSet);
}

TEST_CASE("planted paths visit a contracted vertex iff the polyline meets the continuum") {
  DomainSpec d;
  d.continua = {Disk{Point(0.5, 0.5), 0.2}};
  const QuotientGrid g = rasterize(d, 1.0 / 64);
  const int k = g.contracted_vertex(0);
  auto visits = [&](const std::vector<Point>& pts) {
    const auto seq = trace_polyline(g, pts);
    return std::find(seq.begin(), seq.end(), k) != seq.end();
  };
  CHECK(visits({Point(0.05, 0.5), Point(0.95, 0.5)}));
  CHECK(visits({Point(0.05, 0.05), Point(0.95, 0.95)}));
  CHECK(!visits({Point(0.05, 0.1), Point(0.95, 0.1)}));
  CHECK(!visits({Point(0.05, 0.9), Point(0.95, 0.9)}));
}

TEST_CASE("log-polar chart covers the annulus") {
  DomainSpec d;
  d.ambient = Box{Point(-3, -3), Point(3, 3)};
  const QuotientGrid g = rasterize_log_polar(d, Point(0, 0), 1, std::exp(1.0), 32, 201);
  CHECK(g.chart.periodic());
  CHECK(g.n_free() == 32 * 201);
  const Point c = g.chart.center(0, 0);
  CHECK(c.norm() > 1);
  CHECK(c.norm() < std::exp(1.0 / 32));
  const Point back = g.chart.to_chart(c);
  CHECK(back.x() == doctest::Approx(0.5 * g.chart.hx));
}

TEST_CASE("stencil footprints share the move length") {
  DomainSpec d;
  const QuotientGrid g = rasterize(d, 1.0 / 8);
  const int f = g.free_of_cell[g.cell(4, 4)];
  for (int m = 0; m < 16; ++m) {
    if (!(g.moves[f] >> m & 1)) continue;
    int cells[4];
    double share[4];
    const int n = g.footprint(f, m, cells, share);
    double total = 0;
    for (int i = 0; i < n; ++i) total += share[i];
    CHECK(total == doctest::Approx(1.0));
    CHECK(g.move_target(f, m) >= 0);
  }
}

}  // TEST_SUITE
