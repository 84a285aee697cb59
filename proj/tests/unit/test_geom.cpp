#include <doctest.h>

#include <transmod/geom.hpp>

#include <cmath>
#include <random>

using namespace transmod;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("geom") {

TEST_CASE("relative distance of collinear disks") {
  const Disk e{Point(0, 0), 0.5}, f{Point(3, 0), 0.5};
  CHECK(dist(e, f) == doctest::Approx(2.0));
  CHECK(diam(e) == doctest::Approx(1.0));
  CHECK(relative_distance(e, f) == doctest::Approx(2.0));
}

TEST_CASE("twin squares endpoint segments sit at relative distance one") {
  for (int n : {2, 5, 10, 20}) {
    const double x = 3 * n + 1 + 1.0 / (2 * n);
    const SegmentSet e{Point(x, 1.0 / 8), Point(x, 3.0 / 8)}, f{Point(x, 5.0 / 8), Point(x, 7.0 / 8)};
    CHECK(relative_distance(e, f) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("degenerate and overlapping pairs are rejected") {
  const Disk d{Point(0, 0), 1};
  CHECK_THROWS_AS(relative_distance(PointSet{Point(3, 0)}, d), Error);
  try {
    relative_distance(d, Disk{Point(1, 0), 1});
    FAIL("expected NotDisjoint");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotDisjoint);
  }
}

TEST_CASE("relative distance is symmetric and scale invariant") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3, 3), pos(0.1, 1.5);
  int tested = 0;
  for (int t = 0; t < 300; ++t) {
    std::vector<PlanarSet> pool = {Disk{Point(u(rng), u(rng)), pos(rng)},
                                   AxisRect{Point(u(rng), u(rng)), pos(rng), pos(rng)},
                                   SegmentSet{Point(u(rng), u(rng)), Point(u(rng), u(rng))},
                                   Circle{Point(u(rng), u(rng)), pos(rng)}};
    const PlanarSet& a = pool[t % 4];
    const PlanarSet& b = pool[(t / 4 + 1) % 4];
    if (dist(a, b) <= 1e-6) continue;
    ++tested;
    const double d = relative_distance(a, b);
    CHECK(relative_distance(b, a) == doctest::Approx(d).epsilon(1e-12));
    const double s = pos(rng) * 7;
    CHECK(relative_distance(scaled(a, s), scaled(b, s)) == doctest::Approx(d).epsilon(1e-10));
  }
  CHECK(tested > 50);
}

TEST_CASE("disks are quarter fat") {
  const auto rep = is_tau_fat(Disk{Point(0, 0), 1}, 0.25);
  CHECK(rep.tau_estimate >= 0.25 - 1e-3);
  CHECK(rep.fat);
}

TEST_CASE("rectangles are fat with constant depending on the aspect ratio") {
  CHECK(is_tau_fat(AxisRect{Point(0, 0), 1, 1}, 1 / (2 * kPi)).tau_estimate >= 1 / (2 * kPi) - 1e-3);
  CHECK(is_tau_fat(AxisRect{Point(0, 0), 10, 1}, 1 / (20 * kPi)).tau_estimate >= 1 / (20 * kPi) - 1e-3);
}

TEST_CASE("fatness witness lies in the set and the ball does not contain it") {
  const AxisRect a{Point(0, 0), 10, 1};
  const auto rep = is_tau_fat(a, 0.01);
  CHECK(contains(a, rep.witness_x, 1e-9));
  // r = dmax(x) stands for the limit r -> dmax(x) from below.
  CHECK(dmax(rep.witness_x, a) >= rep.witness_r);
  CHECK(rep.samples_used > 0);
  CHECK(rep.tau_estimate <= 1.0);
}

TEST_CASE("quasiroundness of disk, square and long rectangle") {
  CHECK(quasiroundness(Disk{Point(2, 1), 0.3}) == doctest::Approx(1.0));
  CHECK(quasiroundness(AxisRect{Point(0, 0), 1, 1}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(quasiroundness(AxisRect{Point(0, 0), 4, 1}) == doctest::Approx(std::sqrt(17.0)).epsilon(1e-6));
}

TEST_CASE("annular width examples") {
  const Annulus a{Point(0, 0), 1, 4};
  CHECK(annular_width(a, Disk{Point(10, 0), 1}) == 0.0);
  CHECK(annular_width(a, AxisRect{Point(0, -0.1), 5, 0.2}) == doctest::Approx(std::log(4.0)));
  // Disk reaching from the middle radius out past R.
  const double mid = 2.5;
  CHECK(annular_width(a, Disk{Point(mid + 1, 0), 1}) == doctest::Approx(std::log(2 * 4.0 / (1 + 4))));
}

TEST_CASE("annular width is monotone under inclusion") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  const Annulus a{Point(0, 0), 1, 10};
  for (int t = 0; t < 200; ++t) {
    const Point c(12 * u(rng) - 6, 12 * u(rng) - 6);
    const double r = 0.2 + 3 * u(rng);
    const double grow = 1 + u(rng);
    CHECK(annular_width(a, Disk{c, r}) <= annular_width(a, Disk{c, r * grow}) + 1e-12);
  }
}

TEST_CASE("annular width is superadditive on chains of overlapping disks") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  const Annulus a{Point(0, 0), 1, 20};
  for (int t = 0; t < 100; ++t) {
    std::vector<PlanarSet> chain;
    Point c(1.5 + u(rng), 0);
    double r = 0.3 + 0.5 * u(rng);
    for (int k = 0; k < 5; ++k) {
      chain.push_back(Disk{c, r});
      const double th = 0.8 * (u(rng) - 0.5);
      const double nr = 0.3 + 0.8 * u(rng);
      c += (r + nr) * 0.8 * Point(std::cos(th), std::sin(th));  // overlaps its predecessor
      r = nr;
    }
    double sum = 0;
    for (const auto& d : chain) sum += annular_width(a, d);
    CHECK(sum >= annular_width(a, chain) - 1e-12);
  }
}

TEST_CASE("two crossing disks in a thick annulus") {
  const Annulus a{Point(0, 0), 1, 14};
  const std::vector<PlanarSet> disks = {Disk{Point(7.5, 0), 7}, Disk{Point(-7.5, 0), 7}};
  CHECK(count_crossing_disks(a, disks) == 2);
}

TEST_CASE("three crossing disks exist when the annulus is thin") {
  const Annulus a{Point(0, 0), 1, 3};
  std::vector<PlanarSet> disks;
  for (int k = 0; k < 3; ++k) {
    const double th = 2 * kPi * k / 3;
    disks.push_back(Disk{2 * Point(std::cos(th), std::sin(th)), 1.05});
  }
  for (std::size_t i = 0; i < disks.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) REQUIRE(dist(disks[i], disks[j]) > 0);
  CHECK(count_crossing_disks(a, disks) == 3);
}

TEST_CASE("random disjoint disks never give three crossings of a thick annulus") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  const Annulus a{Point(0, 0), 1, 14};
  for (int t = 0; t < 2000; ++t) {
    std::vector<Disk> ds;
    for (int k = 0; k < 6 && ds.size() < 4; ++k) {
      const double th = 2 * kPi * u(rng);
      const double rad = 5 + 5 * u(rng);
      const double r = 1 + 10 * u(rng);
      const Disk d{rad * Point(std::cos(th), std::sin(th)), r};
      bool ok = true;
      for (const Disk& o : ds) ok = ok && (o.center - d.center).norm() > o.radius + d.radius;
      if (ok) ds.push_back(d);
    }
    const std::vector<PlanarSet> sets(ds.begin(), ds.end());
    CHECK(count_crossing_disks(a, sets) <= 2);
  }
}

TEST_CASE("unit disks touching a unit segment") {
  // Disjoint unit-diameter disks meeting a unit segment have centres more than 1 apart
  // inside its 1/2-neighbourhood, which holds at most four; three fit with room to spare.
  const SegmentSet e{Point(0, 0), Point(1, 0)};
  std::vector<PlanarSet> disks = {Disk{Point(-0.49, 0), 0.5}, Disk{Point(1.49, 0), 0.5}, Disk{Point(0.5, 0.49), 0.5}};
  const int meeting = count_fat_meeting(e, disks, 0.25, 1.0);
  CHECK(meeting == 3);
  CHECK((1 + 6 + 1) / 0.25 == doctest::Approx(32.0));
  disks.push_back(Disk{Point(0.5, -0.49), 0.5});
  CHECK_THROWS_AS(count_fat_meeting(e, disks, 0.25, 1.0), Error);
  disks.back() = Disk{Point(0.5, -3), 0.5};
  CHECK(count_fat_meeting(e, disks, 0.25, 1.0) == 3);
}

TEST_CASE("random packings never exceed the fat-set bound") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 1);
  const SegmentSet e{Point(0, 0), Point(1, 0)};
  for (int t = 0; t < 300; ++t) {
    std::vector<Disk> ds;
    for (int k = 0; k < 200 && ds.size() < 40; ++k) {
      const double r = 0.5 + u(rng);
      const Point c(-r + (1 + 2 * r) * u(rng), (2 * u(rng) - 1) * r);
      bool ok = true;
      for (const Disk& o : ds) ok = ok && (o.center - c).norm() > o.radius + r;
      if (ok) ds.push_back({c, r});
    }
    const std::vector<PlanarSet> sets(ds.begin(), ds.end());
    CHECK(count_fat_meeting(e, sets, 0.25, 1.0) <= 32);
  }
}

TEST_CASE("area inside a ball matches the lens formula for disks") {
  const Disk d{Point(0, 0), 1};
  CHECK(area_in_ball(d, Point(0, 0), 2) == doctest::Approx(kPi));
  CHECK(area_in_ball(d, Point(0, 0), 0.5) == doctest::Approx(kPi / 4));
  // Two unit disks at distance 1: lens area 2π/3 − √3/2.
  CHECK(area_in_ball(d, Point(1, 0), 1) == doctest::Approx(2 * kPi / 3 - std::sqrt(3.0) / 2).epsilon(1e-6));
}

TEST_CASE("adaptive integration of smooth functions") {
  CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0, kPi, 1e-10) == doctest::Approx(2.0));
  CHECK(integrate_adaptive([](double x) { return x * x; }, 1, 1, 1e-10) == 0.0);
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(validate(Disk{Point(0, 0), 0}), Error);
  CHECK_THROWS_AS(validate(PolarRect{Point(0, 0), 2, 1, 0, 1}), Error);
  CHECK_THROWS_AS(validate(PolarRect{Point(0, 0), 1, 2, 0, 7}), Error);
  CHECK_THROWS_AS(validate(Polygon{{Point(0, 0), Point(1, 1), Point(1, 0), Point(0, 1)}}), Error);
  CHECK_NOTHROW(validate(Polygon{{Point(0, 0), Point(1, 0), Point(0, 1)}}));
}

}  // TEST_SUITE
