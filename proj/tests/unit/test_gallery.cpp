#include <doctest.h>

#include <transmod/gallery.hpp>
#include <transmod/modsolve.hpp>

#include <cmath>

using namespace transmod;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("gallery") {

TEST_CASE("bonk squares") {
  const ScenarioCase one = bonk_squares(1);
  CHECK(one.domain.continua.size() == 1);
  CHECK(one.meta_value("eps") == doctest::Approx(1.0 / 3));
  const ScenarioCase three = bonk_squares(3);
  CHECK(three.domain.continua.size() == 3);
  double prev = 1;
  for (int n : {1, 3, 10, 40}) {
    const double eps = bonk_squares(n).meta_value("gap");
    CHECK(eps < prev);
    prev = eps;
  }
  // Consecutive squares drift together.
  const auto& q = three.domain.continua;
  CHECK(relative_distance(q[1], q[2]) < relative_distance(q[0], q[1]));
}

TEST_CASE("polar rectangle") {
  for (int n : {1, 2, 5, 10, 20}) {
    const ScenarioCase c = polar_rectangle_domain(n);
    CHECK(c.delta == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(c.family.forbidden == std::vector<int>{0});
    CHECK_NOTHROW(validate_domain(c.domain));
  }
  CHECK(polar_rectangle_domain(10).bound.value == doctest::Approx(0.1 / std::log(2.0)));
  CHECK(polar_rectangle_domain(10).bound.value == doctest::Approx(0.1443).epsilon(1e-3));
}

TEST_CASE("twin squares") {
  for (int n : {2, 5, 10, 20}) {
    const ScenarioCase c = twin_squares_domain(n);
    CHECK(c.delta == 1.0);
    CHECK(c.bound.value == doctest::Approx(20.0 / n));
    const double sum = c.meta_value("rect_bottom") + c.meta_value("rect_middle") + c.meta_value("rect_top");
    CHECK(sum == doctest::Approx(20.0 / n));
    CHECK(c.meta_value("rect_bottom") == doctest::Approx((1.0 / n) / (1.0 / 8)));
    CHECK(c.meta_value("rect_middle") == doctest::Approx((1.0 / n) / (1.0 / 4)));
  }
  CHECK(twin_squares_domain(5).bound.value == doctest::Approx(4.0));
  CHECK_THROWS_AS(twin_squares_domain(1), Error);
}

TEST_CASE("kissing disks") {
  for (int n : {1, 2, 8, 13, 32, 1250}) {
    const ScenarioCase c = kissing_disks_domain(n);
    const auto& k = c.domain.continua;
    CHECK(relative_distance(k[0], k[1]) == doctest::Approx(1.0 / (n + 1)).epsilon(1e-12));
    CHECK(c.meta_value("width") <= c.meta_value("width_bound") + 1e-12);
    CHECK(c.delta <= 4 * std::sqrt(5.0));
    CHECK(c.bound.value <= c.meta_value("bound_n"));
    CHECK(c.bound.value > 0);
  }
  CHECK(kissing_disks_domain(13).meta_value("bound_n") == doctest::Approx(32 / kPi));
  CHECK(kissing_disks_domain(1250).meta_value("bound_n") == doctest::Approx(160 / kPi / std::sqrt(2499.0)));
}

TEST_CASE("cases rasterize with their endpoint sets") {
  for (const auto& name : gallery_names())
    for (int n : {2, 5}) {
      const ScenarioCase c = make_case(name, n);
      const QuotientGrid g = rasterize_case(c, 1.0 / 32);
      const auto ends = family_endpoints(g, c.family);
      CHECK(!ends.sources.empty());
      CHECK(!ends.sinks.empty());
    }
  CHECK_THROWS_AS(make_case("nonesuch", 2), Error);
}

TEST_CASE("polar rectangle value respects its bound") {
  const ScenarioCase c = polar_rectangle_domain(10);
  const ModulusResult r = modulus(rasterize_case(c, 1.0 / 64), c.family);
  CHECK(r.status == SolveStatus::converged);
  CHECK(r.value <= c.bound.value + r.gap());
}

TEST_CASE("random circle domains") {
  const auto one = circle_domain_random(3, 1, 0.5);
  CHECK(one.domain.continua.size() == 1);
  const auto ten = circle_domain_random(7, 10, 0.5);
  REQUIRE(ten.domain.continua.size() == 10);
  const auto& k = ten.domain.continua;
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) CHECK(relative_distance(k[i], k[j]) > 0.5);
  CHECK(ten.separation > 0.5);
  CHECK_NOTHROW(validate_domain(ten.domain));
  try {
    circle_domain_random(1, 200, 5.0, 0.1, 0.12);
    FAIL("expected PackingFailed");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PackingFailed);
  }
}

TEST_CASE("random domains are reproducible") {
  const auto a = circle_domain_random(42, 6, 0.5);
  const auto b = circle_domain_random(42, 6, 0.5);
  REQUIRE(a.domain.continua.size() == b.domain.continua.size());
  for (std::size_t i = 0; i < a.domain.continua.size(); ++i) {
    const auto& da = std::get<Disk>(a.domain.continua[i]);
    const auto& db = std::get<Disk>(b.domain.continua[i]);
    CHECK(da.center == db.center);
    CHECK(da.radius == db.radius);
  }
}

}  // TEST_SUITE
