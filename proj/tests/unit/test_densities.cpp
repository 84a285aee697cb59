#include <doctest.h>

#include <transmod/densities.hpp>

#include <cmath>
#include <random>

using namespace transmod;

namespace {

constexpr double kPi = 3.14159265358979323846;

const SegmentSet kE{Point(0, 0), Point(1e-3, 0)};
const Circle kF{Point(0, 0), 10};

DomainSpec big_box() {
  DomainSpec d;
  d.ambient = Box{Point(-11, -11), Point(11, 11)};
  return d;
}

}  // namespace

TEST_SUITE("densities") {

TEST_CASE("empty domain keeps the whole annulus") {
  const DomainSpec d = big_box();
  const auto cert = find_wide_subannulus(d, kE, kF);
  REQUIRE(cert);
  CHECK(cert->forbidden.empty());
  CHECK(cert->annulus.r == cert->initial.r);
  CHECK(cert->annulus.R == cert->initial.R);
  CHECK(cert->ratio_ok);
  const CertificateMass m = certificate_mass(*cert, d);
  CHECK(m.total == doctest::Approx(2 * kPi / cert->log_ratio).epsilon(1e-9));
  CHECK(m.within_bound);
}

TEST_CASE("one spanning disk is forbidden") {
  DomainSpec d = big_box();
  d.continua = {Disk{Point(2.501, 0), 2.499}, Disk{Point(0, 6), 0.5}};
  const auto cert = find_wide_subannulus(d, kE, kF);
  REQUIRE(cert);
  REQUIRE(cert->forbidden.size() == 1);
  CHECK(cert->forbidden[0] == 0);
  CHECK(cert->annulus.r == doctest::Approx(0.002));
  CHECK(cert->annulus.R == doctest::Approx(5.0));
  CHECK(cert->weights[0] == 0.0);
}

TEST_CASE("two nested spanning disks are both forbidden") {
  DomainSpec d = big_box();
  d.continua = {Disk{Point(2.501, 0), 2.499}, Disk{Point(-0.505, 0), 0.495}};
  const auto cert = find_wide_subannulus(d, kE, kF);
  REQUIRE(cert);
  REQUIRE(cert->forbidden.size() == 2);
  CHECK(cert->forbidden[0] == 0);
  CHECK(cert->forbidden[1] == 1);
  CHECK(cert->annulus.r == doctest::Approx(0.01));
  CHECK(cert->annulus.R == doctest::Approx(1.0));
  CHECK(cert->width_ok);
}

TEST_CASE("close pairs are outside the search's reach") {
  try {
    find_wide_subannulus(big_box(), SegmentSet{Point(0, 0), Point(1, 0)}, kF);
    FAIL("expected NotApplicable");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotApplicable);
  }
}

TEST_CASE("certificate mass stays under the three-term bound on random disk fields") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 30; ++t) {
    DomainSpec d = big_box();
    std::vector<Disk> disks;
    for (int a = 0; a < 4000 && disks.size() < 12; ++a) {
      const double rc = 0.005 * std::exp(std::log(1500.0) * u(rng));
      const double rad = rc * (0.05 + 0.6 * u(rng));
      const double th = 2 * kPi * u(rng);
      const Point c = rc * Point(std::cos(th), std::sin(th));
      if (rc - rad < 3e-3 || rc + rad > 9.5) continue;
      bool ok = true;
      for (const Disk& o : disks) ok = ok && (o.center - c).norm() > o.radius + rad + 1e-6;
      if (ok) disks.push_back({c, rad});
    }
    for (const Disk& k : disks) d.continua.push_back(k);
    const auto cert = find_wide_subannulus(d, kE, kF);
    REQUIRE(cert);
    CHECK(cert->forbidden.size() <= 2);
    const CertificateMass m = certificate_mass(*cert, d);
    CHECK(m.total <= m.bound * (1 + 1e-12));
    CHECK(m.wide_count < 32 * cert->log_ratio);
    CHECK(m.narrow_sq <= 32 / cert->log_ratio);
  }
}

TEST_CASE("the discretized certificate is admissible") {
  DomainSpec d = big_box();
  d.continua = {Disk{Point(0.2, 0.05), 0.08}, Disk{Point(-1.5, 1), 0.6}};
  const auto cert = find_wide_subannulus(d, kE, kF);
  REQUIRE(cert);
  const int nr = 48;
  const int na = static_cast<int>(std::lround(2 * kPi * nr / cert->log_ratio));
  const DiscreteCertificate dc = discretize_certificate(*cert, d, nr, na);
  const auto rep = verify_admissible(dc.grid, dc.density, dc.family, 200, 5);
  CHECK(rep.admissible);
  const auto m = certificate_mass(*cert, d);
  CHECK(dc.mass >= 0.0);
  CHECK(dc.mass <= m.bound);
}

TEST_CASE("phi") {
  CHECK(phi_constant() == doctest::Approx(52.05).epsilon(1e-3));
  CHECK_THROWS_AS(phi(1.0), Error);
  CHECK(phi(1e300) < phi(1e10));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.01, 50);
  for (int k = 0; k < 1000; ++k) {
    double a = 1 + u(rng), b = 1 + u(rng);
    if (a > b) std::swap(a, b);
    CHECK(phi(a) >= phi(b));
    CHECK(phi(a) * std::pow(std::log(a), 1.0 / 27) == doctest::Approx(phi_constant()).epsilon(1e-12));
  }
}

TEST_CASE("disjoint ball energy is pi times the weighted radii") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 50; ++t) {
    std::vector<Disk> balls;
    std::vector<double> a;
    double expect = 0;
    for (int k = 0; k < 200 && balls.size() < 8; ++k) {
      const Disk b{Point(10 * u(rng), 10 * u(rng)), 0.1 + u(rng)};
      bool ok = true;
      for (const Disk& o : balls) ok = ok && (o.center - b.center).norm() > o.radius + b.radius;
      if (!ok) continue;
      balls.push_back(b);
      a.push_back(u(rng));
      expect += kPi * a.back() * a.back() * b.radius * b.radius;
    }
    CHECK(ball_sum_energy(balls, a) == doctest::Approx(expect).epsilon(1e-9));
    const double ratio = bojarski_ratio(balls, a, 2.0);
    CHECK(ratio >= 4.0 - 1e-9);
    CHECK(std::isfinite(ratio));
  }
}

TEST_CASE("inflation with zero weights doubles the density") {
  DomainSpec d;
  d.continua = {Disk{Point(0.5, 0.5), 0.1}};
  const QuotientGrid g = rasterize(d, 1.0 / 32);
  MassDistribution rho = MassDistribution::zeros(g);
  rho.rho_cells.setConstant(0.7);
  const auto inf = inflate_density(g, rho, {{Point(0.5, 0.5), 0.1}}, 1.0, 0.25);
  CHECK(inf.c == doctest::Approx(68.0));
  CHECK(inf.mass_threshold == doctest::Approx(1 / (4.0 * 68 * 68)));
  CHECK(!inf.in_regime);
  for (int f = 0; f < inf.plain.n_free(); ++f) {
    const int c = inf.plain.cell_of_free[f];
    const int gf = g.free_of_cell[c];
    CHECK(inf.g.rho_cells[f] == doctest::Approx(gf >= 0 ? 1.4 : 0.0));
  }
}

}  // TEST_SUITE
