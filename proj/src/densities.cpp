#include <transmod/densities.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace transmod {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTie = 1e-12;

bool lex_less(const Point& a, const Point& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); }

// Lowest-lexicographic point of a pair realizing diam(s).
Point diameter_anchor(const PlanarSet& s) {
  if (const auto* d = std::get_if<Disk>(&s)) return d->center - Point(d->radius, 0);
  if (const auto* c = std::get_if<Circle>(&s)) return c->center - Point(c->radius, 0);
  const Boundary b = boundary(s);
  std::vector<Point> pts = b.points;
  for (const auto& g : b.segments) {
    pts.push_back(g.a);
    pts.push_back(g.b);
  }
  for (const auto& a : b.arcs)
    for (int k = 0; k <= 256; ++k) pts.push_back(a.point_at(a.start + a.span * k / 256.0));
  if (pts.empty()) return rep_point(s);
  Point best_a = pts[0];
  Point best_b = pts[0];
  double best = -1;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = (pts[i] - pts[j]).squaredNorm();
      if (d > best) {
        best = d;
        best_a = pts[i];
        best_b = pts[j];
      }
    }
  return lex_less(best_b, best_a) ? best_b : best_a;
}

// Distance interval of the box complement seen from x, clipped to the annulus.
std::pair<double, double> outer_reach(const Annulus& a, const Box& box) {
  const Point& x = a.center;
  const bool inside = x.x() > box.min.x() && x.x() < box.max.x() && x.y() > box.min.y() && x.y() < box.max.y();
  const double d_edge = inside ? std::min({x.x() - box.min.x(), box.max.x() - x.x(), x.y() - box.min.y(),
                                           box.max.y() - x.y()})
                               : 0.0;
  return {std::max(d_edge, a.r), a.R};
}

struct Component {
  const PlanarSet* set = nullptr;  // null for the outer component
};

std::vector<Component> components(const DomainSpec& spec) {
  std::vector<Component> out;
  for (const auto& s : spec.continua) out.push_back({&s});
  if (spec.outer) out.push_back({nullptr});
  return out;
}

std::pair<double, double> reach(const Annulus& a, const Component& c, const DomainSpec& spec) {
  return c.set ? annular_reach(a, *c.set) : outer_reach(a, spec.ambient);
}

double width(const Annulus& a, const Component& c, const DomainSpec& spec) {
  const auto [lo, hi] = reach(a, c, spec);
  return lo > hi ? 0.0 : std::log(hi / lo);
}

// Angular measure of the component on the circle of radius s about x.
double component_arc(const Component& c, const DomainSpec& spec, const Point& x, double s) {
  if (c.set) return arc_measure(*c.set, x, s);
  const Box& b = spec.ambient;
  const PlanarSet box = AxisRect{b.min, b.max.x() - b.min.x(), b.max.y() - b.min.y()};
  return kTwoPi - arc_measure(box, x, s);
}

}  // namespace

double AnnulusCertificate::density(const Point& z) const {
  const double r = (z - annulus.center).norm();
  if (r < annulus.r || r > annulus.R) return 0;
  return 1.0 / (log_ratio * r);
}

std::optional<AnnulusCertificate> find_wide_subannulus(const DomainSpec& spec, const PlanarSet& e_in,
                                                       const PlanarSet& f_in) {
  const double delta = relative_distance(e_in, f_in);
  if (!(std::log(delta) > 3 * std::log(14.0)))
    throw Error(Errc::NotApplicable, "relative distance " + std::to_string(delta) + " is not above 14^3");
  const bool swap = diam(f_in) < diam(e_in);
  const PlanarSet& e = swap ? f_in : e_in;
  const PlanarSet& f = swap ? e_in : f_in;
  const Point x = diameter_anchor(e);

  AnnulusCertificate cert;
  cert.delta = delta;
  cert.initial = Annulus{x, diam(e), dist(e, f)};
  const auto comps = components(spec);

  Annulus a = cert.initial;
  for (int stage = 0;; ++stage) {
    const double threshold = std::cbrt(std::log(a.R / a.r));
    int pick = -1;
    double pick_w = 0;
    for (int i = 0; i < static_cast<int>(comps.size()); ++i) {
      if (std::find(cert.forbidden.begin(), cert.forbidden.end(), i) != cert.forbidden.end()) continue;
      const double w = width(a, comps[i], spec);
      if (w > threshold - kTie && w > pick_w) {
        pick = i;
        pick_w = w;
      }
    }
    if (pick < 0) break;
    if (stage == 2) return std::nullopt;
    const auto [lo, hi] = reach(a, comps[pick], spec);
    a = Annulus{x, lo, hi};
    cert.forbidden.push_back(pick);
  }

  cert.annulus = a;
  cert.log_ratio = std::log(a.R / a.r);
  const double L = cert.log_ratio;
  cert.mass_bound = kTwoPi / L + 32 / L + 32 / std::cbrt(L);
  cert.ratio_ok = a.R / a.r >= 14 * (1 - kTie);
  cert.width_ok = true;
  cert.widths.resize(comps.size());
  cert.weights.assign(comps.size(), 0.0);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    cert.widths[i] = width(a, comps[i], spec);
    const bool in_j = std::find(cert.forbidden.begin(), cert.forbidden.end(), static_cast<int>(i)) !=
                      cert.forbidden.end();
    if (in_j) continue;
    cert.weights[i] = cert.widths[i] / L;
    if (cert.widths[i] > std::cbrt(L) + kTie) cert.width_ok = false;
  }
  // log Δ > log(14)^27, compared one logarithm further down.
  cert.formally_covered = std::log(delta) > 1 && std::log(std::log(delta)) > 27 * std::log(std::log(14.0));
  return cert;
}

CertificateMass certificate_mass(const AnnulusCertificate& cert, const DomainSpec& spec) {
  const double L = cert.log_ratio;
  const Annulus& a = cert.annulus;
  const auto comps = components(spec);
  if (comps.size() != cert.weights.size())
    throw Error(Errc::PreconditionViolated, "certificate was built for a different domain");
  CertificateMass m;
  m.radial = kTwoPi / L;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto [lo, hi] = reach(a, comps[i], spec);
    if (lo < hi) {
      // ∫ ρ² over A' ∩ K_i in log-radius t: (1/L²) ∫ arc(e^t) dt.
      auto f = [&](double t) { return component_arc(comps[i], spec, a.center, std::exp(t)); };
      m.overlap += integrate_adaptive(f, std::log(lo), std::log(hi), 1e-6 * L * L) / (L * L);
    }
    const bool in_j = std::find(cert.forbidden.begin(), cert.forbidden.end(), static_cast<int>(i)) !=
                      cert.forbidden.end();
    if (in_j || cert.weights[i] == 0) continue;
    const double w2 = cert.weights[i] * cert.weights[i];
    if (cert.widths[i] <= std::log(2.0)) {
      m.narrow_sq += w2;
    } else {
      m.wide_sq += w2;
      ++m.wide_count;
    }
  }
  m.total = m.radial - m.overlap + m.narrow_sq + m.wide_sq;
  m.bound = cert.mass_bound;
  m.within_bound = m.total <= m.bound * (1 + 1e-12);
  return m;
}

double phi_constant() { return (kTwoPi + 32) / std::pow(std::log(14.0), 2.0 / 3.0) + 32; }

double phi(double t) {
  if (!(t > 1)) throw Error(Errc::DomainError, "phi needs t > 1");
  return std::pow(std::log(t), -1.0 / 27.0) * phi_constant();
}

DiscreteCertificate discretize_certificate(const AnnulusCertificate& cert, const DomainSpec& spec, int n_radial,
                                           int n_angular) {
  const Annulus& a = cert.annulus;
  DiscreteCertificate dc{rasterize_log_polar(spec, a.center, a.r, a.R, n_radial, n_angular), {}, {}, 0};
  const QuotientGrid& g = dc.grid;
  const double L = cert.log_ratio;
  dc.family.sources = {Circle{a.center, a.r}};
  dc.family.sinks = {Circle{a.center, a.R}};
  dc.family.forbidden = cert.forbidden;
  dc.family.clip_forbidden = true;
  dc.density = MassDistribution::zeros(g);
  dc.density.rho_cells.setConstant(1.0 / L);
  for (int k = 0; k < g.n_contracted; ++k) {
    if (!g.present[k]) continue;
    if (std::find(cert.forbidden.begin(), cert.forbidden.end(), k) != cert.forbidden.end()) continue;
    dc.density.rho_contracted[k] = cert.weights[k] + g.chart.hx / L;
  }
  dc.mass = dc.density.mass(g);
  return dc;
}

InflatedDensity inflate_density(const QuotientGrid& grid, const MassDistribution& rho,
                                const std::vector<QuasiroundBall>& balls, double lambda, double tau) {
  if (!(lambda >= 1) || !(tau > 0 && tau <= 1))
    throw Error(Errc::PreconditionViolated, "need lambda >= 1 and tau in (0, 1]");
  if (grid.chart.kind != ChartKind::cartesian)
    throw Error(Errc::PreconditionViolated, "inflate_density works on Cartesian grids");
  const std::size_t nc = grid.spec.continua.size();
  if (balls.size() != nc) throw Error(Errc::PreconditionViolated, "one inner ball per continuum is required");

  InflatedDensity out;
  out.c = (1 + 12 * lambda + 4 * lambda * lambda) / tau;
  out.mass_threshold = 1 / (4 * out.c * out.c);
  out.source_mass = rho.mass(grid);
  out.in_regime = out.source_mass <= out.mass_threshold;

  DomainSpec plain_spec = grid.spec;
  plain_spec.continua.clear();
  plain_spec.outer = false;
  out.plain = rasterize(plain_spec, grid.chart.hx);
  const QuotientGrid& p = out.plain;
  out.g = MassDistribution::zeros(p);
  for (int f = 0; f < p.n_free(); ++f) {
    const int c = p.cell_of_free[f];
    const int i = c % p.chart.nx;
    const int j = c / p.chart.nx;
    double v = 0;
    const int gf = grid.free_of_cell[grid.cell(i, j)];
    if (gf >= 0) v += rho.rho_cells[gf];
    const Point z = p.chart.center(i, j);
    for (std::size_t k = 0; k < nc; ++k) {
      const double rk = balls[k].r;
      if ((z - balls[k].center).norm() < 2 * lambda * rk) v += rho.rho_contracted[k] / (lambda * rk);
    }
    out.g.rho_cells[f] = 2 * v;
  }
  return out;
}

double ball_sum_energy(const std::vector<Disk>& balls, const std::vector<double>& a, double s) {
  if (balls.size() != a.size()) throw Error(Errc::PreconditionViolated, "one coefficient per ball");
  double total = 0;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const double ri = s * balls[i].radius;
    total += a[i] * a[i] * kPi * ri * ri;
    for (std::size_t j = i + 1; j < balls.size(); ++j)
      total += 2 * a[i] * a[j] *
               disk_intersection_area(balls[i].center, ri, balls[j].center, s * balls[j].radius);
  }
  return total;
}

double bojarski_ratio(const std::vector<Disk>& balls, const std::vector<double>& a, double lambda) {
  const double base = ball_sum_energy(balls, a, 1.0);
  if (!(base > 0)) throw Error(Errc::PreconditionViolated, "zero base energy");
  return ball_sum_energy(balls, a, lambda) / base;
}

}  // namespace transmod
