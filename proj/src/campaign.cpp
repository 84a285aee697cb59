#include <transmod/campaign.hpp>

#include <transmod/densities.hpp>
#include <transmod/gallery.hpp>
#include <transmod/io.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

namespace transmod {

namespace {

constexpr double kPi = std::numbers::pi;

using Rows = std::vector<CheckRow>;

std::string tag(const std::string& base, int n) { return base + ".n" + (n < 10 ? "0" : "") + std::to_string(n); }

std::string idx(const std::string& base, int k) { return base + (k < 10 ? "0" : "") + std::to_string(k); }

double gap_of(const ModulusResult& r) { return r.upper_bound - r.lower_bound; }

CheckRow converged_row(int criterion, const std::string& id, const ModulusResult& r) {
  return make_row(criterion, id + ".converged", "solver status", "approx", 1.0,
                  r.status == SolveStatus::converged ? 1.0 : 0.0, 0.0);
}

CurveFamilySpec crossing(double y0 = 0, double y1 = 1) {
  CurveFamilySpec f;
  f.sources = {SegmentSet{Point(0, y0), Point(0, y1)}};
  f.sinks = {SegmentSet{Point(1, y0), Point(1, y1)}};
  return f;
}

// Narrowest gap of a gallery case in physical units.
double feature_size(const ScenarioCase& c) {
  if (c.name == "kissing_disks") return 1.0 / (c.n + 1);
  return 1.0 / c.n;
}

// Hand-built domains in the unit box; every continuum stays right of x = 0.3.
std::vector<DomainSpec> axiom_domains() {
  std::vector<DomainSpec> out(4);
  out[0].label = "empty";
  out[1].label = "one_disk";
  out[1].continua = {Disk{Point(0.6, 0.5), 0.2}};
  out[2].label = "two_disks";
  out[2].continua = {Disk{Point(0.5, 0.3), 0.15}, Disk{Point(0.7, 0.72), 0.15}};
  out[3].label = "rectangle";
  out[3].continua = {AxisRect{Point(0.45, 0.2), 0.3, 0.5}};
  return out;
}

struct Ladder {
  std::string name;
  std::vector<int> ns;
  std::vector<ModulusResult> results;
  std::vector<ScenarioCase> cases;
};

}  // namespace

CheckRow make_row(int criterion, std::string id, std::string citation, std::string relation, double expected,
                  double observed, double slack) {
  CheckRow r{criterion, std::move(id), std::move(citation), std::move(relation), expected, observed, slack, false};
  if (r.relation == "le")
    r.pass = observed <= expected + slack;
  else if (r.relation == "ge")
    r.pass = observed >= expected - slack;
  else if (r.relation == "approx")
    r.pass = std::abs(observed - expected) <= slack;
  else
    throw Error(Errc::PreconditionViolated, "unknown relation '" + r.relation + "'");
  return r;
}

int campaign_threads() {
  if (const char* s = std::getenv("TRANSMOD_THREADS")) {
    const int t = std::atoi(s);
    if (t >= 1) return t;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(Errc::PreconditionViolated, "slope needs two or more points");
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    a(i, 0) = std::log(x[i]);
    a(i, 1) = 1;
    b[i] = std::log(y[i]);
  }
  return a.colPivHouseholderQr().solve(b)[0];
}

std::string campaign_csv(const std::vector<CheckRow>& rows) {
  std::string out = "check_id,citation,relation,expected,observed,slack,result\n";
  for (const auto& r : rows)
    out += csv_field(r.id) + "," + csv_field(r.citation) + "," + r.relation + "," + fmt_double(r.expected) + "," +
           fmt_double(r.observed) + "," + fmt_double(r.slack) + "," + (r.pass ? "pass" : "fail") + "\n";
  return out;
}

std::vector<CheckRow> run_campaign(const CampaignConfig& cfg, std::ostream* log) {
  std::mutex log_mu;
  auto note = [&](const std::string& s) {
    if (!log) return;
    std::lock_guard<std::mutex> lock(log_mu);
    *log << s << std::endl;
  };
  const SolverConfig& sc = cfg.solver;
  std::vector<std::function<Rows()>> tasks;

  // 1. Classical oracles.
  tasks.push_back([&] {
    const QuotientGrid g = rasterize(DomainSpec{}, cfg.square_h);
    const auto r = modulus(g, crossing(), sc);
    note("square: " + fmt_double(r.value));
    return Rows{make_row(1, "c1.square", "unit square crossing, plane reciprocal with constant 1", "approx", 1.0,
                         r.value, cfg.oracle_tol),
                converged_row(1, "c1.square", r)};
  });
  const double two_pi = 2 * kPi;
  tasks.push_back([&, two_pi] {
    const double e = std::exp(1.0);
    DomainSpec d;
    d.ambient = Box{Point(-e - 0.05, -e - 0.05), Point(e + 0.05, e + 0.05)};
    const QuotientGrid g = rasterize(d, cfg.annulus_h);
    CurveFamilySpec f;
    f.sources = {Circle{Point(0, 0), 1.0}};
    f.sinks = {Circle{Point(0, 0), e}};
    SolverConfig s = sc;
    s.max_paths = cfg.annulus_max_paths;
    const auto r = modulus(g, f, s);
    note("annulus cartesian: " + fmt_double(r.value));
    return Rows{make_row(1, "c1.annulus_cartesian", "annulus A[0,1,e], radial density mass 2pi/log(R/r)", "approx",
                         two_pi, r.value, cfg.oracle_tol * two_pi),
                converged_row(1, "c1.annulus_cartesian", r)};
  });
  tasks.push_back([&, two_pi] {
    const double e = std::exp(1.0);
    const int nr = static_cast<int>(std::lround(1 / cfg.annulus_h));
    const QuotientGrid g =
        rasterize_log_polar(DomainSpec{}, Point(0, 0), 1.0, e, nr, static_cast<int>(std::lround(nr * two_pi)));
    CurveFamilySpec f;
    f.sources = {Circle{Point(0, 0), 1.0}};
    f.sinks = {Circle{Point(0, 0), e}};
    const auto r = modulus(g, f, sc);
    note("annulus log-polar: " + fmt_double(r.value));
    return Rows{make_row(1, "c1.annulus_log_polar", "annulus A[0,1,e], radial density mass 2pi/log(R/r)", "approx",
                         two_pi, r.value, cfg.oracle_tol * two_pi),
                converged_row(1, "c1.annulus_log_polar", r)};
  });

  // 2-4. Decay ladders; slopes are fitted after all runs finish.
  std::vector<Ladder> ladders = {{"polar_rectangle", cfg.polar_ns, {}, {}},
                                 {"twin_squares", cfg.twin_ns, {}, {}},
                                 {"kissing_disks", cfg.kissing_ns, {}, {}}};
  for (auto& lad : ladders) {
    std::vector<int> kept;
    for (int n : lad.ns) {
      ScenarioCase c = make_case(lad.name, n);
      if (feature_size(c) >= cfg.min_feature_cells * cfg.gallery_h) {
        kept.push_back(n);
        lad.cases.push_back(std::move(c));
      } else {
        note(lad.name + " n=" + std::to_string(n) + " skipped: gap below " + fmt_double(cfg.min_feature_cells) +
             " cells");
      }
    }
    lad.ns = kept;
    lad.results.resize(kept.size());
  }
  for (auto& lad : ladders)
    for (std::size_t i = 0; i < lad.ns.size(); ++i)
      tasks.push_back([&, i, lad_ptr = &lad] {
        const ScenarioCase& c = lad_ptr->cases[i];
        lad_ptr->results[i] = modulus(rasterize_case(c, cfg.gallery_h), c.family, sc);
        note(c.name + " n=" + std::to_string(c.n) + ": " + fmt_double(lad_ptr->results[i].value));
        return Rows{};
      });
  tasks.push_back([&] {
    // Window doubling for the kissing disks at twice the ladder spacing.
    ScenarioCase c = kissing_disks_domain(2);
    const double h = 2 * cfg.gallery_h;
    const auto base = modulus(rasterize_case(c, h), c.family, sc);
    const Point mid = (c.domain.ambient.min + c.domain.ambient.max) / 2;
    c.domain.ambient = Box{mid + 2 * (c.domain.ambient.min - mid), mid + 2 * (c.domain.ambient.max - mid)};
    const auto wide = modulus(rasterize_case(c, h), c.family, sc);
    note("kissing window doubling: " + fmt_double(base.value) + " -> " + fmt_double(wide.value));
    return Rows{make_row(4, "c4.kissing_disks.window_doubling", "window truncation stays inside the tolerance band",
                         "approx", base.value, wide.value, cfg.oracle_tol * base.value)};
  });

  // 5. Transboundary modulus against classical modulus on random circle domains.
  const double tau = 0.25;
  const double lambda = 1.0;
  const double c_const = (1 + 12 * lambda + 4 * lambda * lambda) / tau;
  const double c1 = 1 / (8 * c_const * c_const);
  std::vector<std::tuple<double, double, double, bool, double>> sandwich(cfg.random_domains);
  for (int k = 0; k < cfg.random_domains; ++k)
    tasks.push_back([&, k] {
      const auto rd = circle_domain_random(cfg.seed * 1000003ULL + k, cfg.random_disks, cfg.random_separation);
      const QuotientGrid gk = rasterize(rd.domain, cfg.random_h);
      DomainSpec plain = rd.domain;
      plain.continua.clear();
      const QuotientGrid g0 = rasterize(plain, cfg.random_h);
      const auto fam = crossing();
      const auto rk = modulus(gk, fam, sc);
      const auto r0 = modulus(g0, fam, sc);
      std::vector<QuasiroundBall> balls;
      for (const auto& s : rd.domain.continua) {
        const Disk& d = std::get<Disk>(s);
        balls.push_back({d.center, d.radius});
      }
      const auto inf = inflate_density(gk, rk.density, balls, lambda, tau);
      double inflated_short = 0;
      if (inf.in_regime) inflated_short = verify_admissible(inf.plain, inf.g, fam, 0, 1, sc.path_tol).min_length;
      sandwich[k] = {rk.value, r0.value, gap_of(rk), inf.in_regime, inflated_short};
      note("circle domain " + std::to_string(k) + ": mod_K " + fmt_double(rk.value) + " mod " + fmt_double(r0.value));
      Rows rows{converged_row(5, idx("c5.domain", k), rk), converged_row(5, idx("c5.domain", k) + ".classical", r0)};
      if (inf.in_regime)
        rows.push_back(make_row(5, idx("c5.domain", k) + ".inflated_admissible", "inflated density is admissible",
                                "ge", 1.0, inflated_short, sc.path_tol));
      return rows;
    });

  // 6. Packing counts.
  tasks.push_back([&] {
    std::mt19937_64 rng(cfg.seed * 7919 + 53);
    const double limit = (lambda * lambda + 6 * lambda + 1) / tau;
    int worst = 0;
    long over = 0;
    for (int t = 0; t < cfg.packings; ++t) {
      const Point p0(unit_draw(rng), unit_draw(rng));
      const double th = 2 * kPi * unit_draw(rng);
      const double len = 0.05 + 0.25 * unit_draw(rng);
      const Point p1 = p0 + len * Point(std::cos(th), std::sin(th));
      const PlanarSet e = SegmentSet{p0, p1};
      std::vector<PlanarSet> disks;
      std::vector<Disk> raw;
      for (int a = 0; a < 200; ++a) {
        const Point q = p0 + unit_draw(rng) * (p1 - p0);
        const double rad = len * (0.5 + unit_draw(rng));
        const double phi = 2 * kPi * unit_draw(rng);
        const Point ctr = q + rad * unit_draw(rng) * Point(std::cos(phi), std::sin(phi));
        bool ok = true;
        for (const Disk& o : raw)
          if ((o.center - ctr).norm() <= o.radius + rad + 1e-9) {
            ok = false;
            break;
          }
        if (!ok) continue;
        raw.push_back({ctr, rad});
        disks.push_back(raw.back());
      }
      const int count = count_fat_meeting(e, disks, tau, lambda);
      worst = std::max(worst, count);
      if (count > limit) ++over;
    }
    note("fat packings: worst count " + std::to_string(worst));
    return Rows{make_row(6, "c6.fat_sets.worst_count", "fat sets meeting a continuum: at most (l^2+6l+1)/tau", "le",
                         limit, worst, 0.0),
                make_row(6, "c6.fat_sets.counterexamples", "fat sets meeting a continuum", "approx", 0, over, 0.0)};
  });
  tasks.push_back([&] {
    std::mt19937_64 rng(cfg.seed * 104729 + 17);
    int worst = 0;
    long over = 0;
    for (int t = 0; t < cfg.packings; ++t) {
      const Annulus a{Point(0, 0), 1.0, 14.0 * (1 + 2 * unit_draw(rng))};
      std::vector<PlanarSet> disks;
      std::vector<Disk> raw;
      for (int k = 0; k < 100; ++k) {
        const double d = 1.2 * a.R * unit_draw(rng);
        const double phi = 2 * kPi * unit_draw(rng);
        double rad = 0;
        if (unit_draw(rng) < 0.5)
          rad = std::max(d - a.r, a.R - d) * (1 + 0.2 * unit_draw(rng));  // large enough to cross
        else
          rad = (0.05 + 0.5 * unit_draw(rng)) * std::max(d, a.r);
        const Point ctr = d * Point(std::cos(phi), std::sin(phi));
        bool ok = true;
        for (const Disk& o : raw)
          if ((o.center - ctr).norm() <= o.radius + rad + 1e-9) {
            ok = false;
            break;
          }
        if (!ok) continue;
        raw.push_back({ctr, rad});
        disks.push_back(raw.back());
      }
      const int count = count_crossing_disks(a, disks);
      worst = std::max(worst, count);
      if (count > 2) ++over;
    }
    // Three disks cross A[0,1,3], so the count is not vacuous.
    std::vector<PlanarSet> witness;
    for (int k = 0; k < 3; ++k)
      witness.push_back(Disk{2.0 * Point(std::cos(2 * kPi * k / 3), std::sin(2 * kPi * k / 3)), 1.05});
    const int three = count_crossing_disks(Annulus{Point(0, 0), 1.0, 3.0}, witness);
    note("crossing disks: worst count " + std::to_string(worst) + ", witness " + std::to_string(three));
    return Rows{make_row(6, "c6.crossing_disks.worst_count", "disks crossing an annulus with R/r >= 14: at most two",
                         "le", 2, worst, 0.0),
                make_row(6, "c6.crossing_disks.counterexamples", "disks crossing an annulus with R/r >= 14", "approx", 0,
                         over, 0.0),
                make_row(6, "c6.crossing_disks.witness_ratio3", "three crossing disks exist at R/r = 3", "ge", 3, three,
                         0.0)};
  });

  // 7. Modulus axioms.
  const auto doms = axiom_domains();
  for (std::size_t di = 0; di < doms.size(); ++di)
    tasks.push_back([&, di] {
      const DomainSpec& d = doms[di];
      const QuotientGrid g = rasterize(d, cfg.axiom_h);
      const std::string base = "c7." + d.label;
      auto run = [&](const std::vector<CurveFamilySpec>& fams) { return modulus(g, fams, sc); };
      Rows rows;
      const auto full = run({crossing()});
      rows.push_back(converged_row(7, base + ".full", full));

      CurveFamilySpec half = crossing();
      half.sources = {SegmentSet{Point(0, 0), Point(0, 0.5)}};
      const auto r_half = run({half});
      rows.push_back(make_row(7, base + ".monotone_source", "monotonicity under shrinking E", "le", full.value,
                              r_half.value, 2 * (gap_of(full) + gap_of(r_half))));

      if (d.continua.empty()) {
        CurveFamilySpec f = crossing();
        f.sinks = {SegmentSet{Point(1, 0.25), Point(1, 0.75)}};
        const auto r = run({f});
        rows.push_back(make_row(7, base + ".monotone_sink", "monotonicity under shrinking F", "le", full.value,
                                r.value, 2 * (gap_of(full) + gap_of(r))));
      } else {
        CurveFamilySpec f = crossing();
        f.forbidden = {0};
        const auto r = run({f});
        rows.push_back(make_row(7, base + ".monotone_forbidden", "forbidding a continuum never increases modulus",
                                "le", full.value, r.value, 2 * (gap_of(full) + gap_of(r))));
      }

      CurveFamilySpec over = crossing();
      over.sinks = {SegmentSet{Point(0.3, 0), Point(0.3, 1)}};
      const auto r_over = run({over});
      rows.push_back(make_row(7, base + ".overflowing", "overflowing family has larger modulus", "ge", full.value,
                              r_over.value, 2 * (gap_of(full) + gap_of(r_over))));

      CurveFamilySpec lo = crossing();
      lo.sources = {SegmentSet{Point(0, 0), Point(0, 0.5)}};
      CurveFamilySpec hi = crossing();
      hi.sources = {SegmentSet{Point(0, 0.5), Point(0, 1)}};
      const auto r_lo = run({lo});
      const auto r_hi = run({hi});
      const auto r_union = run({lo, hi});
      rows.push_back(make_row(7, base + ".subadditive", "subadditivity over a union of families", "le",
                              r_lo.value + r_hi.value, r_union.value,
                              2 * (gap_of(r_lo) + gap_of(r_hi) + gap_of(r_union))));

      CurveFamilySpec bottom = crossing(0, 0.45);
      bottom.restriction = Box{Point(0, 0), Point(1, 0.45)};
      CurveFamilySpec top = crossing(0.55, 1);
      top.restriction = Box{Point(0, 0.55), Point(1, 1)};
      // A continuum meeting both boxes is one shared vertex, so the families would not be disjoint.
      for (std::size_t i = 0; i < d.continua.size(); ++i) {
        const Box b = bbox(d.continua[i]);
        if (b.min.y() <= 0.45 && b.max.y() >= 0.55) {
          bottom.forbidden.push_back(static_cast<int>(i));
          top.forbidden.push_back(static_cast<int>(i));
        }
      }
      const auto r_b = run({bottom});
      const auto r_t = run({top});
      const auto r_bt = run({bottom, top});
      rows.push_back(make_row(7, base + ".disjoint_additive", "additivity for families in disjoint boxes", "approx",
                              r_b.value + r_t.value, r_bt.value, 2 * (gap_of(r_b) + gap_of(r_t) + gap_of(r_bt))));
      note("axioms on " + d.label + " done");
      return rows;
    });

  // 8. Subannulus certificates on circle domains.
  for (int k = 0; k < cfg.certificate_fixtures; ++k)
    tasks.push_back([&, k] {
      const double eps = 1e-3;
      const double big = 10;
      const PlanarSet e = SegmentSet{Point(-eps / 2, 0), Point(eps / 2, 0)};
      const PlanarSet f = Circle{Point(0, 0), big};
      DomainSpec d;
      d.label = idx("certificate", k);
      d.ambient = Box{Point(-big - 0.5, -big - 0.5), Point(big + 0.5, big + 0.5)};
      std::vector<Disk> disks;
      if (k == 0) disks.push_back({Point(0.3, 0), 0.25});  // wide enough to force a narrowing
      std::mt19937_64 rng(cfg.seed * 31337 + k);
      const int want = 3 + k % 4;
      for (int a = 0; a < 5000 && static_cast<int>(disks.size()) < want; ++a) {
        const double rc = 0.01 * std::exp(std::log(800.0) * unit_draw(rng));
        const double rad = rc * (0.1 + 0.5 * unit_draw(rng));
        const double phi = 2 * kPi * unit_draw(rng);
        const Point ctr = rc * Point(std::cos(phi), std::sin(phi));
        if (rc - rad < 2 * eps || rc + rad > big - 0.1) continue;
        bool ok = true;
        for (const Disk& o : disks)
          if ((o.center - ctr).norm() <= o.radius + rad + 1e-6) {
            ok = false;
            break;
          }
        if (ok) disks.push_back({ctr, rad});
      }
      for (const Disk& dk : disks) d.continua.push_back(dk);
      const std::string base = idx("c8.fixture", k);
      const auto cert = find_wide_subannulus(d, e, f);
      if (!cert)
        return Rows{make_row(8, base + ".found", "subannulus search succeeds", "approx", 1, 0, 0)};
      const CertificateMass m = certificate_mass(*cert, d);
      const int nr = cfg.certificate_radial;
      const int na = std::max(8, static_cast<int>(std::lround(2 * kPi * nr / cert->log_ratio)));
      const DiscreteCertificate dc = discretize_certificate(*cert, d, nr, na);
      const auto r = modulus(dc.grid, dc.family, sc);
      note("certificate " + std::to_string(k) + ": solver " + fmt_double(r.value) + " mass " + fmt_double(m.total) +
           " bound " + fmt_double(m.bound));
      return Rows{make_row(8, base + ".solver_vs_certificate", "solver value below certificate mass", "le", m.total,
                           r.value, cfg.certificate_slack * m.total),
                  make_row(8, base + ".mass_bound", "certificate mass at most 2pi/L + 32/L + 32/L^(1/3)", "le",
                           m.bound, m.total, 0.0),
                  converged_row(8, base, r)};
    });

  // 9. Point components.
  for (int k = 0; k < cfg.point_fixtures; ++k)
    tasks.push_back([&, k] {
      DomainSpec d = doms[k % doms.size()];
      CurveFamilySpec fam = crossing();
      if (k >= static_cast<int>(doms.size())) fam.sinks = {SegmentSet{Point(1, 0.2), Point(1, 0.6)}};
      const auto r0 = modulus(rasterize(d, cfg.axiom_h), fam, sc);
      std::mt19937_64 rng(cfg.seed * 4099 + k);
      while (static_cast<int>(d.points.size()) < cfg.points_added) {
        const Point p(0.02 + 0.96 * unit_draw(rng), 0.02 + 0.96 * unit_draw(rng));
        bool clear = true;
        for (const auto& s : d.continua)
          if (dist(s, PointSet{p}) <= 1e-6) clear = false;
        if (clear) d.points.push_back(p);
      }
      validate_domain(d);
      const auto r1 = modulus(rasterize(d, cfg.axiom_h), fam, sc);
      return Rows{make_row(9, idx("c9.fixture", k), "isolated point components do not change modulus", "approx",
                           r0.value, r1.value, gap_of(r0))};
    });

  // 10. Repeat solve.
  tasks.push_back([&] {
    const QuotientGrid g = rasterize(doms[2], cfg.axiom_h);
    const auto a = modulus(g, crossing(), sc);
    const auto b = modulus(g, crossing(), sc);
    const bool same = std::memcmp(&a.value, &b.value, sizeof(double)) == 0 &&
                      a.density.rho_cells == b.density.rho_cells &&
                      a.density.rho_contracted == b.density.rho_contracted;
    return Rows{make_row(10, "c10.repeat_solve", "identical solves give identical bits", "approx", 0, same ? 0 : 1,
                         0.0)};
  });

  // Run.
  std::vector<Rows> out(tasks.size());
  std::vector<std::exception_ptr> failures(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next++) < tasks.size();) {
      try {
        out[t] = tasks[t]();
      } catch (...) {
        failures[t] = std::current_exception();
      }
    }
  };
  const int nt = std::max(1, std::min<int>(cfg.threads, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < nt; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  Rows rows;
  for (auto& r : out) rows.insert(rows.end(), r.begin(), r.end());

  // Ladder rows.
  const std::map<std::string, int> crit = {{"polar_rectangle", 2}, {"twin_squares", 3}, {"kissing_disks", 4}};
  for (const auto& lad : ladders) {
    const int cn = crit.at(lad.name);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < lad.ns.size(); ++i) {
      const ScenarioCase& c = lad.cases[i];
      const ModulusResult& r = lad.results[i];
      const std::string base = tag("c" + std::to_string(cn) + "." + lad.name, c.n);
      double bound = c.bound.value;
      std::string cite = c.bound.source;
      if (lad.name == "twin_squares") {
        bound = cfg.twin_constant / c.n;
        const double rect = c.meta_value("rect_bottom") + c.meta_value("rect_middle") +
                            c.meta_value("rect_top");
        rows.push_back(make_row(cn, base + ".rectangles", "escape rectangle moduli add up to the bound", "approx",
                                bound, rect, 1e-12 * bound));
        rows.push_back(make_row(cn, base + ".delta", "relative distance of E_n and F_n is 1", "approx", 1.0, c.delta,
                                0.0));
      } else if (lad.name == "polar_rectangle") {
        rows.push_back(make_row(cn, base + ".delta", "relative distance of E_n and F_n is 2/3", "approx", 2.0 / 3,
                                c.delta, 1e-12));
      } else {
        bound = 160 / kPi * std::sqrt(1.0 / (2 * c.n - 1));
        cite = "good-rectangle bound (160/pi) sqrt(1/(2n-1))";
        rows.push_back(make_row(cn, base + ".delta", "relative distance of E_n and F_n at most 4 sqrt 5", "le",
                                4 * std::sqrt(5.0), c.delta, 0.0));
        rows.push_back(make_row(cn, base + ".width", "rectangle width at most 2 diam(C_n) D(C_n,D_n)", "le",
                                c.meta_value("width_bound"), c.meta_value("width"), 1e-12));
      }
      rows.push_back(make_row(cn, base + ".bound", cite, "le", bound, r.value, gap_of(r)));
      rows.push_back(converged_row(cn, base, r));
      xs.push_back(c.n);
      ys.push_back(r.value);
    }
    if (xs.size() >= 2) {
      const double want = lad.name == "kissing_disks" ? -0.5 : -1.0;
      rows.push_back(make_row(cn, "c" + std::to_string(cn) + "." + lad.name + ".slope", "log-log decay slope",
                              "approx", want, loglog_slope(xs, ys), cfg.slope_tol));
    }
  }

  // Sandwich rows need the measured c2 over all domains.
  if (!sandwich.empty()) {
    double c2 = std::numeric_limits<double>::infinity();
    int regime = 0;
    for (const auto& [mk, m0, g, in, s] : sandwich) {
      c2 = std::min(c2, mk / m0);
      regime += in;
    }
    for (std::size_t k = 0; k < sandwich.size(); ++k) {
      const auto& [mk, m0, g, in, s] = sandwich[k];
      rows.push_back(make_row(5, idx("c5.domain", static_cast<int>(k)) + ".sandwich",
                              "mod_K >= min(c1, c2 mod) with c1 = 1/(8 c^2), c = 68", "ge", std::min(c1, c2 * m0), mk,
                              g));
    }
    rows.push_back(make_row(5, "c5.c2_measured", "measured c2 (infimum of mod_K / mod)", "ge", 0.0, c2, 0.0));
    rows.push_back(make_row(5, "c5.regime_count", "domains with mass below 1/(4c^2)", "ge", 0.0, regime, 0.0));
  }

  std::sort(rows.begin(), rows.end(),
            [](const CheckRow& a, const CheckRow& b) { return std::tie(a.criterion, a.id) < std::tie(b.criterion, b.id); });
  return rows;
}

}  // namespace transmod
