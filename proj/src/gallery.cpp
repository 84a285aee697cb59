#include <transmod/gallery.hpp>

#include <cmath>
#include <limits>
#include <random>

namespace transmod {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_n(int n, int lo, const char* what) {
  if (n < lo) throw Error(Errc::PreconditionViolated, std::string(what) + " needs n >= " + std::to_string(lo));
}

}  // namespace

double ScenarioCase::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta)
    if (k == key) return v;
  throw Error(Errc::PreconditionViolated, "case " + name + " has no metadata '" + key + "'");
}

ScenarioCase bonk_squares(int n) {
  require_n(n, 1, "bonk_squares");
  ScenarioCase c;
  c.name = "bonk_squares";
  c.n = n;
  c.domain.label = "bonk_squares_" + std::to_string(n);
  for (int k = 1; k <= n; ++k) {
    const double eps = 1.0 / (k + 2);
    c.domain.continua.push_back(AxisRect{Point(k, 0), 1 - eps, 1 - eps});
  }
  // The window wall at x = n+1 stands in for the next square.
  const double eps = 1.0 / (n + 2);
  const double top = 1 - eps;
  c.domain.ambient = Box{Point(n - 1.5, -1), Point(n + 1, 2)};
  const double x = n + 1 - eps / 2;
  c.family.sources = {SegmentSet{Point(x, top / 8), Point(x, 3 * top / 8)}};
  c.family.sinks = {SegmentSet{Point(x, 5 * top / 8), Point(x, 7 * top / 8)}};
  c.family.forbidden = {n - 1};
  c.delta = relative_distance(c.family.sources[0], c.family.sinks[0]);
  c.bound = {PaperBound::Kind::upper, 20 * eps / top, "three escape rectangles of width eps_n"};
  c.meta = {{"eps", eps}, {"gap", eps}};
  return c;
}

ScenarioCase polar_rectangle_domain(int n) {
  require_n(n, 1, "polar_rectangle_domain");
  ScenarioCase c;
  c.name = "polar_rectangle";
  c.n = n;
  const Point x0(6.0 * n, 0);
  c.domain.label = "polar_rectangle_" + std::to_string(n);
  c.domain.continua = {PolarRect{x0, 1, 2, 0, 2 * kPi - 1.0 / n}};
  c.domain.ambient = Box{x0 - Point(2.1, 2.1), x0 + Point(2.1, 2.1)};
  c.family.sources = {Circle{x0, 0.9}};
  c.family.sinks = {Circle{x0, 2.1}};
  c.family.forbidden = {0};
  c.chart = {ChartKind::log_polar, x0, 0.9, 2.1};
  c.delta = relative_distance(c.family.sources[0], c.family.sinks[0]);
  c.bound = {PaperBound::Kind::upper, (1.0 / n) / std::log(2.0), "slit polar rectangle modulus (1/n)/log 2"};
  c.meta = {{"slit_angle", 1.0 / n}};
  return c;
}

ScenarioCase twin_squares_domain(int n) {
  require_n(n, 2, "twin_squares_domain");
  ScenarioCase c;
  c.name = "twin_squares";
  c.n = n;
  const double x0 = 3.0 * n;
  const double g = 1.0 / n;
  c.domain.label = "twin_squares_" + std::to_string(n);
  c.domain.continua = {AxisRect{Point(x0, 0), 1, 1}, AxisRect{Point(x0 + 1 + g, 0), 1, 1}};
  c.domain.ambient = Box{Point(x0 - 1, -1), Point(x0 + 3, 2)};
  const double x = x0 + 1 + g / 2;
  c.family.sources = {SegmentSet{Point(x, 1.0 / 8), Point(x, 3.0 / 8)}};
  c.family.sinks = {SegmentSet{Point(x, 5.0 / 8), Point(x, 7.0 / 8)}};
  c.family.forbidden = {0, 1};
  c.delta = relative_distance(c.family.sources[0], c.family.sinks[0]);
  c.bound = {PaperBound::Kind::upper, 20.0 / n, "three escape rectangles, 20/n"};
  c.meta = {{"gap", g}, {"rect_bottom", g / (1.0 / 8)}, {"rect_middle", g / (1.0 / 4)}, {"rect_top", g / (1.0 / 8)}};
  return c;
}

ScenarioCase kissing_disks_domain(int n) {
  require_n(n, 1, "kissing_disks_domain");
  ScenarioCase c;
  c.name = "kissing_disks";
  c.n = n;
  const double d = 1.0;  // both diameters
  const double rel = 1.0 / (n + 1);
  const double gap = rel * d;
  const Point cc(-(d + gap) / 2, 0);
  const Point cd((d + gap) / 2, 0);
  c.domain.label = "kissing_disks_" + std::to_string(n);
  c.domain.continua = {Disk{cc, d / 2}, Disk{cd, d / 2}};
  c.domain.ambient = Box{Point(cc.x() - d / 2 - d, -1.5 * d), Point(cd.x() + d / 2 + d, 1.5 * d)};

  const double alpha = d * std::sqrt(1 - (1 - rel) * (1 - rel));
  // Left and right sides of the a-good rectangle.
  auto sides = [&](double a) {
    const double s = std::sqrt(d * d / 4 - a * a / 4);
    return std::pair<double, double>(cc.x() + s, cd.x() - s);
  };
  const auto [l3, r3] = sides(alpha);
  const double w = r3 - l3;
  // E joins the top edges of the alpha/4- and 3alpha/4-good rectangles, F the bottom edges.
  c.family.sources = {SegmentSet{Point(0, alpha / 8), Point(0, 3 * alpha / 8)}};
  c.family.sinks = {SegmentSet{Point(0, -3 * alpha / 8), Point(0, -alpha / 8)}};
  c.family.forbidden = {0, 1};
  c.delta = relative_distance(c.family.sources[0], c.family.sinks[0]);
  c.bound = {PaperBound::Kind::upper, 160 / kPi * std::sqrt(rel / (2 - rel)),
             "good-rectangle bound (160/pi) sqrt(D/(2-D))"};
  c.meta = {{"rel_dist_CD", rel},
            {"alpha", alpha},
            {"width", w},
            {"width_bound", 2 * d * rel},
            {"bound_n", 160 / kPi * std::sqrt(1.0 / (2.0 * n - 1))}};
  return c;
}

QuotientGrid rasterize_case(const ScenarioCase& c, double h) {
  if (!(h > 0)) throw Error(Errc::PreconditionViolated, "h must be positive");
  if (c.chart.kind == ChartKind::cartesian) return rasterize(c.domain, h);
  const double r0 = c.chart.r0;
  const int nx = std::max(1, static_cast<int>(std::lround(std::log(c.chart.r1 / r0) * r0 / h)));
  const int ny = std::max(4, static_cast<int>(std::lround(2 * kPi * r0 / h)));
  return rasterize_log_polar(c.domain, c.chart.pole, r0, c.chart.r1, nx, ny);
}

RandomCircleDomain circle_domain_random(std::uint64_t seed, int count, double c, double r_min, double r_max) {
  if (count < 1 || !(c > 0)) throw Error(Errc::PreconditionViolated, "need count >= 1 and c > 0");
  if (!(r_min > 0 && r_max >= r_min && r_max < 0.5)) throw Error(Errc::PreconditionViolated, "bad radius range");
  std::mt19937_64 rng(seed);
  RandomCircleDomain out;
  out.domain.label = "circles_s" + std::to_string(seed) + "_n" + std::to_string(count);
  std::vector<Disk> disks;
  long rejected = 0;
  const long max_rejects = 2000L * count;
  while (static_cast<int>(disks.size()) < count) {
    const double r = r_min + (r_max - r_min) * unit_draw(rng);
    const Point p(r + (1 - 2 * r) * unit_draw(rng), r + (1 - 2 * r) * unit_draw(rng));
    bool ok = true;
    for (const Disk& o : disks) {
      const double gap = (p - o.center).norm() - r - o.radius;
      if (gap <= 0 || gap / (2 * std::min(r, o.radius)) <= c) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      if (++rejected > max_rejects)
        throw Error(Errc::PackingFailed, "placed " + std::to_string(disks.size()) + " of " + std::to_string(count) +
                                             " disks");
      continue;
    }
    disks.push_back({p, r});
  }
  out.separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < disks.size(); ++i) {
    out.domain.continua.push_back(disks[i]);
    for (std::size_t j = 0; j < i; ++j)
      out.separation = std::min(out.separation, relative_distance(disks[i], disks[j]));
  }
  return out;
}

std::vector<std::string> gallery_names() { return {"bonk_squares", "polar_rectangle", "twin_squares", "kissing_disks"}; }

ScenarioCase make_case(const std::string& name, int n) {
  if (name == "bonk_squares") return bonk_squares(n);
  if (name == "polar_rectangle") return polar_rectangle_domain(n);
  if (name == "twin_squares") return twin_squares_domain(n);
  if (name == "kissing_disks") return kissing_disks_domain(n);
  throw Error(Errc::PreconditionViolated, "unknown gallery case '" + name + "'");
}

}  // namespace transmod
