#include <transmod/domain.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace transmod {

const StencilMove kStencil[16] = {
    {1, 0, 0, 0, 0, 0, false},    {-1, 0, 0, 0, 0, 0, false},  {0, 1, 0, 0, 0, 0, false},
    {0, -1, 0, 0, 0, 0, false},   {1, 1, 1, 0, 0, 1, true},    {1, -1, 1, 0, 0, -1, true},
    {-1, 1, -1, 0, 0, 1, true},   {-1, -1, -1, 0, 0, -1, true}, {1, 2, 0, 1, 1, 1, true},
    {1, -2, 0, -1, 1, -1, true},  {-1, 2, 0, 1, -1, 1, true},  {-1, -2, 0, -1, -1, -1, true},
    {2, 1, 1, 0, 1, 1, true},     {2, -1, 1, 0, 1, -1, true},  {-2, 1, -1, 0, -1, 1, true},
    {-2, -1, -1, 0, -1, -1, true},
};

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double radius_edge(const GridChart& c, int i) {
  if (i <= 0) return c.r0;
  if (i >= c.nx) return c.r1;
  return c.r0 * std::exp(i * c.hx);
}

// Neighbour cell index with wrap in j for periodic charts; -1 when off the grid.
int neighbour(const GridChart& c, int i, int j, int di, int dj) {
  const int ni = i + di;
  int nj = j + dj;
  if (ni < 0 || ni >= c.nx) return -1;
  if (c.periodic()) {
    nj = ((nj % c.ny) + c.ny) % c.ny;
  } else if (nj < 0 || nj >= c.ny) {
    return -1;
  }
  return nj * c.nx + ni;
}

struct IndexRange {
  int i0, i1, j0, j1;
};

IndexRange cells_near(const GridChart& c, const PlanarSet& s) {
  if (c.kind == ChartKind::cartesian) {
    const Box b = bbox(s);
    auto clampi = [](double v, int n) { return std::clamp(static_cast<int>(std::floor(v)), 0, n - 1); };
    return {clampi((b.min.x() - c.origin.x()) / c.hx - 1, c.nx), clampi((b.max.x() - c.origin.x()) / c.hx + 1, c.nx),
            clampi((b.min.y() - c.origin.y()) / c.hy - 1, c.ny), clampi((b.max.y() - c.origin.y()) / c.hy + 1, c.ny)};
  }
  const double lo = std::max(dmin(c.origin, s), c.r0 * 1e-300);
  const double hi = dmax(c.origin, s);
  const double u0 = std::log(c.r0);
  auto clampi = [&](double v) { return std::clamp(static_cast<int>(std::floor(v)), 0, c.nx - 1); };
  return {clampi((std::log(lo) - u0) / c.hx - 1), clampi((std::log(hi) - u0) / c.hx + 1), 0, c.ny - 1};
}

bool shape_meets(const GridChart& c, int i, int j, const PlanarSet& s) { return dist(c.cell_shape(i, j), s) <= 0; }

QuotientGrid build(const DomainSpec& spec, const GridChart& chart) {
  validate_domain(spec);
  QuotientGrid g;
  g.spec = spec;
  g.chart = chart;
  const int nx = chart.nx;
  const int ny = chart.ny;
  const int ncells = nx * ny;
  g.labels.assign(ncells, kFree);

  // Log-polar charts ignore the box unless it bounds an outer component.
  if (chart.kind == ChartKind::cartesian || spec.outer) {
    const Box& b = spec.ambient;
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const Point p = chart.center(i, j);
        if (p.x() < b.min.x() || p.y() < b.min.y() || p.x() > b.max.x() || p.y() > b.max.y())
          g.labels[g.cell(i, j)] = kOutside;
      }
  }

  const int nc = static_cast<int>(spec.continua.size());
  g.n_contracted = nc + (spec.outer ? 1 : 0);
  g.present.assign(g.n_contracted, 0);
  for (int k = 0; k < nc; ++k) {
    const PlanarSet& s = spec.continua[k];
    const IndexRange r = cells_near(chart, s);
    const bool solid = is_solid(s);
    bool any = false;
    for (int j = r.j0; j <= r.j1; ++j)
      for (int i = r.i0; i <= r.i1; ++i) {
        int& lab = g.labels[g.cell(i, j)];
        if (lab == kOutside) continue;
        const bool hit = solid ? contains(s, chart.center(i, j), 0.0) : shape_meets(chart, i, j, s);
        if (!hit) continue;
        if (lab >= 0 && lab != k)
          throw Error(Errc::SpacingTooCoarse, "continua " + std::to_string(lab) + " and " + std::to_string(k) +
                                                  " share a cell");
        lab = k;
        any = true;
      }
    if (!any && solid) {
      // Too small to hold a cell centre: claim the cell under a point of the set.
      const Point q = chart.to_chart(rep_point(s));
      const int i = static_cast<int>(std::floor(q.x() / chart.hx));
      const int j = static_cast<int>(std::floor(q.y() / chart.hy));
      if (i >= 0 && i < nx && j >= 0 && j < ny && g.labels[g.cell(i, j)] == kFree) {
        g.labels[g.cell(i, j)] = k;
        any = true;
      }
    }
    g.present[k] = any;
  }

  // Two continua must keep at least two free cells between them.
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int a = g.labels[g.cell(i, j)];
      if (a < 0) continue;
      for (int dj = -2; dj <= 2; ++dj)
        for (int di = -2; di <= 2; ++di) {
          const int nb = neighbour(chart, i, j, di, dj);
          if (nb < 0) continue;
          const int b = g.labels[nb];
          if (b >= 0 && b != a)
            throw Error(Errc::SpacingTooCoarse, "continua " + std::to_string(std::min(a, b)) + " and " +
                                                    std::to_string(std::max(a, b)) + " are within two cells");
        }
    }

  g.free_of_cell.assign(ncells, -1);
  for (int c = 0; c < ncells; ++c)
    if (g.labels[c] == kFree) {
      g.free_of_cell[c] = static_cast<int>(g.cell_of_free.size());
      g.cell_of_free.push_back(c);
    }
  const int nf = g.n_free();
  if (nf == 0) throw Error(Errc::DisconnectedComplement, "no free cells");

  auto is_free = [&](int c) { return c >= 0 && g.labels[c] == kFree; };
  g.moves.assign(nf, 0);
  for (int f = 0; f < nf; ++f) {
    const int c = g.cell_of_free[f];
    const int i = c % nx;
    const int j = c / nx;
    std::uint16_t mask = 0;
    for (int m = 0; m < 16; ++m) {
      const StencilMove& mv = kStencil[m];
      if (!is_free(neighbour(chart, i, j, mv.di, mv.dj))) continue;
      if (mv.crosses && (!is_free(neighbour(chart, i, j, mv.c1i, mv.c1j)) ||
                         !is_free(neighbour(chart, i, j, mv.c2i, mv.c2j))))
        continue;
      mask |= std::uint16_t(1u << m);
    }
    g.moves[f] = mask;
  }

  // Free <-> contracted edges through the four axis neighbours.
  std::vector<std::vector<std::pair<int, double>>> fk(nf);
  for (int f = 0; f < nf; ++f) {
    const int c = g.cell_of_free[f];
    const int i = c % nx;
    const int j = c / nx;
    bool on_edge = false;
    double edge_side = 0;
    for (int m = 0; m < 4; ++m) {
      const int nb = neighbour(chart, i, j, kStencil[m].di, kStencil[m].dj);
      const double side = kStencil[m].di != 0 ? chart.hx : chart.hy;
      if (nb < 0 && chart.kind == ChartKind::log_polar) continue;  // radial ends of the chart
      if (nb < 0 || g.labels[nb] == kOutside) {
        if (!on_edge) edge_side = side;
        on_edge = true;
        continue;
      }
      const int k = g.labels[nb];
      if (k < 0) continue;
      auto it = std::find_if(fk[f].begin(), fk[f].end(), [&](const auto& e) { return e.first == k; });
      if (it == fk[f].end())
        fk[f].emplace_back(k, side);
      else
        it->second = std::min(it->second, side);
    }
    if (spec.outer && on_edge) {
      fk[f].emplace_back(nc, edge_side);
      g.present[nc] = 1;
    }
  }
  g.fk_off.assign(nf + 1, 0);
  std::vector<std::vector<std::pair<int, double>>> kf(g.n_contracted);
  for (int f = 0; f < nf; ++f) {
    std::sort(fk[f].begin(), fk[f].end());
    g.fk_off[f + 1] = g.fk_off[f] + static_cast<int>(fk[f].size());
    for (const auto& [k, side] : fk[f]) {
      g.fk_vertex.push_back(k);
      g.fk_side.push_back(side);
      kf[k].emplace_back(f, side);
    }
  }
  g.kf_off.assign(g.n_contracted + 1, 0);
  for (int k = 0; k < g.n_contracted; ++k) {
    g.kf_off[k + 1] = g.kf_off[k] + static_cast<int>(kf[k].size());
    for (const auto& [f, side] : kf[k]) {
      g.kf_free.push_back(f);
      g.kf_side.push_back(side);
    }
  }

  // The free cells must form one piece.
  std::vector<char> seen(nf, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    const int f = q.front();
    q.pop();
    const int c = g.cell_of_free[f];
    for (int m = 0; m < 4; ++m) {
      const int nb = neighbour(chart, c % nx, c / nx, kStencil[m].di, kStencil[m].dj);
      if (!is_free(nb)) continue;
      const int t = g.free_of_cell[nb];
      if (seen[t]) continue;
      seen[t] = 1;
      ++reached;
      q.push(t);
    }
  }
  if (reached != nf)
    throw Error(Errc::DisconnectedComplement,
                std::to_string(nf - reached) + " of " + std::to_string(nf) + " free cells are cut off");
  return g;
}

}  // namespace

void validate_domain(const DomainSpec& spec) {
  if (!(spec.ambient.max.x() > spec.ambient.min.x() && spec.ambient.max.y() > spec.ambient.min.y()))
    throw Error(Errc::InvalidShape, "ambient box is empty");
  for (const auto& s : spec.continua) validate(s);
  for (std::size_t i = 0; i < spec.continua.size(); ++i)
    for (std::size_t j = i + 1; j < spec.continua.size(); ++j)
      if (dist(spec.continua[i], spec.continua[j]) <= 1e-9)
        throw Error(Errc::NotDisjoint, "continua " + std::to_string(i) + " and " + std::to_string(j) + " meet");
}

Point GridChart::center(int i, int j) const {
  if (kind == ChartKind::cartesian) return origin + Point((i + 0.5) * hx, (j + 0.5) * hy);
  const double r = r0 * std::exp((i + 0.5) * hx);
  const double t = (j + 0.5) * hy;
  return origin + r * Point(std::cos(t), std::sin(t));
}

PlanarSet GridChart::cell_shape(int i, int j) const {
  if (kind == ChartKind::cartesian) return AxisRect{origin + Point(i * hx, j * hy), hx, hy};
  return PolarRect{origin, radius_edge(*this, i), radius_edge(*this, i + 1), j * hy, (j + 1) * hy};
}

Point GridChart::to_chart(const Point& p) const {
  if (kind == ChartKind::cartesian) return p - origin;
  const Point d = p - origin;
  return Point(std::log(d.norm() / r0), wrap_angle(std::atan2(d.y(), d.x())));
}

int QuotientGrid::contracted_count() const {
  return static_cast<int>(std::count(present.begin(), present.end(), 1));
}

double QuotientGrid::move_length(int m) const {
  return std::hypot(kStencil[m].di * chart.hx, kStencil[m].dj * chart.hy);
}

int QuotientGrid::move_target(int f, int m) const {
  const int c = cell_of_free[f];
  return free_of_cell[neighbour(chart, c % chart.nx, c / chart.nx, kStencil[m].di, kStencil[m].dj)];
}

int QuotientGrid::offset_free(int f, int di, int dj) const {
  const int c = cell_of_free[f];
  const int nb = neighbour(chart, c % chart.nx, c / chart.nx, di, dj);
  return nb < 0 ? -1 : free_of_cell[nb];
}

int QuotientGrid::footprint(int f, int m, int* cells, double* share) const {
  const StencilMove& mv = kStencil[m];
  cells[0] = f;
  cells[1] = offset_free(f, mv.di, mv.dj);
  if (!mv.crosses) {
    share[0] = share[1] = 0.5;
    return 2;
  }
  cells[2] = offset_free(f, mv.c1i, mv.c1j);
  cells[3] = offset_free(f, mv.c2i, mv.c2j);
  share[0] = share[1] = share[2] = share[3] = 0.25;
  return 4;
}

QuotientGrid rasterize(const DomainSpec& spec, double h) {
  if (!(h > 0) || !std::isfinite(h)) throw Error(Errc::PreconditionViolated, "spacing must be positive");
  GridChart c;
  c.kind = ChartKind::cartesian;
  c.origin = spec.ambient.min;
  c.hx = c.hy = h;
  const Point ext = spec.ambient.max - spec.ambient.min;
  c.nx = static_cast<int>(std::ceil(ext.x() / h - 1e-9));
  c.ny = static_cast<int>(std::ceil(ext.y() / h - 1e-9));
  if (c.nx <= 0 || c.ny <= 0) throw Error(Errc::InvalidShape, "ambient box is empty");
  return build(spec, c);
}

QuotientGrid rasterize_log_polar(const DomainSpec& spec, const Point& pole, double r0, double r1, int nx, int ny) {
  if (!(r0 > 0 && r1 > r0) || nx <= 0 || ny <= 2)
    throw Error(Errc::PreconditionViolated, "log-polar chart needs 0 < r0 < r1 and positive cell counts");
  GridChart c;
  c.kind = ChartKind::log_polar;
  c.origin = pole;
  c.r0 = r0;
  c.r1 = r1;
  c.nx = nx;
  c.ny = ny;
  c.hx = std::log(r1 / r0) / nx;
  c.hy = kTwoPi / ny;
  return build(spec, c);
}

FamilyEndpoints family_endpoints(const QuotientGrid& grid, const CurveFamilySpec& fam) {
  const int nf = grid.n_free();
  FamilyEndpoints ep;
  ep.allowed_free.assign(nf, 1);
  if (fam.restriction) {
    const Box& b = *fam.restriction;
    for (int f = 0; f < nf; ++f) {
      const int c = grid.cell_of_free[f];
      const Point p = grid.chart.center(c % grid.chart.nx, c / grid.chart.nx);
      ep.allowed_free[f] = p.x() >= b.min.x() && p.x() <= b.max.x() && p.y() >= b.min.y() && p.y() <= b.max.y();
    }
  }
  ep.allowed_contracted.assign(grid.n_contracted, 0);
  for (int k = 0; k < grid.n_contracted; ++k) ep.allowed_contracted[k] = grid.present[k];
  for (int k : fam.forbidden) {
    if (k < 0 || k >= grid.n_contracted)
      throw Error(Errc::PreconditionViolated, "forbidden index " + std::to_string(k) + " out of range");
    ep.allowed_contracted[k] = 0;
    if (!fam.clip_forbidden && k < static_cast<int>(grid.spec.continua.size())) {
      for (const auto& s : fam.sources)
        if (dist(s, grid.spec.continua[k]) <= 0)
          throw Error(Errc::PreconditionViolated, "source meets forbidden continuum " + std::to_string(k));
      for (const auto& s : fam.sinks)
        if (dist(s, grid.spec.continua[k]) <= 0)
          throw Error(Errc::PreconditionViolated, "sink meets forbidden continuum " + std::to_string(k));
    }
  }

  ep.moves.assign(nf, 0);
  for (int f = 0; f < nf; ++f) {
    if (!ep.allowed_free[f]) continue;
    const int c = grid.cell_of_free[f];
    const int i = c % grid.chart.nx;
    const int j = c / grid.chart.nx;
    std::uint16_t mask = 0;
    for (int m = 0; m < 16; ++m) {
      if (!(grid.moves[f] & (1u << m))) continue;
      const StencilMove& mv = kStencil[m];
      if (!ep.allowed_free[grid.move_target(f, m)]) continue;
      if (mv.crosses) {
        const int a = grid.free_of_cell[neighbour(grid.chart, i, j, mv.c1i, mv.c1j)];
        const int b = grid.free_of_cell[neighbour(grid.chart, i, j, mv.c2i, mv.c2j)];
        if (!ep.allowed_free[a] || !ep.allowed_free[b]) continue;
      }
      mask |= std::uint16_t(1u << m);
    }
    ep.moves[f] = mask;
  }

  auto collect = [&](const std::vector<PlanarSet>& sets, const char* what) {
    std::vector<char> mark(nf, 0);
    for (const auto& s : sets) {
      validate(s);
      const IndexRange r = cells_near(grid.chart, s);
      bool any = false;
      for (int j = r.j0; j <= r.j1; ++j)
        for (int i = r.i0; i <= r.i1; ++i) {
          const int f = grid.free_of_cell[grid.cell(i, j)];
          if (f < 0 || !ep.allowed_free[f]) continue;
          if (contains(s, grid.chart.center(i, j), 0.0)) {
            mark[f] = 1;
            any = true;
          }
        }
      if (any) continue;
      for (int j = r.j0; j <= r.j1; ++j)
        for (int i = r.i0; i <= r.i1; ++i) {
          const int f = grid.free_of_cell[grid.cell(i, j)];
          if (f < 0 || !ep.allowed_free[f]) continue;
          if (shape_meets(grid.chart, i, j, s)) mark[f] = 1;
        }
    }
    std::vector<int> out;
    for (int f = 0; f < nf; ++f)
      if (mark[f]) out.push_back(f);
    if (out.empty()) throw Error(Errc::EmptyEndpointSet, std::string(what) + " misses every free cell");
    return out;
  };
  ep.sources = collect(fam.sources, "source");
  ep.sinks = collect(fam.sinks, "sink");
  std::vector<int> both;
  std::set_intersection(ep.sources.begin(), ep.sources.end(), ep.sinks.begin(), ep.sinks.end(),
                        std::back_inserter(both));
  if (!both.empty()) throw Error(Errc::PreconditionViolated, "source and sink share cells");
  return ep;
}

std::vector<int> trace_polyline(const QuotientGrid& grid, const std::vector<Point>& pts) {
  std::vector<int> out;
  const GridChart& c = grid.chart;
  auto visit = [&](const Point& p) {
    const Point q = c.to_chart(p);
    const int i = static_cast<int>(std::floor(q.x() / c.hx));
    int j = static_cast<int>(std::floor(q.y() / c.hy));
    if (c.periodic()) j = ((j % c.ny) + c.ny) % c.ny;
    if (i < 0 || i >= c.nx || j < 0 || j >= c.ny) return;
    const int cell = grid.cell(i, j);
    const int lab = grid.labels[cell];
    int v = -1;
    if (lab == kFree) v = grid.free_of_cell[cell];
    else if (lab >= 0) v = grid.contracted_vertex(lab);
    if (v < 0 || (!out.empty() && out.back() == v)) return;
    out.push_back(v);
  };
  const double step = std::min(c.hx, c.hy) / 8 * (c.periodic() ? c.r0 : 1.0);
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    const double len = (pts[s + 1] - pts[s]).norm();
    const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int k = 0; k < n; ++k) visit(pts[s] + (double(k) / n) * (pts[s + 1] - pts[s]));
  }
  if (!pts.empty()) visit(pts.back());
  return out;
}

}  // namespace transmod
