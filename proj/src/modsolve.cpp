#include <transmod/modsolve.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <tuple>

namespace transmod {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double allowance(const QuotientGrid& g) { return 0.5 * g.chart.hx; }

double vertex_weight(const QuotientGrid& g, int v) { return g.is_contracted(v) ? 1.0 : g.cell_area(); }

double rho_at(const QuotientGrid& g, const MassDistribution& rho, int v) {
  return g.is_contracted(v) ? rho.rho_contracted[v - g.n_free()] : rho.rho_cells[v];
}

Eigen::VectorXd stack(const MassDistribution& rho) {
  Eigen::VectorXd x(rho.rho_cells.size() + rho.rho_contracted.size());
  x << rho.rho_cells, rho.rho_contracted;
  return x;
}

double free_side(const QuotientGrid& g, int f, int k) {
  for (int e = g.fk_off[f]; e < g.fk_off[f + 1]; ++e)
    if (g.fk_vertex[e] == k) return g.fk_side[e];
  return -1;
}

// Step between consecutive path vertices: a stencil move, or a free/contracted
// crossing of the given side length.
struct Step {
  int move;
  double side;
};

Step step_between(const QuotientGrid& g, int u, int v) {
  const int nf = g.n_free();
  if (u < 0 || v < 0 || u >= g.n_vertices() || v >= g.n_vertices())
    throw Error(Errc::PreconditionViolated, "vertex out of range");
  if (g.is_contracted(u) && g.is_contracted(v))
    throw Error(Errc::PreconditionViolated, "two contracted vertices are never adjacent");
  if (g.is_contracted(u) || g.is_contracted(v)) {
    const int f = g.is_contracted(u) ? v : u;
    const int k = (g.is_contracted(u) ? u : v) - nf;
    const double side = free_side(g, f, k);
    if (side < 0) throw Error(Errc::PreconditionViolated, "cell not adjacent to contracted vertex");
    return {-1, side};
  }
  const GridChart& c = g.chart;
  const int cu = g.cell_of_free[u];
  const int cv = g.cell_of_free[v];
  const int di = cv % c.nx - cu % c.nx;
  int dj = cv / c.nx - cu / c.nx;
  if (c.periodic()) {
    if (dj > c.ny / 2) dj -= c.ny;
    if (dj < -c.ny / 2) dj += c.ny;
  }
  for (int m = 0; m < 16; ++m)
    if (kStencil[m].di == di && kStencil[m].dj == dj && (g.moves[u] & (1u << m))) return {m, 0.0};
  throw Error(Errc::PreconditionViolated, "cells " + std::to_string(u) + " and " + std::to_string(v) +
                                              " are not adjacent");
}

PathConstraint assemble(const QuotientGrid& g, std::vector<int> verts) {
  std::vector<std::pair<int, double>> c;
  c.reserve(2 * verts.size() + 2);
  const double allow = allowance(g);
  int cells[4];
  double share[4];
  for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
    const int u = verts[i];
    const int v = verts[i + 1];
    const Step st = step_between(g, u, v);
    if (st.move >= 0) {
      const double len = g.move_length(st.move);
      const int n = g.footprint(u, st.move, cells, share);
      for (int k = 0; k < n; ++k) c.emplace_back(cells[k], share[k] * len);
    } else {
      c.emplace_back(g.is_contracted(u) ? v : u, 0.5 * st.side);
      c.emplace_back(g.is_contracted(u) ? u : v, 0.0);
    }
  }
  if (!verts.empty()) {
    c.emplace_back(verts.front(), allow);
    c.emplace_back(verts.back(), allow);
  }
  std::sort(c.begin(), c.end());
  PathConstraint p;
  p.vertices = std::move(verts);
  for (const auto& [v, w] : c) {
    if (!p.coef.empty() && p.coef.back().first == v) {
      if (!g.is_contracted(v)) p.coef.back().second += w;
      continue;
    }
    p.coef.emplace_back(v, g.is_contracted(v) ? 1.0 : w);
  }
  return p;
}

struct Candidate {
  double total;
  int hops;
  int v;
  bool operator<(const Candidate& o) const { return std::tie(total, hops, v) < std::tie(o.total, o.hops, o.v); }
};

// Multi-source Dijkstra on the quotient grid with ties broken by (length, hops, index).
class Oracle {
public:
  Oracle(const QuotientGrid& g, const FamilyEndpoints& ends) : g_(g), ends_(ends) {
    const int n = g.n_vertices();
    dist_.assign(n, kInf);
    hops_.assign(n, 0);
    pred_.assign(n, -1);
    pred_len_.assign(n, 0);
    done_.assign(n, 0);
    sink_.assign(n, 0);
    for (int t : ends.sinks) sink_[t] = 1;
    for (int m = 0; m < 16; ++m) len_[m] = g.move_length(m);
    // Legal moves with their footprints, laid out per free cell.
    const int nf = g.n_free();
    arc_off_.assign(nf + 1, 0);
    int cells[4];
    double share[4];
    for (int v = 0; v < nf; ++v) {
      for (int m = 0; m < 16; ++m) {
        if (!(ends.moves[v] & (1u << m))) continue;
        const int k = g.footprint(v, m, cells, share);
        arcs_.push_back({cells[1], k == 4 ? cells[2] : -1, k == 4 ? cells[3] : -1, len_[m]});
      }
      arc_off_[v + 1] = static_cast<int>(arcs_.size());
    }
  }

  // Shortest total length; fills cands with all sinks whose total is below threshold.
  double run(const Eigen::VectorXd& x, double threshold, std::vector<Candidate>& cands) {
    for (int v : touched_) {
      dist_[v] = kInf;
      done_[v] = 0;
      pred_[v] = -1;
    }
    touched_.clear();
    cands.clear();
    using Item = std::tuple<double, int, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    auto relax = [&](int v, double d, int h, int from, double len) {
      if (d < dist_[v] || (d == dist_[v] && h < hops_[v])) {
        if (dist_[v] == kInf) touched_.push_back(v);
        dist_[v] = d;
        hops_[v] = h;
        pred_[v] = from;
        pred_len_[v] = len;
        pq.emplace(d, h, v);
      }
    };
    const double allow = allowance(g_);
    for (int s : ends_.sources) relax(s, x[s] * allow, 0, -1, 0);
    const int nf = g_.n_free();
    double best = kInf;
    while (!pq.empty()) {
      const auto [d, h, v] = pq.top();
      pq.pop();
      if (done_[v] || d != dist_[v] || h != hops_[v]) continue;
      if (d >= std::max(threshold, best)) break;
      done_[v] = 1;
      if (sink_[v]) {
        const double total = d + x[v] * allow;
        best = std::min(best, total);
        if (total < threshold) cands.push_back({total, h, v});
        continue;
      }
      if (v < nf) {
        for (int e = arc_off_[v]; e < arc_off_[v + 1]; ++e) {
          const Arc& a = arcs_[e];
          if (done_[a.to]) continue;
          const double c = a.c1 < 0 ? 0.5 * (x[v] + x[a.to]) : 0.25 * (x[v] + x[a.to] + x[a.c1] + x[a.c2]);
          relax(a.to, d + c * a.len, h + 1, v, a.len);
        }
        for (int e = g_.fk_off[v]; e < g_.fk_off[v + 1]; ++e) {
          const int k = g_.fk_vertex[e];
          if (!ends_.allowed_contracted[k]) continue;
          const int t = nf + k;
          if (done_[t]) continue;
          relax(t, d + 0.5 * x[v] * g_.fk_side[e] + x[t], h + 1, v, g_.fk_side[e]);
        }
      } else {
        const int k = v - nf;
        for (int e = g_.kf_off[k]; e < g_.kf_off[k + 1]; ++e) {
          const int f = g_.kf_free[e];
          if (!ends_.allowed_free[f] || done_[f]) continue;
          relax(f, d + 0.5 * x[f] * g_.kf_side[e], h + 1, v, g_.kf_side[e]);
        }
      }
    }
    std::sort(cands.begin(), cands.end());
    return best;
  }

  PathConstraint path_to(int v) const {
    std::vector<int> verts;
    for (int u = v; u >= 0; u = pred_[u]) verts.push_back(u);
    std::reverse(verts.begin(), verts.end());
    return assemble(g_, std::move(verts));
  }

  bool settled(int v) const { return done_[v]; }
  double dist(int v) const { return dist_[v]; }
  int pred(int v) const { return pred_[v]; }
  int hops(int v) const { return hops_[v]; }

  // Sink with the smallest total among the settled ones (valid after run()).
  int best_sink(const Eigen::VectorXd& x) const {
    int arg = -1;
    Candidate best{kInf, 0, 0};
    const double allow = allowance(g_);
    for (int t : ends_.sinks) {
      if (!done_[t]) continue;
      const Candidate c{dist_[t] + x[t] * allow, hops_[t], t};
      if (arg < 0 || c < best) {
        best = c;
        arg = t;
      }
    }
    return arg;
  }

private:
  const QuotientGrid& g_;
  const FamilyEndpoints& ends_;
  std::vector<double> dist_;
  std::vector<int> hops_;
  std::vector<int> pred_;
  std::vector<double> pred_len_;
  std::vector<char> done_;
  std::vector<char> sink_;
  std::vector<int> touched_;
  double len_[16];
  struct Arc {
    int to, c1, c2;
    double len;
  };
  std::vector<Arc> arcs_;
  std::vector<int> arc_off_;
};

struct Row {
  std::vector<int> idx;
  std::vector<double> val;
  double gkk = 0;
  double nu = 0;
  int idle = 0;
};

// Source-to-sink walk through v: forward tree path to v, then backward tree
// path from v. Trimmed to run from its last source to its first sink, loops erased.
void splice(const Oracle& fwd, const Oracle& bwd, int v, const std::vector<char>& src, const std::vector<char>& snk,
            std::vector<int>& pos, std::vector<int>& seq, std::vector<int>& out) {
  seq.clear();
  out.clear();
  for (int u = v; u >= 0; u = fwd.pred(u)) seq.push_back(u);
  std::reverse(seq.begin(), seq.end());
  for (int u = bwd.pred(v); u >= 0; u = bwd.pred(u)) seq.push_back(u);
  std::size_t end = 0;
  while (end + 1 < seq.size() && !snk[seq[end]]) ++end;
  seq.resize(end + 1);
  std::size_t begin = seq.size() - 1;
  while (begin > 0 && !src[seq[begin]]) --begin;
  seq.erase(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(begin));
  // Loop erasure; pos holds index + 1 of each vertex in out and is left zeroed.
  for (int u : seq) {
    if (pos[u] > 0) {
      for (std::size_t k = pos[u]; k < out.size(); ++k) pos[out[k]] = 0;
      out.resize(pos[u]);
    } else {
      out.push_back(u);
      pos[u] = static_cast<int>(out.size());
    }
  }
  for (int u : out) pos[u] = 0;
}

}  // namespace

namespace {

std::optional<QuotientGrid> coarsen(const QuotientGrid& g) {
  try {
    const GridChart& c = g.chart;
    if (c.kind == ChartKind::cartesian) return rasterize(g.spec, 2 * c.hx);
    if (c.nx < 2 || c.ny < 8) return std::nullopt;
    return rasterize_log_polar(g.spec, c.origin, c.r0, c.r1, c.nx / 2, c.ny / 2);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Density of a solve on the next coarser grid, copied cell by cell onto g.
std::optional<Eigen::VectorXd> coarse_guess(const QuotientGrid& g, const std::vector<CurveFamilySpec>& families,
                                            const SolverConfig& cfg) {
  if (g.n_free() < cfg.warm_start_min_cells) return std::nullopt;
  const auto coarse = coarsen(g);
  if (!coarse) return std::nullopt;
  SolverConfig cc = cfg;
  cc.path_tol = std::max(cfg.path_tol, 1e-2);
  cc.gap_tol = std::max(cfg.gap_tol, 0.05);
  ModulusResult r;
  try {
    r = modulus(*coarse, families, cc);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (r.status == SolveStatus::infeasible_family) return std::nullopt;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(g.n_vertices());
  const GridChart& cc_chart = coarse->chart;
  for (int f = 0; f < g.n_free(); ++f) {
    const int cell = g.cell_of_free[f];
    const Point q = cc_chart.to_chart(g.chart.center(cell % g.chart.nx, cell / g.chart.nx));
    const int i = static_cast<int>(std::floor(q.x() / cc_chart.hx));
    const int j = static_cast<int>(std::floor(q.y() / cc_chart.hy));
    if (i < 0 || i >= cc_chart.nx || j < 0 || j >= cc_chart.ny) continue;
    const int cf = coarse->free_of_cell[coarse->cell(i, j)];
    if (cf >= 0) x[f] = r.density.rho_cells[cf];
  }
  for (int k = 0; k < g.n_contracted; ++k) x[g.n_free() + k] = r.density.rho_contracted[k];
  return x;
}

}  // namespace

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::iteration_cap: return "iteration_cap";
    case SolveStatus::infeasible_family: return "infeasible_family";
  }
  return "unknown";
}

PathConstraint make_path(const QuotientGrid& g, const std::vector<int>& vertices) {
  return assemble(g, vertices);
}

double transboundary_length(const QuotientGrid& g, const MassDistribution& rho, const PathConstraint& path) {
  double s = 0;
  for (const auto& [v, w] : path.coef) s += w * rho_at(g, rho, v);
  return s;
}

std::optional<PathConstraint> shortest_path(const QuotientGrid& g, const MassDistribution& rho,
                                            const FamilyEndpoints& ends) {
  Oracle o(g, ends);
  std::vector<Candidate> cands;
  const Eigen::VectorXd x = stack(rho);
  const double best = o.run(x, -kInf, cands);
  if (!std::isfinite(best)) return std::nullopt;
  return o.path_to(o.best_sink(x));
}

ModulusResult modulus(const QuotientGrid& g, const CurveFamilySpec& fam, const SolverConfig& cfg) {
  return modulus(g, std::vector<CurveFamilySpec>{fam}, cfg);
}

ModulusResult modulus(const QuotientGrid& g, const std::vector<CurveFamilySpec>& families, const SolverConfig& cfg) {
  const int nf = g.n_free();
  const int n = g.n_vertices();
  std::vector<FamilyEndpoints> ends;
  ends.reserve(families.size());
  for (const auto& f : families) ends.push_back(family_endpoints(g, f));
  std::vector<FamilyEndpoints> flipped = ends;
  std::vector<std::vector<char>> is_source(ends.size(), std::vector<char>(n, 0));
  std::vector<std::vector<char>> is_sink(ends.size(), std::vector<char>(n, 0));
  for (std::size_t i = 0; i < ends.size(); ++i) {
    std::swap(flipped[i].sources, flipped[i].sinks);
    for (int v : ends[i].sources) is_source[i][v] = 1;
    for (int v : ends[i].sinks) is_sink[i][v] = 1;
  }
  std::vector<Oracle> oracles;
  std::vector<Oracle> reverse;
  oracles.reserve(ends.size());
  reverse.reserve(ends.size());
  for (std::size_t i = 0; i < ends.size(); ++i) {
    oracles.emplace_back(g, ends[i]);
    reverse.emplace_back(g, flipped[i]);
  }

  Eigen::VectorXd w(n);
  for (int v = 0; v < n; ++v) w[v] = vertex_weight(g, v);
  const Eigen::VectorXd winv = w.cwiseInverse();

  const int max_paths = cfg.max_paths > 0 ? cfg.max_paths : 20 * std::max(g.chart.nx, g.chart.ny);
  const double threshold = 1.0 - cfg.path_tol;

  ModulusResult res;
  res.density = MassDistribution::zeros(g);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<Row> rows;
  std::vector<Candidate> cands;
  std::vector<char> used(n, 0);
  int stalls = 0;
  double shortest = kInf;

  // Separation: per family, the shortest path plus a diverse batch of paths
  // shorter than limit, read off the forward and backward shortest-path trees.
  std::vector<int> pos(n, 0);
  std::vector<char> both_trees(oracles.size(), 0);
  std::vector<int> walk;
  std::vector<int> seq;
  std::vector<Candidate> through;
  // Used vertices on each tree path, memoised until the used set changes.
  std::vector<int> used_f(n, 0), used_b(n, 0), stamp_f(n, -1), stamp_b(n, -1), climb;
  int version = 0;
  auto tree_used = [&](const Oracle& o, std::vector<int>& cnt, std::vector<int>& stamp, int v) {
    climb.clear();
    int u = v;
    while (u >= 0 && stamp[u] != version) {
      climb.push_back(u);
      u = o.pred(u);
    }
    int acc = u >= 0 ? cnt[u] : 0;
    for (auto it = climb.rbegin(); it != climb.rend(); ++it) {
      acc += used[*it];
      cnt[*it] = acc;
      stamp[*it] = version;
    }
    return cnt[v];
  };
  auto separate = [&](const Eigen::VectorXd& xx, double limit, int batch, std::vector<Row>& fresh) {
    double best = kInf;
    for (std::size_t fi = 0; fi < oracles.size(); ++fi) {
      Oracle& fwd = oracles[fi];
      Oracle& bwd = reverse[fi];
      const double s = fwd.run(xx, limit, cands);
      best = std::min(best, s);
      both_trees[fi] = s < limit;
      if (!both_trees[fi]) continue;
      bwd.run(xx, limit, cands);
      ++version;
      through.clear();
      for (int v = 0; v < n; ++v) {
        if (!fwd.settled(v) || !bwd.settled(v)) continue;
        const double t = fwd.dist(v) + bwd.dist(v) - (v >= nf ? xx[v] : 0.0);
        if (t < limit) through.push_back({t, 0, v});
      }
      std::sort(through.begin(), through.end());
      std::vector<int> marked;
      int taken = 0;
      for (const auto& c : through) {
        if (taken >= batch) break;
        if (used[c.v]) continue;
        // The raw tree walk is a cheap stand-in for the spliced path.
        const int raw_len = fwd.hops(c.v) + bwd.hops(c.v) + 1;
        const int raw_used = tree_used(fwd, used_f, stamp_f, c.v) + tree_used(bwd, used_b, stamp_b, c.v);
        if (2 * raw_used > raw_len) continue;
        splice(fwd, bwd, c.v, is_source[fi], is_sink[fi], pos, walk, seq);
        int overlap = 0;
        for (int v : seq) overlap += used[v];
        if (2 * overlap > static_cast<int>(seq.size())) continue;
        for (int v : seq)
          if (!used[v]) {
            used[v] = 1;
            marked.push_back(v);
          }
        ++version;
        const PathConstraint p = make_path(g, seq);
        Row r;
        for (const auto& [v, cv] : p.coef) {
          r.idx.push_back(v);
          r.val.push_back(cv);
          r.gkk += cv * cv * winv[v];
        }
        fresh.push_back(std::move(r));
        ++taken;
      }
      for (int v : marked) used[v] = 0;
      ++version;
    }
    return best;
  };

  // Seed the active set with paths that are nearly tight for a coarse solution.
  if (cfg.warm_start) {
    if (auto guess = coarse_guess(g, families, cfg)) {
      std::vector<Candidate> probe;
      const double s0 = oracles.empty() ? kInf : [&] {
        double b = kInf;
        for (auto& o : oracles) b = std::min(b, o.run(*guess, -kInf, probe));
        return b;
      }();
      if (std::isfinite(s0) && s0 > 0) separate(*guess, s0 * 1.05, 4 * cfg.batch, rows);
    }
  }

  // Every path shorter than the threshold runs through vertices settled in both
  // trees, and each cell it charges lies in the 3x3 block around one of them.
  // Dividing x by the shortest length through that block is therefore
  // admissible up to the threshold, and costs far less mass than 1/s^2 overall.
  Eigen::VectorXd via(n);
  auto repair = [&](const Eigen::VectorXd& xx) {
    via.setOnes();
    for (std::size_t fi = 0; fi < oracles.size(); ++fi) {
      if (!both_trees[fi]) continue;
      for (int v = 0; v < n; ++v) {
        if (!oracles[fi].settled(v) || !reverse[fi].settled(v)) continue;
        const double t = oracles[fi].dist(v) + reverse[fi].dist(v) - (v >= nf ? xx[v] : 0.0);
        via[v] = std::min(via[v], t);
      }
    }
    Eigen::VectorXd y = xx;
    for (int f = 0; f < nf; ++f) {
      double t = via[f];
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          const int u = g.offset_free(f, di, dj);
          if (u >= 0) t = std::min(t, via[u]);
        }
      if (t < 1) y[f] /= t;
    }
    for (int v = nf; v < n; ++v)
      if (via[v] < 1) y[v] /= via[v];
    return y;
  };
  Eigen::VectorXd best_rho;
  std::vector<Candidate> probe;

  for (int iter = 0;; ++iter) {
    res.iterations = iter;
    std::vector<Row> fresh;
    shortest = separate(x, threshold, cfg.batch, fresh);
    if (!std::isfinite(shortest)) {
      res.status = SolveStatus::infeasible_family;
      res.shortest_final = kInf;
      return res;
    }

    const double mass = x.dot(w.cwiseProduct(x));
    double sum_nu = 0;
    for (const auto& r : rows) sum_nu += r.nu;
    const double lower = mass > 0 ? sum_nu * sum_nu / mass : 0.0;
    double upper = shortest > 0 ? mass / (shortest * shortest) : kInf;
    double s_final = shortest;
    best_rho = x;
    if (shortest > 0 && shortest < threshold) {
      Eigen::VectorXd y = repair(x);
      const double my = y.dot(w.cwiseProduct(y));
      if (my / (threshold * threshold) - lower <= cfg.gap_tol * std::max(mass, lower)) {
        double sy = kInf;
        for (auto& o : oracles) sy = std::min(sy, o.run(y, -kInf, probe));
        if (sy >= threshold && my / (sy * sy) < upper) {
          upper = my / (sy * sy);
          s_final = sy;
          best_rho = std::move(y);
        }
      }
    }
    res.lower_bound = lower;
    res.upper_bound = upper;
    res.value = std::clamp(mass, lower, std::max(lower, upper));
    res.shortest_final = s_final;
    res.active_paths = static_cast<int>(rows.size());
    if (s_final >= threshold && upper - lower <= cfg.gap_tol * res.value) {
      res.status = SolveStatus::converged;
      break;
    }
    if (static_cast<int>(rows.size()) >= max_paths || stalls > cfg.max_stalls) {
      res.status = SolveStatus::iteration_cap;
      break;
    }
    if (fresh.empty()) ++stalls;
    for (auto& r : fresh) rows.push_back(std::move(r));

    // Dual coordinate ascent (Hildreth) over the active rows, warm-started.
    double dual = 2 * sum_nu - mass;
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
      double gain = 0;
      for (auto& r : rows) {
        double l = 0;
        for (std::size_t k = 0; k < r.idx.size(); ++k) l += r.val[k] * x[r.idx[k]];
        double d = (1.0 - l) / r.gkk;
        if (r.nu + d < 0) d = -r.nu;
        if (d == 0) continue;
        r.nu += d;
        for (std::size_t k = 0; k < r.idx.size(); ++k) x[r.idx[k]] += d * r.val[k] * winv[r.idx[k]];
        gain += 2 * d * (1.0 - l) - d * d * r.gkk;
      }
      dual += gain;
      if (gain <= cfg.sweep_tol * std::abs(dual)) break;
    }

    // Drop rows that stayed slack and unweighted, then rebuild x to shed drift.
    for (auto& r : rows) r.idle = r.nu > 0 ? 0 : r.idle + 1;
    rows.erase(std::remove_if(rows.begin(), rows.end(), [](const Row& r) { return r.idle >= 4; }), rows.end());
    x.setZero();
    for (const auto& r : rows)
      for (std::size_t k = 0; k < r.idx.size(); ++k) x[r.idx[k]] += r.nu * r.val[k] * winv[r.idx[k]];
  }

  const double scale = res.shortest_final > 0 ? 1.0 / res.shortest_final : 0.0;
  res.density.rho_cells = best_rho.head(nf) * scale;
  res.density.rho_contracted = best_rho.tail(g.n_contracted) * scale;
  return res;
}

AdmissibilityReport verify_admissible(const QuotientGrid& g, const MassDistribution& rho, const CurveFamilySpec& fam,
                                      int n_random_paths, std::uint64_t seed, double path_tol) {
  const FamilyEndpoints ends = family_endpoints(g, fam);
  const int nf = g.n_free();
  const int n = g.n_vertices();
  AdmissibilityReport rep;
  rep.min_length = kInf;

  auto neighbours = [&](int v, std::vector<int>& out) {
    out.clear();
    if (v < nf) {
      if (!ends.allowed_free[v]) return;
      for (int m = 0; m < 16; ++m)
        if (ends.moves[v] & (1u << m)) out.push_back(g.move_target(v, m));
      for (int e = g.fk_off[v]; e < g.fk_off[v + 1]; ++e)
        if (ends.allowed_contracted[g.fk_vertex[e]]) out.push_back(nf + g.fk_vertex[e]);
    } else {
      const int k = v - nf;
      for (int e = g.kf_off[k]; e < g.kf_off[k + 1]; ++e)
        if (ends.allowed_free[g.kf_free[e]]) out.push_back(g.kf_free[e]);
    }
  };

  // Hop distance to the sink set steers the walks.
  std::vector<int> hop(n, -1);
  std::queue<int> q;
  for (int t : ends.sinks) {
    hop[t] = 0;
    q.push(t);
  }
  std::vector<int> nb;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    neighbours(v, nb);
    for (int u : nb)
      if (hop[u] < 0) {
        hop[u] = hop[v] + 1;
        q.push(u);
      }
  }
  std::vector<char> sink(n, 0);
  for (int t : ends.sinks) sink[t] = 1;

  std::mt19937_64 rng(seed);
  std::vector<int> starts;
  for (int s : ends.sources)
    if (hop[s] >= 0) starts.push_back(s);
  if (!starts.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, starts.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> wts;
    std::vector<int> pos(n, -1);
    for (int trial = 0; trial < n_random_paths; ++trial) {
      std::vector<int> walk{starts[pick(rng)]};
      pos[walk[0]] = 0;
      const long cap = 50L * n;
      for (long step = 0; step < cap && !sink[walk.back()]; ++step) {
        const int v = walk.back();
        neighbours(v, nb);
        wts.clear();
        double tot = 0;
        for (int u : nb) {
          double wt = 0;
          if (hop[u] >= 0) wt = hop[u] < hop[v] ? 4.0 : (hop[u] == hop[v] ? 1.0 : 0.25);
          wts.push_back(wt);
          tot += wt;
        }
        if (tot <= 0) break;
        double r = unit(rng) * tot;
        std::size_t k = 0;
        while (k + 1 < nb.size() && r >= wts[k]) r -= wts[k++];
        const int u = nb[k];
        if (pos[u] >= 0) {
          // Erase the loop just closed.
          for (std::size_t t = pos[u] + 1; t < walk.size(); ++t) pos[walk[t]] = -1;
          walk.resize(pos[u] + 1);
        } else {
          pos[u] = static_cast<int>(walk.size());
          walk.push_back(u);
        }
      }
      for (int v : walk) pos[v] = -1;
      if (!sink[walk.back()]) continue;
      // A curve stops at its first visit to the sink set.
      std::size_t end = 0;
      while (!sink[walk[end]]) ++end;
      walk.resize(end + 1);
      const PathConstraint p = make_path(g, walk);
      rep.min_length = std::min(rep.min_length, transboundary_length(g, rho, p));
      ++rep.sampled;
    }
  }

  Oracle o(g, ends);
  std::vector<Candidate> cands;
  const double best = o.run(stack(rho), -kInf, cands);
  rep.shortest = best;
  rep.min_length = std::min(rep.min_length, best);
  if (!std::isfinite(rep.min_length)) rep.min_length = kInf;
  rep.admissible = rep.min_length >= 1.0 - path_tol;
  return rep;
}

}  // namespace transmod
