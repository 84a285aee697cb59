#include <transmod/io.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace transmod {

namespace {

Json pt(const Point& p) { return Json::array({p.x(), p.y()}); }

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(Errc::ParseError, "field '" + where + "': " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where + "." + key, "missing");
  return *it;
}

double num(const Json& j, const std::string& where) {
  if (!j.is_number()) bad(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(where, "not finite");
  return v;
}

double num(const Json& j, const char* key, const std::string& where) {
  return num(field(j, key, where), where + "." + key);
}

Point point(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) bad(where, "expected [x, y]");
  return Point(num(j[0], where + "[0]"), num(j[1], where + "[1]"));
}

Point point(const Json& j, const char* key, const std::string& where) {
  return point(field(j, key, where), where + "." + key);
}

std::vector<PlanarSet> set_list(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  std::vector<PlanarSet> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(planar_set_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Json box_json(const Box& b) { return {{"min", pt(b.min)}, {"max", pt(b.max)}}; }

Box box_from(const Json& j, const std::string& where) {
  Box b{point(j, "min", where), point(j, "max", where)};
  if (!(b.max.x() > b.min.x() && b.max.y() > b.min.y())) bad(where, "max must exceed min");
  return b;
}

template <class T>
void opt(const Json& j, const char* key, T& out, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) return;
  const std::string w = where + "." + key;
  if constexpr (std::is_same_v<T, bool>) {
    if (!it->is_boolean()) bad(w, "expected true or false");
    out = it->get<bool>();
  } else if constexpr (std::is_integral_v<T>) {
    if (!it->is_number_integer()) bad(w, "expected an integer");
    out = it->get<T>();
  } else {
    out = num(*it, w);
  }
}

}  // namespace

Json to_json(const PlanarSet& s) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Disk>)
          return {{"kind", "disk"}, {"center", pt(v.center)}, {"radius", v.radius}};
        else if constexpr (std::is_same_v<T, PointSet>)
          return {{"kind", "point"}, {"p", pt(v.p)}};
        else if constexpr (std::is_same_v<T, SegmentSet>)
          return {{"kind", "segment"}, {"a", pt(v.a)}, {"b", pt(v.b)}};
        else if constexpr (std::is_same_v<T, Circle>)
          return {{"kind", "circle"}, {"center", pt(v.center)}, {"radius", v.radius}};
        else if constexpr (std::is_same_v<T, AxisRect>)
          return {{"kind", "axis_rect"}, {"corner", pt(v.corner)}, {"width", v.width}, {"height", v.height}};
        else if constexpr (std::is_same_v<T, PolarRect>)
          return {{"kind", "polar_rect"}, {"center", pt(v.center)}, {"r_in", v.r_in},       {"r_out", v.r_out},
                  {"theta_min", v.theta_min}, {"theta_max", v.theta_max}};
        else {
          Json vs = Json::array();
          for (const auto& p : v.vertices) vs.push_back(pt(p));
          return {{"kind", "polygon"}, {"vertices", vs}};
        }
      },
      s);
}

PlanarSet planar_set_from_json(const Json& j, const std::string& where) {
  const Json& k = field(j, "kind", where);
  if (!k.is_string()) bad(where + ".kind", "expected a string");
  const std::string kind = k.get<std::string>();
  PlanarSet s;
  if (kind == "disk")
    s = Disk{point(j, "center", where), num(j, "radius", where)};
  else if (kind == "point")
    s = PointSet{point(j, "p", where)};
  else if (kind == "segment")
    s = SegmentSet{point(j, "a", where), point(j, "b", where)};
  else if (kind == "circle")
    s = Circle{point(j, "center", where), num(j, "radius", where)};
  else if (kind == "axis_rect")
    s = AxisRect{point(j, "corner", where), num(j, "width", where), num(j, "height", where)};
  else if (kind == "polar_rect")
    s = PolarRect{point(j, "center", where), num(j, "r_in", where), num(j, "r_out", where),
                  num(j, "theta_min", where), num(j, "theta_max", where)};
  else if (kind == "polygon") {
    const Json& vs = field(j, "vertices", where);
    if (!vs.is_array()) bad(where + ".vertices", "expected an array");
    Polygon p;
    for (std::size_t i = 0; i < vs.size(); ++i)
      p.vertices.push_back(point(vs[i], where + ".vertices[" + std::to_string(i) + "]"));
    s = p;
  } else {
    bad(where + ".kind", "unknown kind '" + kind + "'");
  }
  try {
    validate(s);
  } catch (const Error& e) {
    bad(where, e.what());
  }
  return s;
}

Json to_json(const DomainSpec& spec) {
  Json cs = Json::array();
  for (const auto& s : spec.continua) cs.push_back(to_json(s));
  Json ps = Json::array();
  for (const auto& p : spec.points) ps.push_back(pt(p));
  return {{"label", spec.label}, {"ambient", box_json(spec.ambient)}, {"continua", cs}, {"points", ps},
          {"outer", spec.outer}};
}

DomainSpec domain_from_json(const Json& j) {
  DomainSpec d;
  if (!j.is_object()) bad("domain", "expected an object");
  if (auto it = j.find("label"); it != j.end()) {
    if (!it->is_string()) bad("label", "expected a string");
    d.label = it->get<std::string>();
  }
  d.ambient = box_from(field(j, "ambient", "domain"), "ambient");
  if (auto it = j.find("continua"); it != j.end()) d.continua = set_list(*it, "continua");
  if (auto it = j.find("points"); it != j.end()) {
    if (!it->is_array()) bad("points", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) d.points.push_back(point((*it)[i], "points[" + std::to_string(i) + "]"));
  }
  opt(j, "outer", d.outer, "domain");
  return d;
}

Json to_json(const CurveFamilySpec& fam) {
  Json src = Json::array();
  for (const auto& s : fam.sources) src.push_back(to_json(s));
  Json snk = Json::array();
  for (const auto& s : fam.sinks) snk.push_back(to_json(s));
  Json j = {{"sources", src}, {"sinks", snk}, {"forbidden", fam.forbidden}, {"clip_forbidden", fam.clip_forbidden}};
  j["restriction"] = fam.restriction ? box_json(*fam.restriction) : Json(nullptr);
  return j;
}

CurveFamilySpec family_from_json(const Json& j) {
  CurveFamilySpec f;
  if (!j.is_object()) bad("family", "expected an object");
  f.sources = set_list(field(j, "sources", "family"), "sources");
  f.sinks = set_list(field(j, "sinks", "family"), "sinks");
  if (auto it = j.find("forbidden"); it != j.end()) {
    if (!it->is_array()) bad("forbidden", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (!(*it)[i].is_number_integer()) bad("forbidden[" + std::to_string(i) + "]", "expected an integer");
      f.forbidden.push_back((*it)[i].get<int>());
    }
  }
  if (auto it = j.find("restriction"); it != j.end() && !it->is_null()) f.restriction = box_from(*it, "restriction");
  opt(j, "clip_forbidden", f.clip_forbidden, "family");
  return f;
}

Json to_json(const SolverConfig& c) {
  return {{"path_tol", c.path_tol},     {"gap_tol", c.gap_tol},       {"max_paths", c.max_paths},
          {"batch", c.batch},           {"max_sweeps", c.max_sweeps}, {"sweep_tol", c.sweep_tol},
          {"max_stalls", c.max_stalls}, {"warm_start", c.warm_start}, {"warm_start_min_cells", c.warm_start_min_cells}};
}

SolverConfig solver_config_from_json(const Json& j, SolverConfig c) {
  if (!j.is_object()) bad("solver", "expected an object");
  opt(j, "path_tol", c.path_tol, "solver");
  opt(j, "gap_tol", c.gap_tol, "solver");
  opt(j, "max_paths", c.max_paths, "solver");
  opt(j, "batch", c.batch, "solver");
  opt(j, "max_sweeps", c.max_sweeps, "solver");
  opt(j, "sweep_tol", c.sweep_tol, "solver");
  opt(j, "max_stalls", c.max_stalls, "solver");
  opt(j, "warm_start", c.warm_start, "solver");
  opt(j, "warm_start_min_cells", c.warm_start_min_cells, "solver");
  if (!(c.path_tol > 0 && c.path_tol < 1)) bad("solver.path_tol", "must lie in (0, 1)");
  if (!(c.gap_tol > 0)) bad("solver.gap_tol", "must be positive");
  if (c.batch < 1) bad("solver.batch", "must be at least 1");
  if (c.max_paths < 0) bad("solver.max_paths", "must be non-negative");
  return c;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::ParseError, "cannot write '" + path + "'");
  out << text;
}

DomainSpec read_domain(const std::string& path) { return domain_from_json(read_json_file(path)); }
void write_domain(const std::string& path, const DomainSpec& spec) { write_text_file(path, to_json(spec).dump(2) + "\n"); }
CurveFamilySpec read_family(const std::string& path) { return family_from_json(read_json_file(path)); }
void write_family(const std::string& path, const CurveFamilySpec& fam) {
  write_text_file(path, to_json(fam).dump(2) + "\n");
}

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // Guard against a locale with a comma separator.
  for (char* p = buf; *p; ++p)
    if (*p == ',') *p = '.';
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string result_csv_header() { return "label,h,value,lower,upper,iterations,status\n"; }

std::string result_csv_row(const std::string& label, double h, const ModulusResult& r) {
  return csv_field(label) + "," + fmt_double(h) + "," + fmt_double(r.value) + "," + fmt_double(r.lower_bound) + "," +
         fmt_double(r.upper_bound) + "," + std::to_string(r.iterations) + "," + status_name(r.status) + "\n";
}

std::string density_dump(const QuotientGrid& g, const MassDistribution& rho) {
  const GridChart& c = g.chart;
  std::ostringstream os;
  os << "# chart " << (c.kind == ChartKind::cartesian ? "cartesian" : "log_polar") << " nx " << c.nx << " ny " << c.ny
     << " hx " << fmt_double(c.hx) << " hy " << fmt_double(c.hy) << " origin " << fmt_double(c.origin.x()) << " "
     << fmt_double(c.origin.y()) << "\n";
  for (int j = 0; j < c.ny; ++j) {
    for (int i = 0; i < c.nx; ++i) {
      const int f = g.free_of_cell[g.cell(i, j)];
      if (i) os << ' ';
      os << (f >= 0 ? fmt_double(rho.rho_cells[f]) : "nan");
    }
    os << '\n';
  }
  for (int k = 0; k < g.n_contracted; ++k) os << "# contracted " << k << " " << fmt_double(rho.rho_contracted[k]) << "\n";
  return os.str();
}

std::string density_svg(const QuotientGrid& g, const MassDistribution* rho, const CurveFamilySpec* fam) {
  const GridChart& c = g.chart;
  Box view = g.spec.ambient;
  if (c.kind == ChartKind::log_polar)
    view = Box{c.origin - Point(c.r1, c.r1), c.origin + Point(c.r1, c.r1)};
  const double w = view.max.x() - view.min.x();
  const double hgt = view.max.y() - view.min.y();
  const double scale = 600.0 / std::max(w, hgt);
  auto X = [&](double x) { return fmt_double((x - view.min.x()) * scale); };
  auto Y = [&](double y) { return fmt_double((view.max.y() - y) * scale); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_double(w * scale) << "\" height=\""
     << fmt_double(hgt * scale) << "\">\n";
  if (rho && rho->rho_cells.size() > 0) {
    const double top = rho->rho_cells.maxCoeff();
    for (int f = 0; f < g.n_free(); ++f) {
      const int cell = g.cell_of_free[f];
      const Point p = c.center(cell % c.nx, cell / c.nx);
      const double t = top > 0 ? rho->rho_cells[f] / top : 0.0;
      const int red = static_cast<int>(255 * t);
      const double side = c.kind == ChartKind::cartesian ? c.hx : (p - c.origin).norm() * c.hy;
      os << "<rect x=\"" << X(p.x() - side / 2) << "\" y=\"" << Y(p.y() + side / 2) << "\" width=\""
         << fmt_double(side * scale) << "\" height=\"" << fmt_double(side * scale) << "\" fill=\"rgb(" << red
         << ",0," << 255 - red << ")\"/>\n";
    }
  }
  auto outline = [&](const PlanarSet& s, const char* colour) {
    const Boundary b = boundary(s);
    for (const auto& seg : b.segments)
      os << "<line x1=\"" << X(seg.a.x()) << "\" y1=\"" << Y(seg.a.y()) << "\" x2=\"" << X(seg.b.x()) << "\" y2=\""
         << Y(seg.b.y()) << "\" stroke=\"" << colour << "\" fill=\"none\"/>\n";
    for (const auto& a : b.arcs) {
      os << "<polyline fill=\"none\" stroke=\"" << colour << "\" points=\"";
      for (int k = 0; k <= 64; ++k) {
        const Point p = a.point_at(a.start + a.span * k / 64.0);
        os << X(p.x()) << "," << Y(p.y()) << " ";
      }
      os << "\"/>\n";
    }
    for (const auto& p : b.points)
      os << "<circle cx=\"" << X(p.x()) << "\" cy=\"" << Y(p.y()) << "\" r=\"2\" fill=\"" << colour << "\"/>\n";
  };
  for (const auto& s : g.spec.continua) outline(s, "black");
  if (fam) {
    for (const auto& s : fam->sources) outline(s, "green");
    for (const auto& s : fam->sinks) outline(s, "orange");
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace transmod
