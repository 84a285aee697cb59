// transmod command-line front end.
#include <transmod/campaign.hpp>
#include <transmod/gallery.hpp>
#include <transmod/io.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace transmod;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCampaign = 1;
constexpr int kExitCap = 2;
constexpr int kExitInput = 3;

struct Options {
  std::string domain;
  std::string family;
  std::string config;
  double h = 1.0 / 64;
  bool h_set = false;
  std::uint64_t seed = 1;
  std::string out = ".";
  std::string format = "human";
  bool svg = false;
  int max_paths = -1;
  double path_tol = -1;
  double twin_constant = 20;
};

SolverConfig solver_from(const Options& o) {
  SolverConfig c;
  if (!o.config.empty()) c = solver_config_from_json(read_json_file(o.config));
  if (o.max_paths >= 0) c.max_paths = o.max_paths;
  if (o.path_tol > 0) c.path_tol = o.path_tol;
  if (!(c.path_tol > 0 && c.path_tol < 1)) throw Error(Errc::ParseError, "field 'path-tol': must lie in (0, 1)");
  return c;
}

// Default sidecar: foo.json -> foo.family.json.
std::string sidecar_of(const std::string& domain) {
  fs::path p(domain);
  return (p.parent_path() / (p.stem().string() + ".family.json")).string();
}

Json family_json(const Options& o) {
  if (!o.family.empty() && o.family.front() == '{') {
    try {
      return Json::parse(o.family);
    } catch (const Json::parse_error& e) {
      throw Error(Errc::ParseError, std::string("inline family: ") + e.what());
    }
  }
  return read_json_file(o.family.empty() ? sidecar_of(o.domain) : o.family);
}

// An optional "chart" entry in the family sidecar selects a log-polar grid:
// {"kind": "log_polar", "pole": [x, y], "r0": a, "r1": b}. Cells have side h on the inner ring.
QuotientGrid grid_for(const DomainSpec& d, const Json& fam, double h) {
  auto it = fam.find("chart");
  if (it == fam.end() || it->is_null()) return rasterize(d, h);
  ScenarioCase c;
  c.domain = d;
  const Json& ch = *it;
  if (!ch.is_object() || !ch.contains("kind") || !ch["kind"].is_string()) throw Error(Errc::ParseError, "field 'chart.kind': missing");
  const std::string kind = ch["kind"].get<std::string>();
  if (kind == "cartesian") return rasterize(d, h);
  if (kind != "log_polar") throw Error(Errc::ParseError, "field 'chart.kind': unknown kind '" + kind + "'");
  c.chart.kind = ChartKind::log_polar;
  try {
    c.chart.pole = Point(ch.at("pole").at(0).get<double>(), ch.at("pole").at(1).get<double>());
    c.chart.r0 = ch.at("r0").get<double>();
    c.chart.r1 = ch.at("r1").get<double>();
  } catch (const Json::exception&) {
    throw Error(Errc::ParseError, "field 'chart': needs pole [x, y], r0 and r1");
  }
  return rasterize_case(c, h);
}

Json chart_json(const ChartHint& c) {
  if (c.kind == ChartKind::cartesian) return nullptr;
  return {{"kind", "log_polar"}, {"pole", {c.pole.x(), c.pole.y()}}, {"r0", c.r0}, {"r1", c.r1}};
}

int run_compute(const Options& o) {
  if (o.domain.empty()) throw Error(Errc::ParseError, "field 'domain': --domain is required");
  if (!(o.h > 0)) throw Error(Errc::ParseError, "field 'h': must be positive");
  const DomainSpec d = read_domain(o.domain);
  validate_domain(d);
  const Json fj = family_json(o);
  const CurveFamilySpec fam = family_from_json(fj);
  const SolverConfig cfg = solver_from(o);
  const QuotientGrid g = grid_for(d, fj, o.h);
  const ModulusResult r = modulus(g, fam, cfg);

  fs::create_directories(o.out);
  const std::string label = d.label.empty() ? fs::path(o.domain).stem().string() : d.label;
  const std::string row = result_csv_row(label, o.h, r);
  write_text_file((fs::path(o.out) / "result.csv").string(), result_csv_header() + row);
  write_text_file((fs::path(o.out) / "density.txt").string(), density_dump(g, r.density));
  if (o.svg) write_text_file((fs::path(o.out) / "density.svg").string(), density_svg(g, &r.density, &fam));

  if (o.format == "csv") {
    std::cout << result_csv_header() << row;
  } else {
    std::printf("%s  h=%s  cells=%d  value=%.6g  [%.6g, %.6g]  iterations=%d  %s\n", label.c_str(),
                fmt_double(o.h).c_str(), g.n_free(), r.value, r.lower_bound, r.upper_bound, r.iterations,
                status_name(r.status));
  }
  if (r.status == SolveStatus::iteration_cap) {
    std::cerr << "transmod: iteration cap reached with gap " << fmt_double(r.gap()) << "\n";
    return kExitCap;
  }
  return kExitOk;
}

int run_campaign_cmd(const Options& o) {
  CampaignConfig cc;
  cc.seed = o.seed;
  cc.threads = campaign_threads();
  cc.solver = solver_from(o);
  cc.twin_constant = o.twin_constant;
  if (o.h_set) {
    if (!(o.h > 0)) throw Error(Errc::ParseError, "field 'h': must be positive");
    cc.square_h = cc.annulus_h = cc.gallery_h = cc.random_h = cc.axiom_h = o.h;
  }
  const auto rows = run_campaign(cc, o.format == "human" ? &std::cerr : nullptr);
  fs::create_directories(o.out);
  const std::string csv = campaign_csv(rows);
  write_text_file((fs::path(o.out) / "campaign.csv").string(), csv);
  int failed = 0;
  for (const auto& r : rows)
    if (!r.pass) {
      ++failed;
      std::cerr << "FAIL " << r.id << ": observed " << fmt_double(r.observed) << ", expected " << r.relation << " "
                << fmt_double(r.expected) << " (slack " << fmt_double(r.slack) << ")\n";
    }
  if (o.format == "csv") std::cout << csv;
  std::cout << rows.size() << " checks, " << failed << " failed\n";
  return failed ? kExitCampaign : kExitOk;
}

int run_gallery(const Options& o, bool export_files) {
  const std::vector<std::pair<std::string, std::vector<int>>> ladders = {{"bonk_squares", {1, 3}},
                                                                         {"polar_rectangle", {2, 5, 10, 20}},
                                                                         {"twin_squares", {2, 5, 10, 20}},
                                                                         {"kissing_disks", {2, 8, 32}}};
  for (const auto& [name, ns] : ladders)
    for (int n : ns) {
      const ScenarioCase c = make_case(name, n);
      std::printf("%-16s n=%-3d bound=%-10.6g delta=%-10.6g %s\n", name.c_str(), n, c.bound.value, c.delta,
                  c.bound.source.c_str());
      if (!export_files) continue;
      fs::create_directories(o.out);
      const std::string stem = (fs::path(o.out) / c.domain.label).string();
      write_domain(stem + ".json", c.domain);
      Json fj = to_json(c.family);
      fj["chart"] = chart_json(c.chart);
      fj["bound"] = c.bound.value;
      write_text_file(stem + ".family.json", fj.dump(2) + "\n");
    }
  return kExitOk;
}

int run_check_geometry(const Options& o) {
  if (o.domain.empty()) throw Error(Errc::ParseError, "field 'domain': --domain is required");
  const DomainSpec d = read_domain(o.domain);
  validate_domain(d);
  std::printf("%s: %zu continua, %zu point components, outer=%s\n", d.label.c_str(), d.continua.size(),
              d.points.size(), d.outer ? "true" : "false");
  for (std::size_t i = 0; i < d.continua.size(); ++i) {
    const auto& s = d.continua[i];
    const auto fat = is_tau_fat(s, 0.25);
    std::printf("  K%zu diam=%.6g tau~%.4g quasiround=%.4g\n", i, diam(s), fat.tau_estimate, quasiroundness(s));
  }
  for (std::size_t i = 0; i < d.continua.size(); ++i)
    for (std::size_t j = i + 1; j < d.continua.size(); ++j)
      std::printf("  delta(K%zu, K%zu)=%.6g\n", i, j, relative_distance(d.continua[i], d.continua[j]));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transboundary modulus engine"};
  app.set_help_flag("--help", "print this help");
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print this help");
    sub->add_option("--domain", o.domain, "DomainSpec JSON file");
    sub->add_option("--family", o.family, "family sidecar file or inline JSON");
    sub->add_option("--config", o.config, "SolverConfig JSON file");
    sub->add_option("--h", o.h, "grid spacing")->each([&](const std::string&) { o.h_set = true; });
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--format", o.format, "csv or human")->check(CLI::IsMember({"csv", "human"}));
    sub->add_flag("--svg", o.svg, "also write density.svg");
    sub->add_option("--max-paths", o.max_paths, "constraint cap");
    sub->add_option("--path-tol", o.path_tol, "admissibility tolerance");
  };
  CLI::App* compute = app.add_subcommand("compute", "modulus of one domain and family");
  CLI::App* campaign = app.add_subcommand("campaign", "run every verification check");
  CLI::App* gallery = app.add_subcommand("gallery-list", "list the scenario gallery");
  CLI::App* geometry = app.add_subcommand("check-geometry", "validate a domain and report its shape constants");
  for (CLI::App* s : {compute, campaign, gallery, geometry}) add_common(s);
  bool export_files = false;
  gallery->add_flag("--export", export_files, "write each case as domain and family JSON into --out");
  campaign->add_option("--twin-constant", o.twin_constant, "numerator of the twin-squares bound (sensitivity runs)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*compute) return run_compute(o);
    if (*campaign) return run_campaign_cmd(o);
    if (*gallery) return run_gallery(o, export_files);
    if (*geometry) return run_check_geometry(o);
  } catch (const Error& e) {
    std::cerr << "transmod: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "transmod: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
