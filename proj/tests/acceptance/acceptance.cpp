// Acceptance run: the full campaign at the reference resolution, one verdict line per criterion.
#include <transmod/campaign.hpp>
#include <transmod/io.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

using namespace transmod;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMaxCaseSeconds = 60;

struct Verdict {
  int rows = 0;
  std::vector<std::string> failures;
};

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string describe(const CheckRow& r) {
  return r.id + " (observed " + fmt_double(r.observed) + ", " + r.relation + " " + fmt_double(r.expected) +
         " slack " + fmt_double(r.slack) + ")";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string out = argc > 1 ? argv[1] : "acceptance_campaign.csv";

  CampaignConfig cfg;
  cfg.threads = campaign_threads();
  cfg.square_h = 1.0 / 128;
  cfg.gallery_h = 1.0 / 128;
  cfg.packings = 10000;

  std::map<int, Verdict> verdicts;
  for (int c = 1; c <= 10; ++c) verdicts[c];

  // Criterion 1 wall time, measured outside the campaign so the CSV stays deterministic.
  {
    const QuotientGrid sq = rasterize(DomainSpec{}, cfg.square_h);
    CurveFamilySpec cross;
    cross.sources = {SegmentSet{Point(0, 0), Point(0, 1)}};
    cross.sinks = {SegmentSet{Point(1, 0), Point(1, 1)}};
    const double t_sq = seconds([&] { modulus(sq, cross, cfg.solver); });

    const double e = std::exp(1.0);
    const int nr = static_cast<int>(std::lround(1 / cfg.annulus_h));
    const QuotientGrid an = rasterize_log_polar(DomainSpec{}, Point(0, 0), 1, e, nr,
                                                static_cast<int>(std::lround(2 * kPi * nr)));
    CurveFamilySpec ring;
    ring.sources = {Circle{Point(0, 0), 1}};
    ring.sinks = {Circle{Point(0, 0), e}};
    const double t_an = seconds([&] { modulus(an, ring, cfg.solver); });

    DomainSpec box;
    box.ambient = Box{Point(-e - 0.05, -e - 0.05), Point(e + 0.05, e + 0.05)};
    SolverConfig sc = cfg.solver;
    sc.max_paths = cfg.annulus_max_paths;
    const QuotientGrid ac = rasterize(box, cfg.annulus_h);
    const double t_ac = seconds([&] { modulus(ac, ring, sc); });

    for (const auto& [name, t] : {std::pair<const char*, double>{"square", t_sq}, {"annulus_log_polar", t_an},
                                  {"annulus_cartesian", t_ac}}) {
      std::fprintf(stderr, "criterion 1 %s: %.1f s\n", name, t);
      ++verdicts[1].rows;
      if (t > kMaxCaseSeconds)
        verdicts[1].failures.push_back(std::string(name) + " took " + std::to_string(t) + " s");
    }
  }

  const auto rows = run_campaign(cfg, &std::cerr);
  write_text_file(out, campaign_csv(rows));
  for (const auto& r : rows) {
    Verdict& v = verdicts[r.criterion];
    ++v.rows;
    if (!r.pass) v.failures.push_back(describe(r));
  }

  // Criterion 10 proper: the default campaign twice, serial and parallel.
  {
    CampaignConfig def;
    def.threads = 1;
    const std::string a = campaign_csv(run_campaign(def));
    def.threads = std::max(2, campaign_threads());
    const std::string b = campaign_csv(run_campaign(def));
    ++verdicts[10].rows;
    if (a != b) verdicts[10].failures.push_back("default campaign CSV differs between runs");
  }

  int failed = 0;
  for (const auto& [c, v] : verdicts) {
    std::printf("criterion %2d: %s  (%d checks)\n", c, v.failures.empty() ? "PASS" : "FAIL", v.rows);
    for (const auto& f : v.failures) std::printf("    failed: %s\n", f.c_str());
    if (!v.failures.empty() || v.rows == 0) ++failed;
  }
  std::fflush(stdout);
  return failed ? 1 : 0;
}
