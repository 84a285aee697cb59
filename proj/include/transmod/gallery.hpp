#pragma once

#include <transmod/domain.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace transmod {

struct PaperBound {
  enum class Kind { upper, lower };
  Kind kind = Kind::upper;
  double value = 0;
  std::string source;
};

/// Preferred discretization. Log-polar cases put the pole at the centre of
/// their family annulus, which is then the whole chart.
struct ChartHint {
  ChartKind kind = ChartKind::cartesian;
  Point pole = Point::Zero();
  double r0 = 0;
  double r1 = 0;
};

struct ScenarioCase {
  std::string name;
  int n = 0;
  DomainSpec domain;
  CurveFamilySpec family;
  PaperBound bound;
  ChartHint chart;
  double delta = 0;  // Δ(E,F) of the un-thickened endpoint sets
  std::vector<std::pair<std::string, double>> meta;

  double meta_value(const std::string& key) const;
};

ScenarioCase bonk_squares(int n);
ScenarioCase polar_rectangle_domain(int n);
ScenarioCase twin_squares_domain(int n);
ScenarioCase kissing_disks_domain(int n);

/// Grid for a case at physical spacing h. Log-polar charts use cells whose
/// innermost ring has side h.
QuotientGrid rasterize_case(const ScenarioCase& c, double h);

struct RandomCircleDomain {
  DomainSpec domain;
  double separation = 0;  // smallest pairwise relative distance achieved
};

/// Disjoint disks in the unit box with pairwise relative distance > c.
/// Radii are drawn from [r_min, r_max]. Throws PackingFailed after
/// 2000 * count rejected draws.
RandomCircleDomain circle_domain_random(std::uint64_t seed, int count, double c, double r_min = 0.03,
                                        double r_max = 0.12);

/// Names accepted by make_case.
std::vector<std::string> gallery_names();
ScenarioCase make_case(const std::string& name, int n);

/// Uniform double in [0,1) from a 64-bit engine, identical on every platform.
template <class Engine>
double unit_draw(Engine& e) {
  return static_cast<double>(e() >> 11) * 0x1.0p-53;
}

}  // namespace transmod
