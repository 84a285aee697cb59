#pragma once

#include <transmod/modsolve.hpp>

#include <optional>
#include <vector>

namespace transmod {

/// Logarithmic density on a thick subannulus A' = A[x, r', R'] plus
/// continuum weights w_{A'}(K_i) / log(R'/r').
struct AnnulusCertificate {
  Annulus initial;      // A[x, diam E, dist(E, F)]
  Annulus annulus;      // A'
  std::vector<int> forbidden;   // J, continuum indices (continua.size() stands for the outer component)
  std::vector<double> widths;   // w_{A'}(K_i) per component, outer component last when present
  std::vector<double> weights;  // rho_i, zero on J and on components missing A'
  double log_ratio = 0;         // L = log(R'/r')
  double mass_bound = 0;        // 2π/L + 32/L + 32/L^{1/3}
  double delta = 0;             // Δ(E, F)
  bool ratio_ok = false;        // R'/r' >= 14
  bool width_ok = false;        // every component off J has width <= L^{1/3}
  bool formally_covered = false;  // Δ(E,F) > exp(log(14)^27)

  /// ρ(z) = 1 / (L |x - z|) on A', zero elsewhere.
  double density(const Point& z) const;
};

/// Narrowing search for the subannulus. The smaller of E, F plays the role of E.
/// Throws NotApplicable when Δ(E,F) <= 14^3; returns nullopt only if a third
/// wide component shows up after two narrowings.
std::optional<AnnulusCertificate> find_wide_subannulus(const DomainSpec& spec, const PlanarSet& e,
                                                       const PlanarSet& f);

struct CertificateMass {
  double radial = 0;      // ∫_{A'} ρ² = 2π/L
  double overlap = 0;     // ∫_{A' ∩ K} ρ², subtracted
  double narrow_sq = 0;   // Σ ρ_i² over components with width <= log 2
  double wide_sq = 0;     // Σ ρ_i² over the rest
  int wide_count = 0;     // #(K_2)
  double total = 0;       // radial - overlap + narrow_sq + wide_sq
  double bound = 0;
  bool within_bound = false;
};

CertificateMass certificate_mass(const AnnulusCertificate& cert, const DomainSpec& spec);

/// (log t)^{-1/27} ((2π + 32) / log(14)^{2/3} + 32); DomainError for t <= 1.
double phi(double t);
double phi_constant();

/// Log-polar grid on A' and the certificate discretised on it. Chart density is
/// 1/L on free cells; each weight gains hx/L for the half cells on either side.
struct DiscreteCertificate {
  QuotientGrid grid;
  CurveFamilySpec family;
  MassDistribution density;
  double mass = 0;
};

DiscreteCertificate discretize_certificate(const AnnulusCertificate& cert, const DomainSpec& spec, int n_radial,
                                           int n_angular);

/// Inner balls B(x_i, r_i) ⊂ K_i ⊂ B(x_i, λ r_i).
struct QuasiroundBall {
  Point center;
  double r;
};

struct InflatedDensity {
  QuotientGrid plain;     // the same box with no continua
  MassDistribution g;     // classical density on plain
  double c = 0;           // (1 + 12λ + 4λ²)/τ
  double mass_threshold = 0;  // 1/(4c²)
  double source_mass = 0;     // A_K(ρ)
  bool in_regime = false;     // source_mass <= mass_threshold
};

/// g = 2(ρ 1_{Ω∖K} + Σ ρ_i/(λ r_i) 1_{B(x_i, 2λ r_i)}) on the un-collapsed grid.
/// Cells are tested by centre. g is computed whether or not the regime holds.
InflatedDensity inflate_density(const QuotientGrid& grid, const MassDistribution& rho,
                                const std::vector<QuasiroundBall>& balls, double lambda, double tau);

/// ∫(Σ a_i 1_{B(x_i, s r_i)})² dA, exact via pairwise lens areas.
double ball_sum_energy(const std::vector<Disk>& balls, const std::vector<double>& a, double s = 1.0);

/// ∫(Σ a_i 1_{λB_i})² / ∫(Σ a_i 1_{B_i})² for disjoint balls.
double bojarski_ratio(const std::vector<Disk>& balls, const std::vector<double>& a, double lambda);

}  // namespace transmod
