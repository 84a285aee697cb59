#pragma once

#include <transmod/domain.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace transmod {

struct MassDistribution {
  Eigen::VectorXd rho_cells;       // per free cell, 1/length
  Eigen::VectorXd rho_contracted;  // per contracted vertex

  static MassDistribution zeros(const QuotientGrid& g) {
    return {Eigen::VectorXd::Zero(g.n_free()), Eigen::VectorXd::Zero(g.n_contracted)};
  }
  double mass(const QuotientGrid& g) const {
    return rho_cells.squaredNorm() * g.cell_area() + rho_contracted.squaredNorm();
  }
};

/// A path through the quotient grid with its length coefficients.
/// Free cells pay half of each incident edge; the two end cells also pay
/// half a cell for the stretch between the endpoint set and the cell centre.
struct PathConstraint {
  std::vector<int> vertices;
  std::vector<std::pair<int, double>> coef;  // sorted by vertex id
};

/// Builds coefficients for a vertex sequence; throws PreconditionViolated when
/// consecutive vertices are not adjacent.
PathConstraint make_path(const QuotientGrid& grid, const std::vector<int>& vertices);

double transboundary_length(const QuotientGrid& grid, const MassDistribution& rho, const PathConstraint& path);

/// Minimum transboundary-length path from a source cell to a sink cell, or none.
std::optional<PathConstraint> shortest_path(const QuotientGrid& grid, const MassDistribution& rho,
                                            const FamilyEndpoints& ends);

struct SolverConfig {
  double path_tol = 1e-3;
  double gap_tol = 0.02;
  int max_paths = 0;  // 0: 20 x grid diameter in cells
  int batch = 64;
  int max_sweeps = 400;
  double sweep_tol = 1e-8;
  int max_stalls = 60;
  // Seed from a solve on a grid twice as coarse (recursively).
  bool warm_start = true;
  int warm_start_min_cells = 4096;
};

enum class SolveStatus { converged, iteration_cap, infeasible_family };
const char* status_name(SolveStatus s);

struct ModulusResult {
  double value = 0;
  double upper_bound = 0;
  double lower_bound = 0;
  MassDistribution density;
  int iterations = 0;
  int active_paths = 0;
  double shortest_final = 0;
  SolveStatus status = SolveStatus::infeasible_family;

  double gap() const { return upper_bound - lower_bound; }
};

/// Transboundary modulus of the union of the given families.
ModulusResult modulus(const QuotientGrid& grid, const std::vector<CurveFamilySpec>& families,
                      const SolverConfig& cfg = {});
ModulusResult modulus(const QuotientGrid& grid, const CurveFamilySpec& fam, const SolverConfig& cfg = {});

struct AdmissibilityReport {
  double min_length = 0;
  double shortest = 0;
  int sampled = 0;
  bool admissible = false;
};

AdmissibilityReport verify_admissible(const QuotientGrid& grid, const MassDistribution& rho,
                                      const CurveFamilySpec& fam, int n_random_paths, std::uint64_t seed = 1,
                                      double path_tol = 1e-3);

}  // namespace transmod
