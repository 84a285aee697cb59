#pragma once

#include <transmod/geom.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace transmod {

struct DomainSpec {
  std::string label;
  Box ambient{Point::Zero(), Point::Ones()};
  std::vector<PlanarSet> continua;
  std::vector<Point> points;
  // Treat the box boundary as one more contracted continuum (index continua.size()).
  bool outer = false;
};

/// Checks shapes and pairwise disjointness (gap > 1e-9).
void validate_domain(const DomainSpec& spec);

enum class ChartKind { cartesian, log_polar };

/// Cell layout. Cartesian: cell (i,j) covers origin + [i hx, (i+1) hx] x [j hy, (j+1) hy].
/// Log-polar: cell (i,j) covers log-radius [log r0 + i hx, ...] and angle [j hy, (j+1) hy], periodic in j.
struct GridChart {
  ChartKind kind = ChartKind::cartesian;
  Point origin = Point::Zero();  // box corner, or the pole for log-polar
  double hx = 0;
  double hy = 0;
  int nx = 0;
  int ny = 0;
  double r0 = 0;  // log-polar radii, exact at both ends
  double r1 = 0;

  bool periodic() const { return kind == ChartKind::log_polar; }
  Point center(int i, int j) const;
  /// The physical region of a cell as a PlanarSet.
  PlanarSet cell_shape(int i, int j) const;
  /// Chart coordinates of a physical point.
  Point to_chart(const Point& p) const;
};

constexpr int kFree = -1;
constexpr int kOutside = -2;

/// 16-neighbour stencil (axis, diagonal and knight moves). A diagonal or knight
/// move is legal only when the two cells it sweeps past are free as well; its
/// length is then shared equally by the four cells, an axis move's by its two.
struct StencilMove {
  int di, dj;
  int c1i, c1j;  // cells that must be free for the move to be legal
  int c2i, c2j;
  bool crosses;
};
extern const StencilMove kStencil[16];

struct QuotientGrid {
  DomainSpec spec;
  GridChart chart;
  std::vector<int> labels;       // per cell: kFree, kOutside or continuum index
  std::vector<int> free_of_cell; // per cell: free id or -1
  std::vector<int> cell_of_free;
  std::vector<std::uint16_t> moves;  // per free id: legal stencil bits
  int n_contracted = 0;              // continua (+1 for the outer component)
  std::vector<char> present;         // per contracted vertex: meets the grid
  // free -> contracted adjacency (CSR), with traverse side length
  std::vector<int> fk_off, fk_vertex;
  std::vector<double> fk_side;
  // contracted -> free adjacency (CSR)
  std::vector<int> kf_off, kf_free;
  std::vector<double> kf_side;

  int n_free() const { return static_cast<int>(cell_of_free.size()); }
  int n_vertices() const { return n_free() + n_contracted; }
  double cell_area() const { return chart.hx * chart.hy; }
  int cell(int i, int j) const { return j * chart.nx + i; }
  int contracted_count() const;
  double free_area() const { return n_free() * cell_area(); }
  /// Vertex id of a free cell, or of contracted vertex k.
  int contracted_vertex(int k) const { return n_free() + k; }
  bool is_contracted(int v) const { return v >= n_free(); }
  /// Length of move m out of free id f (chart units).
  double move_length(int m) const;
  /// Free id reached by move m from free id f (caller checks the move bit).
  int move_target(int f, int m) const;
  /// Free id at offset (di, dj) from free id f, or -1.
  int offset_free(int f, int di, int dj) const;
  /// Cells charged by legal move m from f and their share of its length; returns the count.
  int footprint(int f, int m, int* cells, double* share) const;
};

QuotientGrid rasterize(const DomainSpec& spec, double h);
QuotientGrid rasterize_log_polar(const DomainSpec& spec, const Point& pole, double r0, double r1, int nx, int ny);

struct CurveFamilySpec {
  std::vector<PlanarSet> sources;  // E (union)
  std::vector<PlanarSet> sinks;    // F (union)
  std::vector<int> forbidden;      // J
  std::optional<Box> restriction;
  // Allow E or F to meet forbidden continua; the endpoint sets become E∖J and F∖J.
  bool clip_forbidden = false;
};

struct FamilyEndpoints {
  std::vector<int> sources;  // free ids
  std::vector<int> sinks;
  std::vector<char> allowed_free;
  std::vector<char> allowed_contracted;
  std::vector<std::uint16_t> moves;  // grid moves filtered by allowed cells
};

FamilyEndpoints family_endpoints(const QuotientGrid& grid, const CurveFamilySpec& fam);

/// Vertex sequence visited by a polyline (cells sampled finely, repeats collapsed).
std::vector<int> trace_polyline(const QuotientGrid& grid, const std::vector<Point>& pts);

}  // namespace transmod
