#pragma once

#include <array>
#include <string>
#include <vector>

#include "permflow/assignment.hpp"
#include "permflow/vec.hpp"

namespace permflow::polar {

enum class Domain { interval, square, cube, disk, cylinder };

const char* domain_name(Domain d);
Domain parse_domain(const std::string& name);

// Axis-aligned box lattice geometry shared by grids and histograms.
struct BoxGrid {
  int dim = 0;
  std::array<int, 3> shape{1, 1, 1};
  Vec lo;
  std::array<double, 3> widths{1.0, 1.0, 1.0};

  int cell_count() const { return shape[0] * shape[1] * shape[2]; }
  double cell_volume() const;
  int flat_index(int ix, int iy, int iz) const { return (iz * shape[1] + iy) * shape[0] + ix; }
  std::array<int, 3> unflatten(int flat) const;
  Vec cell_center(int ix, int iy, int iz) const;
  // Cell containing p, clamped to the box; sets *clamped when p was outside.
  std::array<int, 3> locate(const Vec& p, bool* clamped = nullptr) const;
};

// Fixed target points discretizing the domain: centers of the retained
// lattice cells, ordered row-major within a horizontal layer, layers bottom
// to top. cell_of_point maps each point back to its box cell.
struct PointCloud {
  Domain domain = Domain::square;
  int dim = 0;
  int n_per_axis = 0;
  BoxGrid box;
  std::vector<Vec> points;
  std::vector<int> cell_of_point;

  int count() const { return static_cast<int>(points.size()); }
  double cell_measure() const { return 1.0 / count(); }
  double spacing() const { return box.widths[0]; }
  // True when every box cell is retained (interval/square/cube).
  bool full_tensor() const { return count() == box.cell_count(); }
};

PointCloud make_grid(Domain domain, int n_per_axis);

// Lattice-cell histogram with integer counts as the source of truth.
struct DensityHistogram {
  BoxGrid box;
  std::vector<long> counts;
  long total = 0;
  long clamped = 0;  // samples that fell outside the box and were clamped in

  double mass(int flat) const { return static_cast<double>(counts[flat]) / static_cast<double>(total); }
  double density(int flat) const { return mass(flat) / box.cell_volume(); }
};

DensityHistogram empirical_density(const std::vector<Vec>& mapped, const PointCloud& grid);

// Values of the convex potential at the mapped locations.
struct PotentialSamples {
  std::vector<Vec> locations;
  std::vector<double> phi;
};

struct ProjectionResult {
  std::vector<Vec> rearrangement;  // rearrangement[a] = grid.points[sigma[a]]
  assignment::AssignmentResult assignment;
};

// Nearest rearrangement of the grid in the mean-square sense.
ProjectionResult project_to_s(const std::vector<Vec>& mapped, const PointCloud& grid);

// Potential from assignment duals: phi(M_a) = (|M_a|^2 - u_a) / 2, with the
// duals normalized by v[0] = 0. Requires the assignment to come from
// squared-distance costs against the mapped points.
PotentialSamples convex_potential(const std::vector<Vec>& mapped, const assignment::AssignmentResult& result);

// L1 residual of det(D^2 phi) - density over interior lattice nodes, using
// centered second differences. Sample locations must associate one-to-one
// with the nodes of a full tensor lattice (displacements under half a cell).
double monge_ampere_residual(const PotentialSamples& phi, const DensityHistogram& density);

}  // namespace permflow::polar
