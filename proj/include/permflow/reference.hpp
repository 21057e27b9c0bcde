#pragma once

#include <vector>

#include "permflow/polar.hpp"
#include "permflow/vec.hpp"

namespace permflow::reference {

// Time-sampled path of an N-particle cloud: frames[k][a] at times[k].
struct DiscretePath {
  std::vector<double> times;
  std::vector<std::vector<Vec>> frames;
};

// One splitting trajectory on the cylinder: the horizontal start z spreads
// along a circle of radius sqrt(1-|z|^2) sin(pi t) centered at z cos(pi t),
// at fixed elevation s; omega is the unit direction selecting the point on
// that circle. radius_scale != 1 deliberately breaks the geometry (test hook).
struct GeneralizedSample {
  Vec z;             // horizontal start, |z| <= 1 (x,y components)
  double s = 0.0;    // elevation in [0,1]
  Vec omega;         // unit horizontal direction
  double radius_scale = 1.0;

  Vec position(double t) const;       // horizontal part; elevation stays s
  Vec position_3d(double t) const;    // with the constant elevation attached
};

struct GeneralizedReport {
  double max_endpoint_residual = 0.0;      // |X(1) + z|
  double max_acceleration_residual = 0.0;  // |X''_fd + pi^2 X|
  double max_elevation_residual = 0.0;     // |s(t) - s(0)|
  double max_circle_residual = 0.0;        // | |X - z cos(pi t)| - radius(t) |
  double endpoint_tol = 0.0;
  double acceleration_tol = 0.0;
  bool endpoint_pass = false;
  bool acceleration_pass = false;
  bool elevation_pass = false;
  bool circle_pass = false;
  bool all_pass = false;
};

// z e^{+/- i pi t} in the horizontal plane; vertical component carried along.
Vec rotation_flow(double t, const Vec& z, int orientation);

// Gradient of pi^2 |z|^2 / 2: pi^2 x horizontally, zero vertically.
Vec rotation_pressure_gradient(const Vec& x);

GeneralizedSample generalized_cylinder_sample(const Vec& z, double s, const Vec& omega);

GeneralizedReport verify_generalized_solution(const std::vector<GeneralizedSample>& samples, double dt_fd,
                                              double tol);

// Quadrature samples: retained-disk z grid crossed with uniform unit angles.
std::vector<GeneralizedSample> generalized_quadrature(int n_z_per_axis, int n_angles);

// Midpoint-rule kinetic action of a sampled path with per-particle weights.
double action_of_discrete_path(const DiscretePath& path, const std::vector<double>& weights);

// Disk rotation path sampled on the retained-cell grid, n_frames intervals.
DiscretePath classical_rotation_path(const polar::PointCloud& disk_grid, int n_frames, int orientation);

// Action of the splitting solution by the same midpoint quadrature, averaged
// over the (z, omega) samples with uniform weights.
double generalized_action(const std::vector<GeneralizedSample>& samples, int n_frames);

// h(x1,x2,x3) = (H(x1,x2), x3): apply a 2D map table horizontally on every
// layer, identity vertically.
struct MapTable {
  std::vector<Vec> domain_points;
  std::vector<Vec> image_points;
};
MapTable lift_2d_map(const MapTable& horizontal, const std::vector<double>& layer_elevations);

}  // namespace permflow::reference
