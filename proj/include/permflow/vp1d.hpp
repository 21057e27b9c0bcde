#pragma once

#include <vector>

#include "permflow/vec.hpp"

namespace permflow::vp1d {

// Equal-weight phase-space samples of the 1D sheet model.
struct PhaseSamples {
  std::vector<double> x;   // positions in [0,1]
  std::vector<double> xi;  // velocities

  int count() const { return static_cast<int>(x.size()); }
  double weight() const { return 1.0 / count(); }
};

// Force on each particle: -(x_a - background_rank(a)) / eps^2, pairing the
// k-th smallest particle with the k-th background point. Identical to the
// assignment-based force with squared-distance costs in one dimension.
std::vector<double> sheet_force(const std::vector<double>& x, const std::vector<double>& background, double epsilon);

struct PeriodMeasurement {
  double period = 0.0;
  bool reordered = false;  // some pair of particles crossed during the run
  long steps = 0;
};

// Cold-beam oscillation: particles at background + amplitude*sin(2 pi b),
// integrated with Verlet against the sheet force; period from the zero
// crossings of the displacement-mode projection (which evolves as cos(t/eps)
// while the ordering is preserved). Expected period: 2 pi eps.
PeriodMeasurement cold_oscillation_period(double amplitude, double epsilon, double dt, int n_particles = 64);

struct PhaseHistogram {
  int x_bins = 0;
  int xi_bins = 0;
  double xi_lo = 0.0, xi_hi = 0.0;
  std::vector<double> mass;  // row-major [xi_bin][x_bin], normalized by sample count
  double inside_mass = 0.0;
  double clipped_mass = 0.0;

  double& at(int ix, int ixi) { return mass[static_cast<size_t>(ixi) * x_bins + ix]; }
  double at(int ix, int ixi) const { return mass[static_cast<size_t>(ixi) * x_bins + ix]; }
};

// Histogram of (x, xi) over [0,1] x [xi_lo, xi_hi]; samples outside the
// window are excluded and accounted in clipped_mass.
PhaseHistogram phase_histogram(const PhaseSamples& samples, int x_bins, int xi_bins, double xi_lo, double xi_hi);

}  // namespace permflow::vp1d
