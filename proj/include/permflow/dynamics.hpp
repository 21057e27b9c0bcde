#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "permflow/polar.hpp"
#include "permflow/vec.hpp"

namespace permflow::dynamics {

enum class VelocityField { zero, rigid_rotation, random_uniform, table };
enum class ReferenceFlow { none, rotation };

// How often the matching is re-solved: every step, every k-th step, or never
// after the initial state (every_k_steps == 0).
struct RefreshPolicy {
  long every_k_steps = 1;

  bool should_refresh(long step) const { return every_k_steps > 0 && step % every_k_steps == 0; }
};

struct ScenarioConfig {
  polar::Domain domain = polar::Domain::disk;
  int n_per_axis = 12;
  double epsilon = 0.0;  // <= 0: use the lattice spacing
  double dt = 0.0;       // <= 0: spring period / 100
  double t_final = 1.0;
  VelocityField field = VelocityField::zero;
  double omega = 3.14159265358979323846;  // rigid_rotation rate
  double amplitude = 0.0;                 // random_uniform half-width
  std::vector<Vec> velocity_table;        // for VelocityField::table
  RefreshPolicy refresh;
  std::uint64_t seed = 0;
  long output_every = 1;
  bool write_snapshots = true;
  ReferenceFlow reference = ReferenceFlow::none;

  double resolved_epsilon(const polar::PointCloud& grid) const;
  // dt as configured (or the auto default).
  double configured_dt(const polar::PointCloud& grid) const;
  // configured_dt snapped down so an integer number of steps lands on t_final.
  double resolved_dt(const polar::PointCloud& grid) const;
  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct ParticleState {
  std::vector<Vec> positions;
  std::vector<Vec> velocities;
  double time = 0.0;
  double epsilon = 0.0;
  std::vector<int> sigma;  // current matching, positions[a] <-> grid.points[sigma[a]]
  long step_count = 0;
  long switch_count = 0;  // cumulative matching changes

  int count() const { return static_cast<int>(positions.size()); }
};

struct HamiltonianSplit {
  double total = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
};

struct DiagnosticRecord {
  double time = 0.0;
  double hamiltonian = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
  long switches = 0;
  double deviation = 0.0;  // RMS distance to the reference flow; NaN when none
};

struct Snapshot {
  double time = 0.0;
  std::vector<Vec> positions;
  std::vector<Vec> velocities;
  std::vector<int> sigma;
};

struct EvolveResult {
  polar::PointCloud grid;
  ParticleState final_state;
  std::vector<Snapshot> snapshots;
  std::vector<DiagnosticRecord> diagnostics;
};

struct PressureSample {
  Vec location;  // particle position
  Vec gradient;  // (M - A_sigma) / eps^2, the force field with opposite sign
};

Vec velocity_at(const ScenarioConfig& config, const Vec& p, int index);

// Particles on the grid points with the configured velocity field; the
// identity matching is optimal there.
ParticleState init_state(const ScenarioConfig& config, const polar::PointCloud& grid);

// Kinetic plus minimal spring energy; the minimum is taken over matchings by
// a fresh solve, independent of state.sigma.
HamiltonianSplit hamiltonian(const ParticleState& state, const polar::PointCloud& grid);

// Re-solve the matching for the current positions; returns true when sigma
// changed. Bumps switch_count accordingly.
bool refresh_sigma(ParticleState& state, const polar::PointCloud& grid);

// One velocity-Verlet step of eps^2 M'' = -(M - A_sigma). The matching is
// re-solved before the step when the policy fires and then held fixed for
// both force evaluations, so each step is symplectic for the frozen
// quadratic potential. dt may be negative (time reversal).
ParticleState step_verlet(const ParticleState& state, const polar::PointCloud& grid, double dt,
                          const RefreshPolicy& policy);

EvolveResult evolve(const ScenarioConfig& config);

// Per-particle spring displacement over eps^2 at the current matching,
// sampled at the particle positions. state.sigma must be fresh.
std::vector<PressureSample> pressure_estimate(const ParticleState& state, const polar::PointCloud& grid);

// Reference rotation image of the grid at angle omega * t.
std::vector<Vec> rotation_reference(const polar::PointCloud& grid, double omega, double t);

// RMS distance between two equally sized clouds (1/N-weighted L2).
double rms_deviation(const std::vector<Vec>& a, const std::vector<Vec>& b);

}  // namespace permflow::dynamics
