#include "permflow/dynamics.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace permflow::dynamics {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

assignment::CostMatrix position_costs(const std::vector<Vec>& positions, const polar::PointCloud& grid) {
  return assignment::squared_distance_costs(positions, grid.points);
}

std::vector<Vec> forces(const ParticleState& state, const polar::PointCloud& grid) {
  // Component-wise (A - M) / eps^2; the 1D sheet model reproduces this bitwise.
  const double eps2 = state.epsilon * state.epsilon;
  std::vector<Vec> f(state.positions.size());
  for (int a = 0; a < state.count(); ++a) {
    const Vec& anchor = grid.points[state.sigma[a]];
    const Vec& pos = state.positions[a];
    f[a] = Vec((anchor.x - pos.x) / eps2, (anchor.y - pos.y) / eps2, (anchor.z - pos.z) / eps2);
  }
  return f;
}

}  // namespace

double ScenarioConfig::resolved_epsilon(const polar::PointCloud& grid) const {
  return epsilon > 0.0 ? epsilon : grid.spacing();
}

double ScenarioConfig::configured_dt(const polar::PointCloud& grid) const {
  return dt > 0.0 ? dt : kTwoPi * resolved_epsilon(grid) / 100.0;
}

double ScenarioConfig::resolved_dt(const polar::PointCloud& grid) const {
  const double raw = configured_dt(grid);
  if (t_final <= 0.0) return raw;
  // snap down so an integer number of steps lands exactly on t_final
  const long n_steps = static_cast<long>(std::ceil(t_final / raw - 1e-9));
  return t_final / static_cast<double>(n_steps);
}

void ScenarioConfig::validate() const {
  if (n_per_axis < 2) throw std::invalid_argument("n_per_axis: must be >= 2");
  if (t_final < 0.0) throw std::invalid_argument("t_final: must be >= 0");
  if (output_every < 1) throw std::invalid_argument("output_every: must be >= 1");
  if (refresh.every_k_steps < 0) throw std::invalid_argument("refresh_every: must be >= 0 (0 = never)");
  if (field == VelocityField::random_uniform && amplitude < 0.0)
    throw std::invalid_argument("amplitude: must be >= 0");
  const polar::PointCloud grid = polar::make_grid(domain, n_per_axis);
  const double eps = resolved_epsilon(grid);
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("epsilon: must be finite and > 0");
  const double step = configured_dt(grid);
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("dt: must be finite and > 0");
  if (step > 0.1 * kTwoPi * eps)
    throw std::invalid_argument("dt: must resolve the spring period (dt <= 0.1 * 2*pi*epsilon)");
  if (field == VelocityField::table && velocity_table.size() != static_cast<size_t>(grid.count()))
    throw std::invalid_argument("velocity_table: needs one row per grid point");
}

Vec velocity_at(const ScenarioConfig& config, const Vec& p, int index) {
  switch (config.field) {
    case VelocityField::zero: return Vec();
    case VelocityField::rigid_rotation: return Vec(-config.omega * p.y, config.omega * p.x);
    case VelocityField::table: return config.velocity_table[index];
    case VelocityField::random_uniform: return Vec();  // filled in bulk by init_state
  }
  return Vec();
}

ParticleState init_state(const ScenarioConfig& config, const polar::PointCloud& grid) {
  ParticleState s;
  s.positions = grid.points;
  s.epsilon = config.resolved_epsilon(grid);
  s.time = 0.0;
  s.velocities.resize(grid.count());
  if (config.field == VelocityField::random_uniform) {
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> dist(-config.amplitude, config.amplitude);
    for (int a = 0; a < grid.count(); ++a) {
      const double vx = dist(rng);
      const double vy = grid.dim >= 2 ? dist(rng) : 0.0;
      const double vz = grid.dim >= 3 ? dist(rng) : 0.0;
      s.velocities[a] = Vec(vx, vy, vz);
    }
  } else {
    for (int a = 0; a < grid.count(); ++a) s.velocities[a] = velocity_at(config, grid.points[a], a);
  }
  // M coincides with the grid, so the identity matching has zero cost.
  s.sigma.resize(grid.count());
  for (int a = 0; a < grid.count(); ++a) s.sigma[a] = a;
  return s;
}

HamiltonianSplit hamiltonian(const ParticleState& state, const polar::PointCloud& grid) {
  HamiltonianSplit h;
  for (const Vec& v : state.velocities) h.kinetic += 0.5 * norm2(v);
  double cost = 0.0;
  assignment::solve_assignment_sigma(position_costs(state.positions, grid), &cost);
  h.potential = cost / (2.0 * state.epsilon * state.epsilon);
  h.total = h.kinetic + h.potential;
  return h;
}

bool refresh_sigma(ParticleState& state, const polar::PointCloud& grid) {
  std::vector<int> fresh = assignment::solve_assignment_sigma(position_costs(state.positions, grid));
  if (fresh == state.sigma) return false;
  state.sigma = std::move(fresh);
  ++state.switch_count;
  return true;
}

ParticleState step_verlet(const ParticleState& state, const polar::PointCloud& grid, double dt,
                          const RefreshPolicy& policy) {
  if (dt == 0.0 || !std::isfinite(dt)) throw std::invalid_argument("step_verlet: dt must be finite and nonzero");
  ParticleState next = state;
  if (policy.should_refresh(next.step_count)) refresh_sigma(next, grid);

  const std::vector<Vec> f0 = forces(next, grid);
  for (int a = 0; a < next.count(); ++a)
    next.positions[a] += dt * next.velocities[a] + (0.5 * dt * dt) * f0[a];
  const std::vector<Vec> f1 = forces(next, grid);  // same sigma: frozen quadratic substep
  for (int a = 0; a < next.count(); ++a) next.velocities[a] += (0.5 * dt) * (f0[a] + f1[a]);

  next.time = state.time + dt;
  next.step_count = state.step_count + 1;
  return next;
}

std::vector<Vec> rotation_reference(const polar::PointCloud& grid, double omega, double t) {
  const double c = std::cos(omega * t), s = std::sin(omega * t);
  std::vector<Vec> out;
  out.reserve(grid.points.size());
  for (const Vec& p : grid.points) out.push_back(Vec(c * p.x - s * p.y, s * p.x + c * p.y, p.z));
  return out;
}

double rms_deviation(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("rms_deviation: size mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += dist2(a[i], b[i]);
  return std::sqrt(s / static_cast<double>(a.size()));
}

EvolveResult evolve(const ScenarioConfig& config) {
  config.validate();
  EvolveResult out;
  out.grid = polar::make_grid(config.domain, config.n_per_axis);
  const double dt = config.resolved_dt(out.grid);
  const long n_steps = config.t_final > 0.0 ? std::lround(config.t_final / dt) : 0;
  // resolved_dt snapped dt so that n_steps * dt == t_final up to rounding

  ParticleState state = init_state(config, out.grid);

  auto record = [&](const ParticleState& s) {
    DiagnosticRecord rec;
    rec.time = s.time;
    const HamiltonianSplit h = hamiltonian(s, out.grid);
    rec.hamiltonian = h.total;
    rec.kinetic = h.kinetic;
    rec.potential = h.potential;
    rec.switches = s.switch_count;
    if (config.reference == ReferenceFlow::rotation)
      rec.deviation = rms_deviation(s.positions, rotation_reference(out.grid, config.omega, s.time));
    else
      rec.deviation = std::numeric_limits<double>::quiet_NaN();
    out.diagnostics.push_back(rec);
    out.snapshots.push_back(Snapshot{s.time, s.positions, s.velocities, s.sigma});
  };

  record(state);
  for (long k = 0; k < n_steps; ++k) {
    state = step_verlet(state, out.grid, dt, config.refresh);
    if ((k + 1) % config.output_every == 0 || k + 1 == n_steps) record(state);
  }
  out.final_state = std::move(state);
  return out;
}

std::vector<PressureSample> pressure_estimate(const ParticleState& state, const polar::PointCloud& grid) {
  const double eps2 = state.epsilon * state.epsilon;
  std::vector<PressureSample> samples;
  samples.reserve(state.positions.size());
  for (int a = 0; a < state.count(); ++a) {
    const Vec& anchor = grid.points[state.sigma[a]];
    const Vec& pos = state.positions[a];
    samples.push_back(
        {pos, Vec((pos.x - anchor.x) / eps2, (pos.y - anchor.y) / eps2, (pos.z - anchor.z) / eps2)});
  }
  return samples;
}

}  // namespace permflow::dynamics
