#include "permflow/vp1d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace permflow::vp1d {

namespace {

constexpr double kPi = 3.14159265358979323846;

// rank[a] = position of particle a in the sorted order (ties by index).
std::vector<int> ranks(const std::vector<double>& x) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&x](int i, int j) { return x[i] < x[j] || (x[i] == x[j] && i < j); });
  std::vector<int> rank(x.size());
  for (size_t k = 0; k < order.size(); ++k) rank[order[k]] = static_cast<int>(k);
  return rank;
}

}  // namespace

std::vector<double> sheet_force(const std::vector<double>& x, const std::vector<double>& background, double epsilon) {
  if (x.size() != background.size()) throw std::invalid_argument("sheet_force: size mismatch");
  if (x.empty()) throw std::invalid_argument("sheet_force: empty input");
  if (!(epsilon > 0.0)) throw std::invalid_argument("sheet_force: epsilon must be > 0");
  for (size_t k = 0; k + 1 < background.size(); ++k) {
    if (!(background[k] < background[k + 1]))
      throw std::invalid_argument("sheet_force: background must be sorted and distinct");
  }
  const std::vector<int> rank = ranks(x);
  const double eps2 = epsilon * epsilon;
  std::vector<double> f(x.size());
  // Same arithmetic as the d-dimensional spring force, so the two routes
  // agree bitwise, not just within tolerance.
  for (size_t a = 0; a < x.size(); ++a) f[a] = (background[rank[a]] - x[a]) / eps2;
  return f;
}

PeriodMeasurement cold_oscillation_period(double amplitude, double epsilon, double dt, int n_particles) {
  if (n_particles < 2) throw std::invalid_argument("cold_oscillation_period: need at least two particles");
  if (!(dt > 0.0) || !(epsilon > 0.0)) throw std::invalid_argument("cold_oscillation_period: dt and epsilon must be > 0");

  std::vector<double> background(n_particles), mode(n_particles);
  for (int k = 0; k < n_particles; ++k) {
    background[k] = (k + 0.5) / n_particles;
    mode[k] = std::sin(2.0 * kPi * background[k]);
  }
  double mode_norm2 = 0.0;
  for (double m : mode) mode_norm2 += m * m;

  std::vector<double> x(n_particles), v(n_particles, 0.0);
  for (int k = 0; k < n_particles; ++k) x[k] = background[k] + amplitude * mode[k];

  PeriodMeasurement out;
  auto projection = [&]() {
    double p = 0.0;
    for (int k = 0; k < n_particles; ++k) p += (x[k] - background[k]) * mode[k];
    return p / mode_norm2;
  };
  auto ordered = [&]() {
    for (int k = 0; k + 1 < n_particles; ++k)
      if (x[k] >= x[k + 1]) return false;
    return true;
  };

  std::vector<double> crossings;
  double t = 0.0;
  double prev_p = projection();
  std::vector<double> f = sheet_force(x, background, epsilon);
  const long max_steps = static_cast<long>(std::ceil(3.0 * 2.0 * kPi * epsilon / dt)) + 4;
  for (long step = 0; step < max_steps && crossings.size() < 3; ++step) {
    for (int k = 0; k < n_particles; ++k) x[k] += dt * v[k] + 0.5 * dt * dt * f[k];
    const std::vector<double> f1 = sheet_force(x, background, epsilon);
    for (int k = 0; k < n_particles; ++k) v[k] += 0.5 * dt * (f[k] + f1[k]);
    f = f1;
    t += dt;
    ++out.steps;
    if (!ordered()) out.reordered = true;

    const double p = projection();
    if ((prev_p > 0.0 && p <= 0.0) || (prev_p < 0.0 && p >= 0.0)) {
      const double frac = prev_p / (prev_p - p);
      crossings.push_back(t - dt + frac * dt);
    }
    prev_p = p;
  }
  if (crossings.size() >= 3) out.period = crossings[2] - crossings[0];
  return out;
}

PhaseHistogram phase_histogram(const PhaseSamples& samples, int x_bins, int xi_bins, double xi_lo, double xi_hi) {
  if (x_bins < 1 || xi_bins < 1) throw std::invalid_argument("phase_histogram: bins must be >= 1");
  if (!(xi_lo < xi_hi)) throw std::invalid_argument("phase_histogram: empty velocity range");
  if (samples.x.size() != samples.xi.size()) throw std::invalid_argument("phase_histogram: x/xi size mismatch");
  if (samples.x.empty()) throw std::invalid_argument("phase_histogram: no samples");

  PhaseHistogram h;
  h.x_bins = x_bins;
  h.xi_bins = xi_bins;
  h.xi_lo = xi_lo;
  h.xi_hi = xi_hi;
  h.mass.assign(static_cast<size_t>(x_bins) * xi_bins, 0.0);

  long inside = 0, clipped = 0;
  for (size_t a = 0; a < samples.x.size(); ++a) {
    const double fx = samples.x[a];
    const double fxi = (samples.xi[a] - xi_lo) / (xi_hi - xi_lo);
    if (fx < 0.0 || fx > 1.0 || fxi < 0.0 || fxi > 1.0) {
      ++clipped;
      continue;
    }
    const int ix = std::min(x_bins - 1, static_cast<int>(fx * x_bins));
    const int ixi = std::min(xi_bins - 1, static_cast<int>(fxi * xi_bins));
    h.mass[static_cast<size_t>(ixi) * x_bins + ix] += 1.0;
    ++inside;
  }
  const double w = 1.0 / static_cast<double>(samples.x.size());
  for (double& m : h.mass) m *= w;
  h.inside_mass = inside * w;
  h.clipped_mass = clipped * w;
  return h;
}

}  // namespace permflow::vp1d
