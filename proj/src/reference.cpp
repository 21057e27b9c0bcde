#include "permflow/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace permflow::reference {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Vec rotation_flow(double t, const Vec& z, int orientation) {
  if (orientation != 1 && orientation != -1) throw std::invalid_argument("rotation_flow: orientation must be +1 or -1");
  const double a = orientation * kPi * t;
  const double c = std::cos(a), s = std::sin(a);
  return Vec(c * z.x - s * z.y, s * z.x + c * z.y, z.z);
}

Vec rotation_pressure_gradient(const Vec& x) { return Vec(kPi * kPi * x.x, kPi * kPi * x.y, 0.0); }

Vec GeneralizedSample::position(double t) const {
  const double c = std::cos(kPi * t), si = std::sin(kPi * t);
  const double radius = radius_scale * std::sqrt(std::max(0.0, 1.0 - (z.x * z.x + z.y * z.y))) * si;
  return Vec(z.x * c + radius * omega.x, z.y * c + radius * omega.y, 0.0);
}

Vec GeneralizedSample::position_3d(double t) const {
  Vec p = position(t);
  p.z = s;
  return p;
}

GeneralizedSample generalized_cylinder_sample(const Vec& z, double s, const Vec& omega) {
  if (z.x * z.x + z.y * z.y > 1.0 + 1e-12) throw std::domain_error("generalized_cylinder_sample: |z| > 1");
  if (std::abs(omega.x * omega.x + omega.y * omega.y - 1.0) > 1e-9)
    throw std::domain_error("generalized_cylinder_sample: omega must be a unit vector");
  GeneralizedSample g;
  g.z = Vec(z.x, z.y);
  g.s = s;
  g.omega = Vec(omega.x, omega.y);
  return g;
}

GeneralizedReport verify_generalized_solution(const std::vector<GeneralizedSample>& samples, double dt_fd,
                                              double tol) {
  if (samples.empty()) throw std::invalid_argument("verify_generalized_solution: no samples");
  if (!(dt_fd > 0.0) || dt_fd > 0.25) throw std::invalid_argument("verify_generalized_solution: bad dt_fd");
  GeneralizedReport rep;
  rep.endpoint_tol = 1e-12;
  rep.acceleration_tol = tol;

  for (const GeneralizedSample& g : samples) {
    const Vec end = g.position(1.0);
    rep.max_endpoint_residual = std::max(rep.max_endpoint_residual, norm(end + Vec(g.z.x, g.z.y)));
    rep.max_elevation_residual =
        std::max(rep.max_elevation_residual, std::abs(g.position_3d(0.5).z - g.position_3d(0.0).z));

    const double zn = std::sqrt(g.z.x * g.z.x + g.z.y * g.z.y);
    for (int j = 1; j < 16; ++j) {
      const double t = j / 16.0;
      const Vec xm = g.position(t - dt_fd), x0 = g.position(t), xp = g.position(t + dt_fd);
      const Vec acc = (xp - 2.0 * x0 + xm) * (1.0 / (dt_fd * dt_fd));
      rep.max_acceleration_residual = std::max(rep.max_acceleration_residual, norm(acc + kPi * kPi * x0));

      const double c = std::cos(kPi * t);
      const Vec center(g.z.x * c, g.z.y * c);
      const double expected_radius = std::sqrt(std::max(0.0, 1.0 - zn * zn)) * std::sin(kPi * t);
      rep.max_circle_residual = std::max(rep.max_circle_residual, std::abs(norm(x0 - center) - expected_radius));
    }
  }

  rep.endpoint_pass = rep.max_endpoint_residual <= rep.endpoint_tol;
  rep.acceleration_pass = rep.max_acceleration_residual <= rep.acceleration_tol;
  rep.elevation_pass = rep.max_elevation_residual == 0.0;
  rep.circle_pass = rep.max_circle_residual <= 1e-12;
  rep.all_pass = rep.endpoint_pass && rep.acceleration_pass && rep.elevation_pass && rep.circle_pass;
  return rep;
}

std::vector<GeneralizedSample> generalized_quadrature(int n_z_per_axis, int n_angles) {
  const polar::PointCloud zgrid = polar::make_grid(polar::Domain::disk, n_z_per_axis);
  std::vector<GeneralizedSample> samples;
  samples.reserve(static_cast<size_t>(zgrid.count()) * n_angles);
  for (const Vec& z : zgrid.points) {
    for (int j = 0; j < n_angles; ++j) {
      const double a = 2.0 * kPi * j / n_angles;
      samples.push_back(generalized_cylinder_sample(Vec(z.x, z.y), 0.0, Vec(std::cos(a), std::sin(a))));
    }
  }
  return samples;
}

double action_of_discrete_path(const DiscretePath& path, const std::vector<double>& weights) {
  if (path.times.size() < 2) throw std::invalid_argument("action_of_discrete_path: need at least two frames");
  if (path.times.size() != path.frames.size())
    throw std::invalid_argument("action_of_discrete_path: times/frames mismatch");
  const size_t n = path.frames.front().size();
  if (weights.size() != n) throw std::invalid_argument("action_of_discrete_path: weight count mismatch");

  double action = 0.0;
  for (size_t k = 0; k + 1 < path.times.size(); ++k) {
    const double dt = path.times[k + 1] - path.times[k];
    if (!(dt > 0.0)) throw std::invalid_argument("action_of_discrete_path: times must be strictly increasing");
    if (path.frames[k].size() != n || path.frames[k + 1].size() != n)
      throw std::invalid_argument("action_of_discrete_path: frame size varies");
    double speed2 = 0.0;
    for (size_t a = 0; a < n; ++a) speed2 += weights[a] * dist2(path.frames[k + 1][a], path.frames[k][a]);
    action += 0.5 * speed2 / dt;
  }
  return action;
}

DiscretePath classical_rotation_path(const polar::PointCloud& disk_grid, int n_frames, int orientation) {
  DiscretePath path;
  path.times.reserve(n_frames + 1);
  path.frames.reserve(n_frames + 1);
  for (int k = 0; k <= n_frames; ++k) {
    const double t = static_cast<double>(k) / n_frames;
    path.times.push_back(t);
    std::vector<Vec> frame;
    frame.reserve(disk_grid.points.size());
    for (const Vec& z : disk_grid.points) frame.push_back(rotation_flow(t, z, orientation));
    path.frames.push_back(std::move(frame));
  }
  return path;
}

double generalized_action(const std::vector<GeneralizedSample>& samples, int n_frames) {
  if (samples.empty()) throw std::invalid_argument("generalized_action: no samples");
  double total = 0.0;
  for (const GeneralizedSample& g : samples) {
    double action = 0.0;
    Vec prev = g.position(0.0);
    for (int k = 1; k <= n_frames; ++k) {
      const Vec cur = g.position(static_cast<double>(k) / n_frames);
      action += 0.5 * dist2(cur, prev) * n_frames;  // |dx|^2 / dt with dt = 1/n_frames
      prev = cur;
    }
    total += action;
  }
  return total / static_cast<double>(samples.size());
}

MapTable lift_2d_map(const MapTable& horizontal, const std::vector<double>& layer_elevations) {
  if (horizontal.domain_points.size() != horizontal.image_points.size())
    throw std::invalid_argument("lift_2d_map: domain/image size mismatch");
  if (horizontal.domain_points.empty() || layer_elevations.empty())
    throw std::invalid_argument("lift_2d_map: empty table or layer list");
  MapTable lifted;
  lifted.domain_points.reserve(horizontal.domain_points.size() * layer_elevations.size());
  lifted.image_points.reserve(lifted.domain_points.capacity());
  for (double s : layer_elevations) {
    for (size_t i = 0; i < horizontal.domain_points.size(); ++i) {
      Vec d = horizontal.domain_points[i];
      Vec m = horizontal.image_points[i];
      d.z = s;
      m.z = s;
      lifted.domain_points.push_back(d);
      lifted.image_points.push_back(m);
    }
  }
  return lifted;
}

}  // namespace permflow::reference
