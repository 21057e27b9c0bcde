#include "permflow/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "permflow/dynamics.hpp"
#include "permflow/io.hpp"
#include "permflow/polar.hpp"
#include "permflow/reference.hpp"
#include "permflow/vp1d.hpp"

namespace permflow::cli {

namespace {

namespace fs = std::filesystem;
constexpr double kPi = 3.14159265358979323846;

void say(bool quiet, const std::string& msg) {
  if (!quiet) std::printf("%s\n", msg.c_str());
}

int fail(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  return 2;
}

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

nlohmann::json artifact_entry(const std::string& path) {
  nlohmann::json j;
  j["path"] = fs::path(path).filename().string();
  j["bytes"] = static_cast<long long>(fs::file_size(path));
  j["fnv1a64"] = io::file_checksum_hex(path);
  return j;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
}

}  // namespace

int cmd_grid(const GridArgs& args) {
  try {
    const polar::PointCloud grid = polar::make_grid(polar::parse_domain(args.domain), args.n_per_axis);
    ensure_dir(args.out_dir);
    const std::string csv = join(args.out_dir, "grid.csv");
    const std::string meta = join(args.out_dir, "grid.json");
    io::write_grid_csv(csv, grid);
    io::write_grid_json(meta, grid);
    say(args.quiet, "wrote " + csv + " (" + std::to_string(grid.count()) + " points)");
    return 0;
  } catch (const std::exception& e) {
    return fail(e.what());
  }
}

int cmd_project(const ProjectArgs& args) {
  try {
    const polar::PointCloud grid = polar::make_grid(polar::parse_domain(args.domain), args.n_per_axis);
    const std::vector<Vec> mapped = io::read_points_csv(args.map_file, grid.dim);
    if (static_cast<int>(mapped.size()) != grid.count())
      return fail("map file has " + std::to_string(mapped.size()) + " rows but the grid has " +
                  std::to_string(grid.count()) + " points");

    const polar::ProjectionResult pr = polar::project_to_s(mapped, grid);
    const polar::PotentialSamples phi = polar::convex_potential(mapped, pr.assignment);
    const assignment::CostMatrix costs = assignment::squared_distance_costs(mapped, grid.points);
    const assignment::CertificateReport cert =
        assignment::verify_optimality(costs, pr.assignment, assignment::certificate_tol(costs));

    ensure_dir(args.out_dir);
    const std::string csv = join(args.out_dir, "projection.csv");
    io::write_projection_csv(csv, mapped, grid, pr.assignment, phi.phi);

    nlohmann::json j;
    j["total_cost"] = pr.assignment.total_cost;
    j["tol"] = cert.tol;
    j["bijective"] = cert.bijective;
    j["max_feasibility_violation"] = cert.max_feasibility_violation;
    j["max_slackness_residual"] = cert.max_slackness_residual;
    j["duality_gap"] = cert.duality_gap;
    j["min_two_cycle_margin"] = cert.min_two_cycle_margin;
    j["min_three_cycle_margin"] = cert.min_three_cycle_margin;
    j["all_pass"] = cert.all_pass;
    write_json(join(args.out_dir, "certificate.json"), j);

    say(args.quiet, "projection cost " + io::fmt17(pr.assignment.total_cost) + ", certificate " +
                        (cert.all_pass ? "all-pass" : "FAILED"));
    return cert.all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    return fail(e.what());
  }
}

int cmd_evolve(const EvolveArgs& args) {
  const auto t_start = std::chrono::steady_clock::now();
  io::ParsedScenario parsed;
  try {
    parsed = io::parse_scenario_file(args.config_path);
    dynamics::ScenarioConfig& cfg = parsed.config;
    if (!parsed.velocity_file.empty()) {
      const polar::PointCloud grid = polar::make_grid(cfg.domain, cfg.n_per_axis);
      cfg.velocity_table = io::read_points_csv(parsed.velocity_file, grid.dim);
    }
    cfg.validate();
  } catch (const std::exception& e) {
    return fail(e.what());
  }

  try {
    const dynamics::ScenarioConfig& cfg = parsed.config;
    dynamics::EvolveResult run = dynamics::evolve(cfg);
    ensure_dir(args.out_dir);

    std::vector<std::string> artifacts;
    {
      const std::string p = join(args.out_dir, "grid.csv");
      io::write_grid_csv(p, run.grid);
      artifacts.push_back(p);
    }
    {
      const std::string p = join(args.out_dir, "diagnostics.csv");
      io::write_diagnostics_csv(p, run.diagnostics);
      artifacts.push_back(p);
    }
    if (cfg.write_snapshots) {
      for (size_t k = 0; k < run.snapshots.size(); ++k) {
        char name[64];
        std::snprintf(name, sizeof(name), "snapshot_%05zu.csv", k);
        const std::string p = join(args.out_dir, name);
        io::write_snapshot_csv(p, run.snapshots[k], run.grid);
        artifacts.push_back(p);
      }
    }
    if (cfg.reference == dynamics::ReferenceFlow::rotation) {
      const std::vector<Vec> ref =
          dynamics::rotation_reference(run.grid, cfg.omega, run.final_state.time);
      const std::string p = join(args.out_dir, "final_deviation.csv");
      io::write_deviation_csv(p, run.final_state.positions, ref);
      artifacts.push_back(p);
      say(args.quiet,
          "final deviation (rms) " + io::fmt17(dynamics::rms_deviation(run.final_state.positions, ref)));
    }

    nlohmann::json manifest;
    manifest["version"] = io::kVersion;
    nlohmann::json cfg_echo = nlohmann::json::object();
    for (const auto& [k, v] : parsed.echo) cfg_echo[k] = v;
    manifest["config"] = cfg_echo;
    manifest["resolved"] = {{"epsilon", cfg.resolved_epsilon(run.grid)},
                            {"dt", cfg.resolved_dt(run.grid)},
                            {"particles", run.grid.count()},
                            {"steps", run.final_state.step_count},
                            {"switches", run.final_state.switch_count}};
    manifest["artifacts"] = nlohmann::json::array();
    for (const std::string& p : artifacts) manifest["artifacts"].push_back(artifact_entry(p));
    manifest["wall_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t_start).count();
    write_json(join(args.out_dir, "manifest.json"), manifest);

    say(args.quiet, "evolved to t=" + io::fmt17(run.final_state.time) + " (" +
                        std::to_string(run.final_state.step_count) + " steps, " +
                        std::to_string(run.final_state.switch_count) + " matching changes)");
    return 0;
  } catch (const std::exception& e) {
    return fail(e.what());
  }
}

int cmd_verify_reference(const VerifyArgs& args) {
  try {
    nlohmann::json report;
    bool pass = false;

    if (args.which == "generalized") {
      std::vector<reference::GeneralizedSample> samples = reference::generalized_quadrature(args.n_z, args.n_angles);
      for (auto& g : samples) g.radius_scale = args.corrupt_radius;
      const reference::GeneralizedReport rep = reference::verify_generalized_solution(samples, args.dt_fd, args.tol);
      report["check"] = "generalized";
      report["samples"] = samples.size();
      report["max_endpoint_residual"] = rep.max_endpoint_residual;
      report["max_acceleration_residual"] = rep.max_acceleration_residual;
      report["max_elevation_residual"] = rep.max_elevation_residual;
      report["max_circle_residual"] = rep.max_circle_residual;
      report["pass"] = rep.all_pass;
      pass = rep.all_pass;
    } else if (args.which == "rotation") {
      // closed-form sanity of the two rotation solutions and their pressure
      double max_end = 0.0, max_grad = 0.0;
      const polar::PointCloud grid = polar::make_grid(polar::Domain::disk, args.n_z);
      for (const Vec& z : grid.points) {
        for (int orientation : {1, -1}) {
          const Vec end = reference::rotation_flow(1.0, z, orientation);
          max_end = std::max(max_end, norm(end + z));
        }
        const Vec g = reference::rotation_pressure_gradient(z);
        max_grad = std::max(max_grad, std::abs(norm(g) - kPi * kPi * norm(z)));
      }
      report["check"] = "rotation";
      report["max_endpoint_residual"] = max_end;
      report["max_pressure_gradient_residual"] = max_grad;
      pass = max_end < 1e-12 && max_grad < 1e-9;
      report["pass"] = pass;
    } else if (args.which == "action") {
      const polar::PointCloud grid = polar::make_grid(polar::Domain::disk, args.n_z);
      std::vector<double> w(grid.count(), 1.0 / grid.count());
      const double classical =
          reference::action_of_discrete_path(reference::classical_rotation_path(grid, args.frames, 1), w);
      const double generalized =
          reference::generalized_action(reference::generalized_quadrature(args.n_z, args.n_angles), args.frames);
      const double agreement = std::abs(generalized - classical) / classical;
      report["check"] = "action";
      report["classical"] = classical;
      report["generalized"] = generalized;
      report["relative_agreement"] = agreement;
      report["quarter_pi_squared"] = kPi * kPi / 4.0;
      pass = agreement < 0.02;
      report["pass"] = pass;
    } else {
      return fail("unknown verifier '" + args.which + "' (rotation|generalized|action)");
    }

    const std::string text = report.dump(2);
    if (!args.out_file.empty()) {
      std::ofstream out(args.out_file, std::ios::binary);
      out << text << '\n';
    }
    say(args.quiet, text);
    return pass ? 0 : 1;
  } catch (const std::exception& e) {
    return fail(e.what());
  }
}

int cmd_vp1d(const Vp1dArgs& args) {
  try {
    if (args.subcommand == "period") {
      const double dt = args.dt > 0.0 ? args.dt : 2.0 * kPi * args.epsilon / 200.0;
      const vp1d::PeriodMeasurement m =
          vp1d::cold_oscillation_period(args.amplitude, args.epsilon, dt, args.n_particles);
      const double expected = 2.0 * kPi * args.epsilon;
      const double rel = std::abs(m.period - expected) / expected;
      say(args.quiet, "measured period " + io::fmt17(m.period) + ", expected " + io::fmt17(expected) +
                          ", relative error " + io::fmt17(rel));
      if (m.reordered) say(args.quiet, "warning: particle ordering changed; period not guaranteed");

      if (!args.histogram_dir.empty()) {
        // snapshot of the cold beam a quarter period in, where the initial
        // displacement has fully converted to velocity
        const int n = args.n_particles;
        std::vector<double> background(n), x(n), v(n, 0.0);
        for (int k = 0; k < n; ++k) {
          background[k] = (k + 0.5) / n;
          x[k] = background[k] + args.amplitude * std::sin(2.0 * kPi * background[k]);
        }
        std::vector<double> f = vp1d::sheet_force(x, background, args.epsilon);
        double t = 0.0;
        while (t < 0.5 * kPi * args.epsilon - 0.5 * dt) {
          for (int k = 0; k < n; ++k) x[k] += dt * v[k] + 0.5 * dt * dt * f[k];
          const std::vector<double> f1 = vp1d::sheet_force(x, background, args.epsilon);
          for (int k = 0; k < n; ++k) v[k] += 0.5 * dt * (f[k] + f1[k]);
          f = f1;
          t += dt;
        }
        vp1d::PhaseSamples samples;
        samples.x = x;
        samples.xi = v;
        const double span = 3.0 * args.amplitude / args.epsilon;
        const vp1d::PhaseHistogram hist = vp1d::phase_histogram(samples, 32, 41, -span, span);
        ensure_dir(args.histogram_dir);
        io::write_phase_histogram_csv(join(args.histogram_dir, "phase_histogram.csv"), hist);
        io::write_phase_histogram_json(join(args.histogram_dir, "phase_histogram.json"), hist);
        say(args.quiet, "wrote " + join(args.histogram_dir, "phase_histogram.csv"));
      }
      return (!m.reordered && rel < 0.01) ? 0 : 1;
    }
    if (args.subcommand == "equivalence") {
      std::mt19937_64 rng(args.seed);
      std::uniform_real_distribution<double> dist(0.0, 1.0);
      std::vector<double> background(args.n_particles);
      for (int k = 0; k < args.n_particles; ++k) background[k] = (k + 0.5) / args.n_particles;
      double max_disc = 0.0;
      for (int rep = 0; rep < args.n_states; ++rep) {
        std::vector<double> x(args.n_particles);
        for (double& v : x) v = dist(rng);
        const std::vector<double> fs = vp1d::sheet_force(x, background, args.epsilon);
        std::vector<Vec> xs, bs;
        for (double v : x) xs.push_back(Vec(v));
        for (double v : background) bs.push_back(Vec(v));
        const std::vector<int> sigma =
            assignment::solve_assignment_sigma(assignment::squared_distance_costs(xs, bs));
        const double eps2 = args.epsilon * args.epsilon;
        for (int a = 0; a < args.n_particles; ++a)
          max_disc = std::max(max_disc, std::abs(fs[a] - (background[sigma[a]] - x[a]) / eps2));
      }
      say(args.quiet, "max force discrepancy over " + std::to_string(args.n_states) + " states: " +
                          io::fmt17(max_disc));
      return max_disc <= 1e-12 ? 0 : 1;
    }
    return fail("unknown vp1d subcommand '" + args.subcommand + "' (period|equivalence)");
  } catch (const std::exception& e) {
    return fail(e.what());
  }
}

}  // namespace permflow::cli
