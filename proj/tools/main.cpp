#include <string>

#include "CLI11.hpp"
#include "permflow/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"permflow: assignment-coupled particle flows on measure-preserving rearrangements"};
  app.require_subcommand(1);

  permflow::cli::GridArgs grid_args;
  CLI::App* grid = app.add_subcommand("grid", "write the lattice point cloud for a domain");
  grid->add_option("--domain", grid_args.domain, "interval|square|cube|disk|cylinder");
  grid->add_option("--n", grid_args.n_per_axis, "cells per axis")->required();
  grid->add_option("--out", grid_args.out_dir, "output directory");
  grid->add_flag("--quiet", grid_args.quiet, "suppress chatter");

  permflow::cli::ProjectArgs project_args;
  CLI::App* project = app.add_subcommand("project", "project a map file onto the rearrangements of the grid");
  project->add_option("--map", project_args.map_file, "CSV of mapped points")->required();
  project->add_option("--domain", project_args.domain, "interval|square|cube|disk|cylinder");
  project->add_option("--n", project_args.n_per_axis, "cells per axis")->required();
  project->add_option("--out", project_args.out_dir, "output directory");
  project->add_flag("--quiet", project_args.quiet, "suppress chatter");

  permflow::cli::EvolveArgs evolve_args;
  CLI::App* evolve = app.add_subcommand("evolve", "integrate a scenario config and write artifacts");
  evolve->add_option("--config", evolve_args.config_path, "scenario key=value file")->required();
  evolve->add_option("--out", evolve_args.out_dir, "output directory");
  evolve->add_flag("--quiet", evolve_args.quiet, "suppress chatter");

  permflow::cli::VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify-reference", "check the closed-form solutions");
  verify->add_option("which", verify_args.which, "rotation|generalized|action")->required();
  verify->add_option("--n-z", verify_args.n_z, "disk quadrature cells per axis");
  verify->add_option("--n-angles", verify_args.n_angles, "splitting directions");
  verify->add_option("--frames", verify_args.frames, "time quadrature intervals");
  verify->add_option("--dt-fd", verify_args.dt_fd, "finite-difference step");
  verify->add_option("--tol", verify_args.tol, "acceleration residual tolerance");
  verify->add_option("--corrupt-radius", verify_args.corrupt_radius, "test hook: scale the splitting radius");
  verify->add_option("--report", verify_args.out_file, "write the JSON report here");
  verify->add_flag("--quiet", verify_args.quiet, "suppress chatter");

  permflow::cli::Vp1dArgs vp1d_args;
  CLI::App* vp1d = app.add_subcommand("vp1d", "one-dimensional sheet-model checks");
  vp1d->add_option("subcommand", vp1d_args.subcommand, "period|equivalence")->required();
  vp1d->add_option("--epsilon", vp1d_args.epsilon, "penalty parameter");
  vp1d->add_option("--amplitude", vp1d_args.amplitude, "initial displacement amplitude");
  vp1d->add_option("--dt", vp1d_args.dt, "time step (default: spring period / 200)");
  vp1d->add_option("--n", vp1d_args.n_particles, "particle count");
  vp1d->add_option("--states", vp1d_args.n_states, "random states for the equivalence check");
  vp1d->add_option("--seed", vp1d_args.seed, "random seed");
  vp1d->add_option("--histogram", vp1d_args.histogram_dir, "period only: write the quarter-period phase histogram");
  vp1d->add_flag("--quiet", vp1d_args.quiet, "suppress chatter");

  CLI11_PARSE(app, argc, argv);

  if (grid->parsed()) return permflow::cli::cmd_grid(grid_args);
  if (project->parsed()) return permflow::cli::cmd_project(project_args);
  if (evolve->parsed()) return permflow::cli::cmd_evolve(evolve_args);
  if (verify->parsed()) return permflow::cli::cmd_verify_reference(verify_args);
  if (vp1d->parsed()) return permflow::cli::cmd_vp1d(vp1d_args);
  return 2;
}
