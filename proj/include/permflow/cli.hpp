#pragma once

#include <cstdint>
#include <string>

namespace permflow::cli {

// Exit codes: 0 all good, 1 a verification failed, 2 bad input or I/O.

struct GridArgs {
  std::string domain = "square";
  int n_per_axis = 4;
  std::string out_dir = ".";
  bool quiet = false;
};
int cmd_grid(const GridArgs& args);

struct ProjectArgs {
  std::string map_file;
  std::string domain = "square";
  int n_per_axis = 4;
  std::string out_dir = ".";
  bool quiet = false;
};
int cmd_project(const ProjectArgs& args);

struct EvolveArgs {
  std::string config_path;
  std::string out_dir = ".";
  bool quiet = false;
};
int cmd_evolve(const EvolveArgs& args);

struct VerifyArgs {
  std::string which;  // rotation | generalized | action
  int n_z = 64;
  int n_angles = 64;
  int frames = 200;
  double dt_fd = 1e-3;
  double tol = 1e-4;
  double corrupt_radius = 1.0;  // test hook: != 1 breaks the circle law
  std::string out_file;         // optional JSON report path
  bool quiet = false;
};
int cmd_verify_reference(const VerifyArgs& args);

struct Vp1dArgs {
  std::string subcommand;  // period | equivalence
  double epsilon = 0.1;
  double amplitude = 0.002;
  double dt = 0.0;  // 0: spring period / 200
  int n_particles = 100;
  int n_states = 50;
  std::uint64_t seed = 0;
  std::string histogram_dir;  // period only: emit the quarter-period phase histogram here
  bool quiet = false;
};
int cmd_vp1d(const Vp1dArgs& args);

}  // namespace permflow::cli
