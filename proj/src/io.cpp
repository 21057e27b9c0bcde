#include "permflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace permflow::io {

namespace {

const char* axis_names[3] = {"x", "y", "z"};

std::string coord_header(const std::string& prefix, int dim) {
  std::string h;
  for (int ax = 0; ax < dim; ++ax) {
    h += ',';
    h += prefix;
    h += axis_names[ax];
  }
  return h;
}

void append_coords(std::string& line, const Vec& p, int dim) {
  const double c[3] = {p.x, p.y, p.z};
  for (int ax = 0; ax < dim; ++ax) {
    line += ',';
    line += fmt17(c[ax]);
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(const std::string& origin, int line, const std::string& what) {
  throw std::invalid_argument(origin + ":" + std::to_string(line) + ": " + what);
}

double to_real(const std::string& origin, int line, const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    const double r = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing junk");
    return r;
  } catch (const std::exception&) {
    parse_fail(origin, line, key + ": expected a number, got '" + v + "'");
  }
}

long to_int(const std::string& origin, int line, const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    const long r = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing junk");
    return r;
  } catch (const std::exception&) {
    parse_fail(origin, line, key + ": expected an integer, got '" + v + "'");
  }
}

}  // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(const void* data, size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ull;
  for (size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::string file_checksum_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for checksum");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
  return buf;
}

std::vector<Vec> read_points_csv(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  int lineno = 0;

  if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
  ++lineno;
  // header: optional "index" column, then dim coordinate columns
  std::vector<std::string> header;
  {
    std::stringstream ss(trim(line));
    std::string tok;
    while (std::getline(ss, tok, ',')) header.push_back(trim(tok));
  }
  size_t first_coord = 0;
  if (!header.empty() && header[0] == "index") first_coord = 1;
  if (header.size() != first_coord + static_cast<size_t>(dim))
    parse_fail(path, lineno,
               "expected header with " + std::to_string(dim) + " coordinate column(s), got '" + trim(line) + "'");

  std::vector<Vec> out;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    std::stringstream ss(t);
    std::string tok;
    std::vector<double> fields;
    while (std::getline(ss, tok, ',')) fields.push_back(to_real(path, lineno, "field", trim(tok)));
    if (fields.size() != header.size())
      parse_fail(path, lineno,
                 "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
    Vec p;
    p.x = fields[first_coord];
    if (dim >= 2) p.y = fields[first_coord + 1];
    if (dim >= 3) p.z = fields[first_coord + 2];
    out.push_back(p);
  }
  if (out.empty()) parse_fail(path, lineno, "no data rows");
  return out;
}

void write_grid_csv(const std::string& path, const polar::PointCloud& grid) {
  std::ofstream out = open_out(path);
  out << "index" << coord_header("", grid.dim) << '\n';
  for (int a = 0; a < grid.count(); ++a) {
    std::string line = std::to_string(a);
    append_coords(line, grid.points[a], grid.dim);
    out << line << '\n';
  }
}

void write_grid_json(const std::string& path, const polar::PointCloud& grid) {
  nlohmann::json j;
  j["domain"] = polar::domain_name(grid.domain);
  j["dim"] = grid.dim;
  j["n_per_axis"] = grid.n_per_axis;
  j["count"] = grid.count();
  j["spacing"] = grid.spacing();
  j["cell_measure"] = grid.cell_measure();
  j["cell_volume"] = grid.box.cell_volume();
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_projection_csv(const std::string& path, const std::vector<Vec>& mapped, const polar::PointCloud& grid,
                          const assignment::AssignmentResult& result, const std::vector<double>& phi) {
  std::ofstream out = open_out(path);
  out << "index" << coord_header("a_", grid.dim) << coord_header("m_", grid.dim) << ",sigma,u,phi\n";
  for (int a = 0; a < result.size(); ++a) {
    std::string line = std::to_string(a);
    append_coords(line, grid.points[result.sigma[a]], grid.dim);
    append_coords(line, mapped[a], grid.dim);
    line += ',';
    line += std::to_string(result.sigma[a]);
    line += ',';
    line += fmt17(result.u[a]);
    line += ',';
    line += fmt17(phi[a]);
    out << line << '\n';
  }
}

void write_snapshot_csv(const std::string& path, const dynamics::Snapshot& snap, const polar::PointCloud& grid) {
  std::ofstream out = open_out(path);
  out << "time,alpha" << coord_header("a_", grid.dim) << coord_header("m_", grid.dim) << coord_header("v_", grid.dim)
      << ",sigma\n";
  for (size_t a = 0; a < snap.positions.size(); ++a) {
    std::string line = fmt17(snap.time);
    line += ',';
    line += std::to_string(a);
    append_coords(line, grid.points[snap.sigma[a]], grid.dim);
    append_coords(line, snap.positions[a], grid.dim);
    append_coords(line, snap.velocities[a], grid.dim);
    line += ',';
    line += std::to_string(snap.sigma[a]);
    out << line << '\n';
  }
}

void write_diagnostics_csv(const std::string& path, const std::vector<dynamics::DiagnosticRecord>& records) {
  std::ofstream out = open_out(path);
  out << "time,H,K,U,switches\n";
  for (const auto& r : records) {
    out << fmt17(r.time) << ',' << fmt17(r.hamiltonian) << ',' << fmt17(r.kinetic) << ',' << fmt17(r.potential) << ','
        << r.switches << '\n';
  }
}

void write_deviation_csv(const std::string& path, const std::vector<Vec>& positions,
                         const std::vector<Vec>& reference) {
  std::ofstream out = open_out(path);
  const int dim = 3;
  out << "alpha" << coord_header("m_", dim) << coord_header("ref_", dim) << ",deviation\n";
  for (size_t a = 0; a < positions.size(); ++a) {
    std::string line = std::to_string(a);
    append_coords(line, positions[a], dim);
    append_coords(line, reference[a], dim);
    line += ',';
    line += fmt17(norm(positions[a] - reference[a]));
    out << line << '\n';
  }
}

void write_phase_histogram_csv(const std::string& path, const vp1d::PhaseHistogram& hist) {
  std::ofstream out = open_out(path);
  for (int ixi = 0; ixi < hist.xi_bins; ++ixi) {
    std::string line;
    for (int ix = 0; ix < hist.x_bins; ++ix) {
      if (ix > 0) line += ',';
      line += fmt17(hist.at(ix, ixi));
    }
    out << line << '\n';
  }
}

void write_phase_histogram_json(const std::string& path, const vp1d::PhaseHistogram& hist) {
  nlohmann::json j;
  j["x_bins"] = hist.x_bins;
  j["xi_bins"] = hist.xi_bins;
  nlohmann::json xe = nlohmann::json::array(), ve = nlohmann::json::array();
  for (int ix = 0; ix <= hist.x_bins; ++ix) xe.push_back(static_cast<double>(ix) / hist.x_bins);
  for (int ixi = 0; ixi <= hist.xi_bins; ++ixi)
    ve.push_back(hist.xi_lo + (hist.xi_hi - hist.xi_lo) * ixi / hist.xi_bins);
  j["x_edges"] = xe;
  j["xi_edges"] = ve;
  j["inside_mass"] = hist.inside_mass;
  j["clipped_mass"] = hist.clipped_mass;
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

ParsedScenario parse_scenario_text(const std::string& text, const std::string& origin) {
  ParsedScenario out;
  dynamics::ScenarioConfig& cfg = out.config;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<std::string> seen;

  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    const auto hash = t.find('#');
    if (hash != std::string::npos) t = trim(t.substr(0, hash));
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) parse_fail(origin, lineno, "expected 'key = value', got '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty() || value.empty()) parse_fail(origin, lineno, "expected 'key = value', got '" + t + "'");
    for (const std::string& s : seen)
      if (s == key) parse_fail(origin, lineno, "duplicate key '" + key + "'");
    seen.push_back(key);
    out.echo.emplace_back(key, value);

    if (key == "domain") {
      try {
        cfg.domain = polar::parse_domain(value);
      } catch (const std::exception& e) {
        parse_fail(origin, lineno, std::string("domain: ") + e.what());
      }
    } else if (key == "n_per_axis") {
      cfg.n_per_axis = static_cast<int>(to_int(origin, lineno, key, value));
    } else if (key == "epsilon") {
      cfg.epsilon = value == "auto" ? 0.0 : to_real(origin, lineno, key, value);
    } else if (key == "dt") {
      cfg.dt = value == "auto" ? 0.0 : to_real(origin, lineno, key, value);
    } else if (key == "t_final") {
      cfg.t_final = to_real(origin, lineno, key, value);
    } else if (key == "velocity_field") {
      if (value == "zero")
        cfg.field = dynamics::VelocityField::zero;
      else if (value == "rigid_rotation")
        cfg.field = dynamics::VelocityField::rigid_rotation;
      else if (value == "random")
        cfg.field = dynamics::VelocityField::random_uniform;
      else if (value == "table")
        cfg.field = dynamics::VelocityField::table;
      else
        parse_fail(origin, lineno, "velocity_field: unknown field '" + value + "' (zero|rigid_rotation|random|table)");
    } else if (key == "omega") {
      cfg.omega = to_real(origin, lineno, key, value);
    } else if (key == "amplitude") {
      cfg.amplitude = to_real(origin, lineno, key, value);
    } else if (key == "velocity_file") {
      out.velocity_file = value;
    } else if (key == "refresh_every") {
      cfg.refresh.every_k_steps = to_int(origin, lineno, key, value);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(to_int(origin, lineno, key, value));
    } else if (key == "output_every") {
      cfg.output_every = to_int(origin, lineno, key, value);
    } else if (key == "write_snapshots") {
      cfg.write_snapshots = to_int(origin, lineno, key, value) != 0;
    } else if (key == "reference") {
      if (value == "none")
        cfg.reference = dynamics::ReferenceFlow::none;
      else if (value == "rotation")
        cfg.reference = dynamics::ReferenceFlow::rotation;
      else
        parse_fail(origin, lineno, "reference: unknown value '" + value + "' (none|rotation)");
    } else {
      parse_fail(origin, lineno, "unknown key '" + key + "'");
    }
  }
  if (cfg.field == dynamics::VelocityField::table && out.velocity_file.empty())
    throw std::invalid_argument(origin + ": velocity_field = table requires velocity_file");
  return out;
}

ParsedScenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str(), path);
}

}  // namespace permflow::io
