#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "permflow/dynamics.hpp"
#include "permflow/polar.hpp"
#include "permflow/vec.hpp"
#include "permflow/vp1d.hpp"

namespace permflow::io {

inline constexpr const char* kVersion = "permflow 0.1.0";

// Decimal text with 17 significant digits (round-trip exact for doubles).
std::string fmt17(double v);

// FNV-1a 64-bit over a byte span / a file's contents.
std::uint64_t fnv1a64(const void* data, size_t len);
std::string file_checksum_hex(const std::string& path);

// Strict CSV reader: one header row, then rows of `dim` numeric coordinate
// fields after an optional leading index column. Parse errors carry
// "path:line:" context.
std::vector<Vec> read_points_csv(const std::string& path, int dim);

void write_grid_csv(const std::string& path, const polar::PointCloud& grid);
void write_grid_json(const std::string& path, const polar::PointCloud& grid);

// Pairing rows: index, matched grid point, mapped point, sigma, dual u, phi.
void write_projection_csv(const std::string& path, const std::vector<Vec>& mapped, const polar::PointCloud& grid,
                          const assignment::AssignmentResult& result, const std::vector<double>& phi);

void write_snapshot_csv(const std::string& path, const dynamics::Snapshot& snap, const polar::PointCloud& grid);
void write_diagnostics_csv(const std::string& path, const std::vector<dynamics::DiagnosticRecord>& records);
void write_deviation_csv(const std::string& path, const std::vector<Vec>& positions,
                         const std::vector<Vec>& reference);

// Raw mass matrix (rows = velocity bins, columns = position bins) plus a JSON
// sidecar carrying the bin edges and the clipped mass.
void write_phase_histogram_csv(const std::string& path, const vp1d::PhaseHistogram& hist);
void write_phase_histogram_json(const std::string& path, const vp1d::PhaseHistogram& hist);

// Flat key = value scenario file; '#' starts a comment. Unknown keys and
// malformed values raise std::invalid_argument naming the key and line.
struct ParsedScenario {
  dynamics::ScenarioConfig config;
  std::string velocity_file;  // non-empty when velocity_field = table
  // raw key/value echo for the run manifest, in file order
  std::vector<std::pair<std::string, std::string>> echo;
};
ParsedScenario parse_scenario_file(const std::string& path);
ParsedScenario parse_scenario_text(const std::string& text, const std::string& origin);

}  // namespace permflow::io
