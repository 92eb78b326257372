#pragma once

// Run artifacts: energies.csv, field snapshots with .meta sidecars, and
// manifest.txt; plus the run driver that produces them.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "eplast/simulation.hpp"

namespace eplast {

inline constexpr const char* version_string = "0.1.0";

// Column order is fixed; see README for the meaning of each column.
std::string energy_csv_header();
std::string energy_csv_row(const StepDiagnostics& d);

struct Snapshot {
  std::string name;
  int nx = 0;
  int ny = 0;
  int components = 0;
  std::vector<double> values;  // row-major cells, components contiguous per cell
};

// 64-byte text header "EPFLD1 nx ny components name", then little-endian
// doubles. Writes <path>.meta alongside.
void write_snapshot(const std::filesystem::path& path, const Snapshot& s, int step, double t, const Grid& g);
Snapshot read_snapshot(const std::filesystem::path& path);

std::vector<Snapshot> state_snapshots(const StateFields& s);

// Rebuilds a state from the five snapshots of one step; the reference-map
// ghost layer comes from the scenario's initial map.
StateFields state_from_snapshots(const SolverConfig& config, const std::vector<Snapshot>& snaps);

std::filesystem::path snapshot_path(const std::filesystem::path& out, int step, const std::string& name);

void write_manifest(const std::filesystem::path& out, const SolverConfig& config);

enum class ExitCode { ok = 0, config = 2, solver = 3, invariant = 4 };

ExitCode exit_code_for(ErrorKind kind);

struct RunOutcome {
  ExitCode code = ExitCode::ok;
  int steps_completed = 0;
  std::string message;
};

// Runs config.n_steps steps, writing artifacts into config.output.directory.
// Hard errors end the run with a diagnostic on log and in failure.txt.
RunOutcome run_scenario(const SolverConfig& config, std::ostream& log);

}  // namespace eplast
