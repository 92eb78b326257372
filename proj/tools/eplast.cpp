// eplast: run, check and audit thermoplastic simulations.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "eplast/output.hpp"
#include "eplast/parallel.hpp"
#include "eplast/scenarios.hpp"

namespace fs = std::filesystem;
using namespace eplast;

namespace {

struct Overrides {
  std::string config_path;
  std::string out;
  int steps = 0;
  double dt = 0.0;
  int threads = 0;
  long long seed = -1;
};

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::parse_error, "cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// Parses the config file (or the defaults) and applies command-line overrides.
SolverConfig load(const Overrides& o) {
  ParsedConfig parsed = parse_config(o.config_path.empty() ? std::string() : slurp(o.config_path));
  SolverConfig& c = parsed.config;
  if (!o.out.empty()) c.output.directory = o.out;
  if (o.steps > 0) c.n_steps = o.steps;
  if (o.dt > 0.0) c.dt = o.dt;
  if (o.seed >= 0) c.scenario.seed = static_cast<std::uint64_t>(o.seed);
  validate_config(c);
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
  return c;
}

int report(const Error& e) {
  std::cerr << "error: " << e.what() << "\n";
  return static_cast<int>(exit_code_for(e.kind()));
}

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "configuration file");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--steps", o.steps, "number of steps")->check(CLI::PositiveNumber);
  cmd->add_option("--dt", o.dt, "time step (s)")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "seed for randomized initial data")->check(CLI::NonNegativeNumber);
}

int audit(const SolverConfig& c) {
  const fs::path fields = fs::path(c.output.directory) / "fields";
  std::map<int, std::vector<fs::path>> by_step;
  if (!fs::is_directory(fields)) throw Error(ErrorKind::validation_error, "no snapshots in " + fields.string());
  for (const auto& entry : fs::directory_iterator(fields)) {
    const std::string name = entry.path().filename().string();
    if (entry.path().extension() != ".epfld" || name.rfind("step", 0) != 0) continue;
    by_step[std::stoi(name.substr(4, 6))].push_back(entry.path());
  }
  std::cout << "step,t [s],kinetic [J],stored [J],hardening [J],heat [J],mass [kg]\n";
  for (const auto& [step, paths] : by_step) {
    std::vector<Snapshot> snaps;
    for (const auto& p : paths) snaps.push_back(read_snapshot(p));
    const StateFields st = state_from_snapshots(c, snaps);
    const EnergyReport e = state_energies(st, c.physics, step * c.dt);
    const double mass = derived_mass(st.xi, c.physics.material);
    char line[256];
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", step, e.t, e.kinetic, e.stored,
                  e.hardening, e.heat, mass);
    std::cout << line;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eulerian finite-strain thermoplasticity simulator"};
  app.set_version_flag("--version", version_string);
  app.require_subcommand(1);

  Overrides o;
  auto* run = app.add_subcommand("run", "run a scenario and write energies.csv, snapshots and manifest.txt");
  auto* check = app.add_subcommand("check", "validate a configuration without running");
  auto* audit_cmd = app.add_subcommand("audit", "recompute energies from the snapshots of a finished run");
  auto* scenarios_cmd = app.add_subcommand("scenarios", "list scenario presets");
  auto* materials_cmd = app.add_subcommand("materials", "list material presets or describe one");
  std::string material_name;
  materials_cmd->add_option("name", material_name, "material preset to describe");
  for (auto* cmd : {run, check, audit_cmd}) add_common(cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::config);
  }

  try {
    if (o.threads > 0) set_thread_count(o.threads);
    if (*scenarios_cmd) {
      for (const auto& s : list_scenarios()) std::cout << s.name << "  " << s.summary << "\n";
      return 0;
    }
    if (*materials_cmd) {
      if (!material_name.empty()) {
        std::cout << describe_material(material_name);
      } else {
        for (const auto& m : list_materials()) std::cout << m.name << "  " << m.summary << "\n";
      }
      return 0;
    }
    const SolverConfig c = load(o);
    if (*check) {
      std::cout << serialize_config(c);
      return 0;
    }
    if (*audit_cmd) return audit(c);
    const RunOutcome r = run_scenario(c, std::cerr);
    return static_cast<int>(r.code);
  } catch (const Error& e) {
    return report(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::solver);
  }
}
