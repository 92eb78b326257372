#include "eplast/output.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include "eplast/scenarios.hpp"

namespace fs = std::filesystem;

namespace eplast {

namespace {

constexpr std::size_t header_size = 64;

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void put_le(std::ostream& os, double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  char bytes[8];
  for (int k = 0; k < 8; ++k) bytes[k] = static_cast<char>((bits >> (8 * k)) & 0xff);
  os.write(bytes, 8);
}

double get_le(const unsigned char* bytes) {
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(bytes[k]) << (8 * k);
  return std::bit_cast<double>(bits);
}

[[noreturn]] void bad_file(const fs::path& p, const std::string& why) {
  throw Error(ErrorKind::parse_error, p.string() + ": " + why);
}

template <class F>
Snapshot gather(const Grid& g, std::string name, int components, F&& cell) {
  Snapshot s{std::move(name), g.nx, g.ny, components, {}};
  s.values.reserve(static_cast<std::size_t>(g.cells()) * components);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) cell(i, j, s.values);
  return s;
}

const Snapshot& find(const std::vector<Snapshot>& snaps, const std::string& name, int components, const Grid& g) {
  for (const Snapshot& s : snaps)
    if (s.name == name) {
      if (s.components != components || s.nx != g.nx || s.ny != g.ny)
        throw Error(ErrorKind::validation_error, "snapshot '" + name + "' does not match the grid");
      return s;
    }
  throw Error(ErrorKind::validation_error, "missing snapshot '" + name + "'");
}

}  // namespace

std::string energy_csv_header() {
  return "step,t [s],kinetic [J],stored [J],hardening [J],heat [J],dissipation_rate [W],gravity_power [W],"
         "boundary_heat_in [W],adiabatic_exchange [W],mech_residual [W],total_residual [W],"
         "mech_residual_rel [1],total_residual_rel [1],min_theta [K],isochoric_defect [1],"
         "max_plastic_rate [1/s]";
}

std::string energy_csv_row(const StepDiagnostics& d) {
  const EnergyReport& e = d.energy;
  std::string row = std::to_string(d.step);
  for (double x : {e.t, e.kinetic, e.stored, e.hardening, e.heat, e.dissipation_rate, e.gravity_power,
                   e.boundary_heat_in, e.adiabatic_exchange, e.mech_residual, e.total_residual, e.mech_residual_rel,
                   e.total_residual_rel, d.temperature.min_theta, d.isochoric_defect, d.max_plastic_rate})
    row += "," + g17(x);
  return row;
}

void write_snapshot(const fs::path& path, const Snapshot& s, int step, double t, const Grid& g) {
  if (s.values.size() != static_cast<std::size_t>(s.nx) * s.ny * s.components)
    throw Error(ErrorKind::validation_error, "snapshot size mismatch for '" + s.name + "'");
  std::string header = "EPFLD1 " + std::to_string(s.nx) + " " + std::to_string(s.ny) + " " +
                       std::to_string(s.components) + " " + s.name;
  if (header.size() > header_size - 1) throw Error(ErrorKind::validation_error, "field name too long");
  header.resize(header_size - 1, ' ');
  header += '\n';
  std::ofstream os(path, std::ios::binary);
  if (!os) bad_file(path, "cannot open for writing");
  os.write(header.data(), static_cast<std::streamsize>(header.size()));
  for (double x : s.values) put_le(os, x);
  if (!os) bad_file(path, "write failed");

  std::ofstream meta(path.string() + ".meta");
  meta << "name = " << s.name << "\nstep = " << step << "\nt = " << g17(t) << "\nnx = " << s.nx
       << "\nny = " << s.ny << "\nlx = " << g17(g.lx) << "\nly = " << g17(g.ly)
       << "\ncomponents = " << s.components << "\nlayout = row-major cells, x fastest, components contiguous"
       << "\nencoding = float64 little-endian after a 64-byte text header\n";
}

Snapshot read_snapshot(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) bad_file(path, "cannot open");
  std::string header(header_size, '\0');
  is.read(header.data(), header_size);
  if (is.gcount() != static_cast<std::streamsize>(header_size)) bad_file(path, "truncated header");
  std::istringstream hs(header);
  std::string magic;
  Snapshot s;
  hs >> magic >> s.nx >> s.ny >> s.components >> s.name;
  if (magic != "EPFLD1" || !hs || s.nx <= 0 || s.ny <= 0 || s.components <= 0) bad_file(path, "bad header");
  const std::size_t n = static_cast<std::size_t>(s.nx) * s.ny * s.components;
  std::vector<unsigned char> raw(n * 8);
  is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (is.gcount() != static_cast<std::streamsize>(raw.size())) bad_file(path, "truncated data");
  s.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) s.values[k] = get_le(raw.data() + 8 * k);
  return s;
}

std::vector<Snapshot> state_snapshots(const StateFields& st) {
  const Grid& g = st.grid();
  std::vector<Snapshot> out;
  out.push_back(gather(g, "v", 2, [&](int i, int j, auto& o) { o.insert(o.end(), {st.v(i, j).x, st.v(i, j).y}); }));
  out.push_back(
      gather(g, "xi", 2, [&](int i, int j, auto& o) { o.insert(o.end(), {st.xi(i, j).x, st.xi(i, j).y}); }));
  out.push_back(gather(g, "Fp", 4, [&](int i, int j, auto& o) {
    const Tensor2& F = st.Fp(i, j);
    o.insert(o.end(), {F(0, 0), F(0, 1), F(1, 0), F(1, 1)});
  }));
  out.push_back(gather(g, "w", 1, [&](int i, int j, auto& o) { o.push_back(st.w(i, j)); }));
  out.push_back(gather(g, "theta", 1, [&](int i, int j, auto& o) { o.push_back(st.theta(i, j)); }));
  return out;
}

StateFields state_from_snapshots(const SolverConfig& config, const std::vector<Snapshot>& snaps) {
  const Grid& g = config.grid;
  StateFields st(g);
  st.xi = initial_reference_map(config);
  const Snapshot& v = find(snaps, "v", 2, g);
  const Snapshot& xi = find(snaps, "xi", 2, g);
  const Snapshot& Fp = find(snaps, "Fp", 4, g);
  const Snapshot& w = find(snaps, "w", 1, g);
  const Snapshot& th = find(snaps, "theta", 1, g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * g.nx + i;
      st.v(i, j) = {v.values[2 * k], v.values[2 * k + 1]};
      st.xi(i, j) = {xi.values[2 * k], xi.values[2 * k + 1]};
      st.Fp(i, j) = Tensor2(2, {Fp.values[4 * k], Fp.values[4 * k + 1], Fp.values[4 * k + 2], Fp.values[4 * k + 3]});
      st.w(i, j) = w.values[k];
      st.theta(i, j) = th.values[k];
    }
  return st;
}

fs::path snapshot_path(const fs::path& out, int step, const std::string& name) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "step%06d", step);
  return out / "fields" / (std::string(buf) + "." + name + ".epfld");
}

void write_manifest(const fs::path& out, const SolverConfig& config) {
  std::ofstream os(out / "manifest.txt");
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(config)));
  const SolverSettings& s = config.solver;
  os << "eplast " << version_string << "\n"
     << "config_hash = fnv1a64:" << hash << "\n"
     << "scenario = " << config.scenario.name << "\n"
     << "material = " << config.material_preset << "\n"
     << "seed = " << config.scenario.seed << "\n"
     << "\n[tolerances]\n"
     << "transport.cfl_cap = " << g17(s.cfl_cap) << "\n"
     << "transport.isochoric_defect_max = 1e-8\n"
     << "mechanics.cg_tolerance = " << g17(s.cg.tolerance) << "\n"
     << "mechanics.cg_max_iterations = " << s.cg.max_iterations << "\n"
     << "mechanics.picard_momentum = " << s.picard_momentum << "\n"
     << "mechanics.flow_max_iterations = " << s.flow_iterations << "\n"
     << "mechanics.picard_tolerance = " << g17(s.picard_tolerance) << "\n"
     << "thermal.cg_tolerance = " << g17(s.cg.tolerance) << "\n"
     << "thermal.theta_floor = " << g17(s.theta_floor) << "\n"
     << "constitutive.singular_floor = 1e-12\n"
     << "audit.eps_scale = " << g17(config.audit.eps_scale) << "\n"
     << "audit.count_hardening_in_total = " << (config.audit.count_hardening_in_total ? "true" : "false") << "\n"
     << "\n[config]\n"
     << serialize_config(config);
}

ExitCode exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse_error:
    case ErrorKind::validation_error:
    case ErrorKind::unknown_name:
      return ExitCode::config;
    case ErrorKind::negative_enthalpy:
      return ExitCode::invariant;
    default:
      return ExitCode::solver;
  }
}

RunOutcome run_scenario(const SolverConfig& config, std::ostream& log) {
  const fs::path out = config.output.directory;
  fs::create_directories(out / "fields");
  write_manifest(out, config);
  std::ofstream csv(out / "energies.csv");
  csv << energy_csv_header() << "\n";

  RunOutcome outcome;
  auto snapshot = [&](const Simulator& sim) {
    for (const Snapshot& s : state_snapshots(sim.state()))
      write_snapshot(snapshot_path(out, sim.step_index(), s.name), s, sim.step_index(), sim.time(), config.grid);
  };
  auto fail = [&](ExitCode code, const std::string& what, const Simulator* sim) {
    outcome.code = code;
    outcome.message = what;
    std::ostringstream report;
    report << "run failed after " << outcome.steps_completed << " completed steps (exit "
           << static_cast<int>(code) << ")\n"
           << what << "\n";
    if (sim) {
      const StepDiagnostics& d = sim->last();
      report << "last completed step " << d.step << " at t = " << g17(d.energy.t) << "\n"
             << "  min theta " << g17(d.temperature.min_theta) << ", isochoric defect "
             << g17(d.isochoric_defect) << ", cfl " << g17(d.cfl) << "\n"
             << "  mech residual (rel) " << g17(d.energy.mech_residual_rel) << ", total residual (rel) "
             << g17(d.energy.total_residual_rel) << "\n";
    }
    log << report.str();
    std::ofstream(out / "failure.txt") << report.str();
  };

  std::unique_ptr<Simulator> sim;
  try {
    sim = std::make_unique<Simulator>(config);
    csv << energy_csv_row(sim->last()) << "\n";
    snapshot(*sim);
    for (int n = 1; n <= config.n_steps; ++n) {
      const StepDiagnostics& d = sim->step();
      outcome.steps_completed = n;
      csv << energy_csv_row(d) << "\n";
      if (n == config.n_steps || (config.output.snapshot_every > 0 && n % config.output.snapshot_every == 0))
        snapshot(*sim);
      if (!d.energy.all_finite()) {
        fail(ExitCode::solver, "non-finite energy report", sim.get());
        return outcome;
      }
      if (d.isochoric_defect > 1e-8) {
        fail(ExitCode::invariant, "plastic distortion lost isochoricity: |det Fp - 1| = " + g17(d.isochoric_defect),
             sim.get());
        return outcome;
      }
    }
  } catch (const Error& e) {
    csv.flush();
    fail(exit_code_for(e.kind()), e.what(), sim.get());
    return outcome;
  }
  log << "completed " << outcome.steps_completed << " steps\n";
  return outcome;
}

}  // namespace eplast
