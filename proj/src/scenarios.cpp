#include "eplast/scenarios.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "eplast/error.hpp"
#include "eplast/thermal.hpp"

namespace eplast {

namespace {

constexpr double pi = 3.14159265358979323846;

MaterialModel soft_viscous() {
  MaterialModel m;
  m.name = "soft_viscous";
  m.bulk = 0.01;
  m.shear = 0.01;
  m.hardening = 0.001;
  m.coupling = 1e-6;
  return m;
}

MaterialModel melting_ramp() {
  MaterialModel m;
  m.name = "melting_ramp";
  m.viscosity.law = PlasticViscosity::Law::melting_ramp;
  m.viscosity.m0 = 1.0;
  m.viscosity.floor = 0.05;
  m.viscosity.theta_melt = 2.0;
  return m;
}

MaterialModel jeffreys() {
  MaterialModel m;
  m.name = "jeffreys";
  m.hardening = 0.0;
  return m;
}

MaterialModel checkerboard() {
  MaterialModel m;
  m.name = "checkerboard";
  m.modulation.kind = SpatialModulation::Kind::checkerboard;
  m.modulation.amplitude = 0.5;
  return m;
}

MaterialModel stiff_plastic() {
  MaterialModel m;
  m.name = "stiff_plastic";
  m.viscosity.m0 = 1e3;
  return m;
}

struct MaterialEntry {
  const char* summary;
  MaterialModel (*make)();
};

const std::map<std::string, MaterialEntry, std::less<>>& materials() {
  static const std::map<std::string, MaterialEntry, std::less<>> table{
      {"neo_hookean_default", {"K_E = G_E = 1, H_E = 0.1, constant M = 1", [] { return MaterialModel{}; }}},
      {"soft_viscous", {"compliant solid, weak thermal coupling", soft_viscous}},
      {"melting_ramp", {"M(theta) decreasing linearly to a floor at theta_melt", melting_ramp}},
      {"jeffreys", {"no hardening: Jeffreys creep in shear", jeffreys}},
      {"checkerboard", {"checkerboard contrast in K_E, G_E, H_E and density", checkerboard}},
      {"stiff_plastic", {"large plastic viscosity: nearly elastic deviatoric response", stiff_plastic}},
  };
  return table;
}

using MapFn = std::function<Vec2(const Vec2&)>;

// Pre-deformations are written as xi0(x) = x - u(x).
Vec2 shear_prestrain(const Vec2& x, double a) { return {x.x - a * std::sin(2.0 * pi * x.y) / (2.0 * pi), x.y}; }

Vec2 compression_prestrain(const Vec2& x, double a) {
  return {x.x - a * std::sin(2.0 * pi * x.x) / (2.0 * pi), x.y};
}

Vec2 volumetric_prestrain(const Vec2& x, double a) {
  const double sx = std::sin(pi * x.x), sy = std::sin(pi * x.y);
  const Vec2 grad{std::sin(2.0 * pi * x.x) * sy * sy, sx * sx * std::sin(2.0 * pi * x.y)};
  return x - (0.5 * a / pi) * grad;
}

// Divergence-free cellular flow vanishing on the walls, peak speed ~amplitude.
Vec2 vortex(const Vec2& x, double a) {
  const double sx = std::sin(pi * x.x), sy = std::sin(pi * x.y);
  return a * Vec2{sx * sx * std::sin(2.0 * pi * x.y), -std::sin(2.0 * pi * x.x) * sy * sy};
}

struct ScenarioEntry {
  const char* summary;
  void (*tune)(SolverConfig&);
};

const std::map<std::string, ScenarioEntry, std::less<>>& scenarios() {
  static const std::map<std::string, ScenarioEntry, std::less<>> table{
      {"static",
       {"undeformed body at rest at uniform temperature",
        [](SolverConfig& c) {
          c.n_steps = 20;
          c.dt = 1e-2;
          c.scenario.amplitude = 0.0;
        }}},
      {"shear_heating",
       {"decaying cellular flow in a compliant solid; viscous heating",
        [](SolverConfig& c) {
          c.material_preset = "soft_viscous";
          c.physics.dissipation = {.nu0 = 1.0, .nu1 = 1e-6, .nu2 = 1e-6, .p = 2.0, .q = 2.0};
          c.scenario.amplitude = 4.0;
          c.scenario.theta0 = 100.0;
          c.dt = 1.0 / 512.0;  // CFL 0.5 on the 64^2 grid
          c.n_steps = 500;
        }}},
      {"uniaxial_compression",
       {"band of uniaxial pre-compression released at rest",
        [](SolverConfig& c) {
          c.scenario.amplitude = 0.2;
          c.dt = 2e-3;
          c.n_steps = 300;
        }}},
      {"thermal_softening",
       {"pre-sheared body near melting; plastic viscosity falls with temperature",
        [](SolverConfig& c) {
          c.material_preset = "melting_ramp";
          c.scenario.amplitude = 0.3;
          c.scenario.theta0 = 1.5;
          c.dt = 2e-3;
          c.n_steps = 300;
        }}},
      {"inhomogeneous_checkerboard",
       {"cellular flow through a checkerboard of stiff and compliant tiles",
        [](SolverConfig& c) {
          c.material_preset = "checkerboard";
          c.scenario.amplitude = 0.5;
          c.dt = 2e-3;
          c.n_steps = 300;
        }}},
      {"jeffreys_creep",
       {"pre-sheared body without hardening or plastic gradient viscosity",
        [](SolverConfig& c) {
          c.material_preset = "jeffreys";
          c.physics.dissipation.nu2 = 0.0;
          c.scenario.amplitude = 0.3;
          c.dt = 2e-3;
          c.n_steps = 300;
        }}},
      {"kelvin_voigt_volumetric",
       {"volumetric pre-strain relaxing through bulk elasticity and viscosity",
        [](SolverConfig& c) {
          c.material_preset = "stiff_plastic";
          c.physics.dissipation = {.nu0 = 0.2, .nu1 = 1e-6, .nu2 = 1e-6, .p = 2.0, .q = 2.0};
          c.scenario.amplitude = 0.2;
          c.dt = 2e-3;
          c.n_steps = 300;
        }}},
  };
  return table;
}

[[noreturn]] void unknown(std::string_view what, std::string_view name) {
  throw Error(ErrorKind::unknown_name, std::string(what) + " '" + std::string(name) + "'");
}

MapFn reference_map_of(const ScenarioSettings& s) {
  const double a = s.amplitude;
  if (s.name == "uniaxial_compression") return [a](const Vec2& x) { return compression_prestrain(x, a); };
  if (s.name == "thermal_softening" || s.name == "jeffreys_creep")
    return [a](const Vec2& x) { return shear_prestrain(x, a); };
  if (s.name == "kelvin_voigt_volumetric") return [a](const Vec2& x) { return volumetric_prestrain(x, a); };
  return [](const Vec2& x) { return x; };
}

bool has_vortex(const ScenarioSettings& s) {
  return s.name == "shear_heating" || s.name == "inhomogeneous_checkerboard";
}

// Uniform double in [-1, 1) from the top 53 bits; portable across libraries.
double symmetric_unit(std::mt19937_64& rng) { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; }

}  // namespace

std::vector<NamedEntry> list_scenarios() {
  std::vector<NamedEntry> out;
  for (const auto& [name, e] : scenarios()) out.push_back({name, e.summary});
  return out;
}

std::vector<NamedEntry> list_materials() {
  std::vector<NamedEntry> out;
  for (const auto& [name, e] : materials()) out.push_back({name, e.summary});
  return out;
}

MaterialModel material_preset(std::string_view name) {
  const auto it = materials().find(name);
  if (it == materials().end()) unknown("material", name);
  return it->second.make();
}

SolverConfig scenario_defaults(std::string_view name) {
  const auto it = scenarios().find(name);
  if (it == scenarios().end()) unknown("scenario", name);
  SolverConfig c;
  c.scenario.name = std::string(name);
  it->second.tune(c);
  c.physics.material = material_preset(c.material_preset);
  return c;
}

std::string describe_material(std::string_view name) {
  const MaterialModel m = material_preset(name);
  std::ostringstream os;
  os.precision(6);
  os << m.name << ": " << materials().find(name)->second.summary << "\n"
     << "  K_E   = " << m.bulk << " Pa\n"
     << "  G_E   = " << m.shear << " Pa\n"
     << "  H_E   = " << m.hardening << " Pa\n"
     << "  c     = " << m.heat_capacity << " J/(m^3 K)\n"
     << "  c1    = " << m.coupling << "\n"
     << "  alpha = " << m.alpha << "\n"
     << "  kappa = " << m.kappa << " W/(m K)\n"
     << "  rho_R = " << m.density << " kg/m^3\n";
  if (m.viscosity.law == PlasticViscosity::Law::constant)
    os << "  M     = " << m.viscosity.m0 << " Pa s (constant)\n";
  else
    os << "  M     = " << m.viscosity.m0 << " max(0, 1 - theta/" << m.viscosity.theta_melt << ") + "
       << m.viscosity.floor << " Pa s\n";
  switch (m.modulation.kind) {
    case SpatialModulation::Kind::constant:
      os << "  spatially uniform\n";
      break;
    case SpatialModulation::Kind::linear:
      os << "  linear contrast " << m.modulation.amplitude << "\n";
      break;
    case SpatialModulation::Kind::checkerboard:
      os << "  checkerboard contrast " << m.modulation.amplitude << ", tile " << m.modulation.period << " m\n";
      break;
  }
  return os.str();
}

VectorField initial_reference_map(const SolverConfig& config) {
  const Grid& g = config.grid;
  const MapFn map = reference_map_of(config.scenario);
  VectorField xi(g);
  for (int j = -1; j <= g.ny; ++j)
    for (int i = -1; i <= g.nx; ++i) xi(i, j) = map(g.center(i, j));
  return xi;
}

StateFields initial_state(const SolverConfig& config) {
  const Grid& g = config.grid;
  StateFields s(g);
  s.xi = initial_reference_map(config);
  if (has_vortex(config.scenario))
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) s.v(i, j) = vortex(g.center(i, j), config.scenario.amplitude);
  zero_boundary(s.v);

  std::mt19937_64 rng(config.scenario.seed);
  ScalarField theta0(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double noise = config.scenario.theta_noise > 0.0 ? symmetric_unit(rng) : 0.0;
      theta0(i, j) = config.scenario.theta0 * (1.0 + config.scenario.theta_noise * noise);
    }

  const Kinematics kin = kinematics(s.xi, s.Fp);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      s.w(i, j) =
          heat_internal_energy(config.physics.material, to_point(s.xi(i, j)), kin.Fe(i, j), theta0(i, j)).w;
  s.theta = temperature_from_enthalpy(s, config.physics);
  return s;
}

}  // namespace eplast
