#include "eplast/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "eplast/scenarios.hpp"

namespace eplast {

namespace {

std::string join(const std::vector<Diagnostic>& diags) {
  std::ostringstream os;
  for (std::size_t k = 0; k < diags.size(); ++k) {
    if (k) os << "; ";
    if (diags[k].line > 0) os << "line " << diags[k].line << ": ";
    os << diags[k].message;
  }
  return os.str();
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T>
T parse_number(std::string_view s) {
  T x{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  if constexpr (std::is_floating_point_v<T>)
    if (!std::isfinite(x)) throw std::invalid_argument("not finite: '" + std::string(s) + "'");
  return x;
}

bool parse_bool(std::string_view s) {
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  throw std::invalid_argument("expected true or false, got '" + std::string(s) + "'");
}

template <class E>
struct EnumName {
  E value;
  const char* name;
};

template <class E, std::size_t N>
E parse_enum(std::string_view s, const EnumName<E> (&names)[N]) {
  for (const auto& n : names)
    if (s == n.name) return n.value;
  std::string options;
  for (const auto& n : names) options += std::string(options.empty() ? "" : "|") + n.name;
  throw std::invalid_argument("expected one of " + options + ", got '" + std::string(s) + "'");
}

template <class E, std::size_t N>
std::string enum_name(E v, const EnumName<E> (&names)[N]) {
  for (const auto& n : names)
    if (v == n.value) return n.name;
  return "?";
}

constexpr EnumName<PlasticViscosity::Law> law_names[] = {{PlasticViscosity::Law::constant, "constant"},
                                                         {PlasticViscosity::Law::melting_ramp, "melting_ramp"}};
constexpr EnumName<SpatialModulation::Kind> modulation_names[] = {
    {SpatialModulation::Kind::constant, "constant"},
    {SpatialModulation::Kind::linear, "linear"},
    {SpatialModulation::Kind::checkerboard, "checkerboard"}};
constexpr EnumName<BoundaryFlux::Kind> flux_names[] = {{BoundaryFlux::Kind::insulated, "insulated"},
                                                       {BoundaryFlux::Kind::newton, "newton"}};

struct Key {
  std::string section;
  std::string name;
  std::function<void(SolverConfig&, std::string_view)> set;
  std::function<std::string(const SolverConfig&)> get;
};

template <class Acc>
Key real(std::string s, std::string k, Acc acc) {
  return {std::move(s), std::move(k), [acc](SolverConfig& c, std::string_view v) { acc(c) = parse_number<double>(v); },
          [acc](const SolverConfig& c) { return format_double(acc(const_cast<SolverConfig&>(c))); }};
}

template <class Acc>
Key integer(std::string s, std::string k, Acc acc) {
  using T = std::remove_reference_t<decltype(acc(std::declval<SolverConfig&>()))>;
  return {std::move(s), std::move(k), [acc](SolverConfig& c, std::string_view v) { acc(c) = parse_number<T>(v); },
          [acc](const SolverConfig& c) { return std::to_string(acc(const_cast<SolverConfig&>(c))); }};
}

template <class Acc>
Key boolean(std::string s, std::string k, Acc acc) {
  return {std::move(s), std::move(k), [acc](SolverConfig& c, std::string_view v) { acc(c) = parse_bool(v); },
          [acc](const SolverConfig& c) { return std::string(acc(const_cast<SolverConfig&>(c)) ? "true" : "false"); }};
}

template <class Acc>
Key text(std::string s, std::string k, Acc acc) {
  return {std::move(s), std::move(k),
          [acc](SolverConfig& c, std::string_view v) {
            if (v.empty()) throw std::invalid_argument("empty value");
            acc(c) = std::string(v);
          },
          [acc](const SolverConfig& c) { return acc(const_cast<SolverConfig&>(c)); }};
}

template <class Acc, class E, std::size_t N>
Key enumeration(std::string s, std::string k, Acc acc, const EnumName<E> (&names)[N]) {
  return {std::move(s), std::move(k), [acc, &names](SolverConfig& c, std::string_view v) { acc(c) = parse_enum(v, names); },
          [acc, &names](const SolverConfig& c) { return enum_name(acc(const_cast<SolverConfig&>(c)), names); }};
}

#define ACC(expr) [](SolverConfig& c) -> auto& { return c.expr; }

// Order here is the serialization order.
const std::vector<Key>& keys() {
  static const std::vector<Key> table{
      text("scenario", "name", ACC(scenario.name)),
      real("scenario", "amplitude", ACC(scenario.amplitude)),
      real("scenario", "theta0", ACC(scenario.theta0)),
      real("scenario", "theta_noise", ACC(scenario.theta_noise)),
      integer("scenario", "seed", ACC(scenario.seed)),

      integer("grid", "nx", ACC(grid.nx)),
      integer("grid", "ny", ACC(grid.ny)),
      real("grid", "lx", ACC(grid.lx)),
      real("grid", "ly", ACC(grid.ly)),

      real("time", "dt", ACC(dt)),
      integer("time", "steps", ACC(n_steps)),
      real("time", "cfl_cap", ACC(solver.cfl_cap)),

      text("material", "preset", ACC(material_preset)),
      real("material", "K_E", ACC(physics.material.bulk)),
      real("material", "G_E", ACC(physics.material.shear)),
      real("material", "H_E", ACC(physics.material.hardening)),
      real("material", "c", ACC(physics.material.heat_capacity)),
      real("material", "c1", ACC(physics.material.coupling)),
      real("material", "alpha", ACC(physics.material.alpha)),
      real("material", "kappa", ACC(physics.material.kappa)),
      real("material", "rho_R", ACC(physics.material.density)),
      enumeration("material", "M_law", ACC(physics.material.viscosity.law), law_names),
      real("material", "M0", ACC(physics.material.viscosity.m0)),
      real("material", "M_floor", ACC(physics.material.viscosity.floor)),
      real("material", "theta_melt", ACC(physics.material.viscosity.theta_melt)),
      enumeration("material", "modulation", ACC(physics.material.modulation.kind), modulation_names),
      real("material", "modulation_amplitude", ACC(physics.material.modulation.amplitude)),
      real("material", "modulation_period", ACC(physics.material.modulation.period)),
      real("material", "modulation_width", ACC(physics.material.modulation.width)),
      real("material", "modulation_dir_x", ACC(physics.material.modulation.direction.x)),
      real("material", "modulation_dir_y", ACC(physics.material.modulation.direction.y)),

      real("dissipation", "nu0", ACC(physics.dissipation.nu0)),
      real("dissipation", "nu1", ACC(physics.dissipation.nu1)),
      real("dissipation", "nu2", ACC(physics.dissipation.nu2)),
      real("dissipation", "p", ACC(physics.dissipation.p)),
      real("dissipation", "q", ACC(physics.dissipation.q)),

      boolean("cutoff", "enabled", ACC(physics.cutoff.enabled)),
      real("cutoff", "lambda", ACC(physics.cutoff.lambda)),

      enumeration("thermal", "boundary", ACC(physics.boundary.heat.kind), flux_names),
      real("thermal", "k", ACC(physics.boundary.heat.k)),
      real("thermal", "theta_ext", ACC(physics.boundary.heat.theta_ext)),

      real("forces", "gravity_x", ACC(physics.gravity.x)),
      real("forces", "gravity_y", ACC(physics.gravity.y)),

      real("solver", "cg_tolerance", ACC(solver.cg.tolerance)),
      integer("solver", "cg_max_iterations", ACC(solver.cg.max_iterations)),
      integer("solver", "picard_momentum", ACC(solver.picard_momentum)),
      integer("solver", "flow_max_iterations", ACC(solver.flow_iterations)),
      real("solver", "picard_tolerance", ACC(solver.picard_tolerance)),
      real("solver", "theta_floor", ACC(solver.theta_floor)),

      boolean("audit", "count_hardening_in_total", ACC(audit.count_hardening_in_total)),
      real("audit", "eps_scale", ACC(audit.eps_scale)),

      text("output", "directory", ACC(output.directory)),
      integer("output", "snapshot_every", ACC(output.snapshot_every)),
  };
  return table;
}

#undef ACC

const Key* find_key(std::string_view section, std::string_view name) {
  for (const Key& k : keys())
    if (k.section == section && k.name == name) return &k;
  return nullptr;
}

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line;
};

// Problems keyed by "section.key" so the parser can attach line numbers.
std::vector<std::pair<std::string, std::string>> problems(const SolverConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  auto need = [&](bool ok, const char* key, const char* msg) {
    if (!ok) out.emplace_back(key, msg);
  };
  const MaterialModel& m = c.physics.material;
  const DissipationParams& d = c.physics.dissipation;
  need(c.grid.nx >= 8, "grid.nx", "nx must be >= 8");
  need(c.grid.ny >= 8, "grid.ny", "ny must be >= 8");
  need(c.grid.lx > 0.0, "grid.lx", "lx must be > 0");
  need(c.grid.ly > 0.0, "grid.ly", "ly must be > 0");
  need(c.dt > 0.0, "time.dt", "dt must be > 0");
  need(c.n_steps >= 1, "time.steps", "steps must be >= 1");
  need(c.solver.cfl_cap > 0.0 && c.solver.cfl_cap <= 1.0, "time.cfl_cap", "cfl_cap must lie in (0, 1]");
  need(m.bulk >= 0.0, "material.K_E", "K_E must be >= 0");
  need(m.shear >= 0.0, "material.G_E", "G_E must be >= 0");
  need(m.hardening >= 0.0, "material.H_E", "H_E must be >= 0");
  need(m.heat_capacity > 0.0, "material.c", "c must be > 0");
  need(m.coupling > 0.0, "material.c1", "c1 must be > 0");
  need(m.alpha > 1.0 && m.alpha <= 2.0, "material.alpha", "alpha must satisfy 1 < alpha <= 2");
  need(m.kappa > 0.0, "material.kappa", "kappa must be > 0");
  need(m.density > 0.0, "material.rho_R", "rho_R must be > 0");
  need(m.viscosity.m0 >= 0.0, "material.M0", "M0 must be >= 0");
  if (m.viscosity.law == PlasticViscosity::Law::constant) {
    need(m.viscosity.m0 > 0.0, "material.M0", "constant M0 must be > 0");
  } else {
    need(m.viscosity.floor > 0.0, "material.M_floor", "M_floor must be > 0 for the melting ramp");
    need(m.viscosity.theta_melt > 0.0, "material.theta_melt", "theta_melt must be > 0");
  }
  need(std::abs(m.modulation.amplitude) < 1.0, "material.modulation_amplitude",
       "modulation_amplitude must lie in (-1, 1)");
  need(m.modulation.period > 0.0, "material.modulation_period", "modulation_period must be > 0");
  need(m.modulation.width > 0.0, "material.modulation_width", "modulation_width must be > 0");
  need(d.nu0 >= 0.0, "dissipation.nu0", "nu0 must be >= 0");
  need(d.nu1 >= 0.0, "dissipation.nu1", "nu1 must be >= 0");
  need(d.nu2 >= 0.0, "dissipation.nu2", "nu2 must be >= 0");
  need(d.p >= 2.0, "dissipation.p", "p must be >= 2");
  need(d.q >= 2.0, "dissipation.q", "q must be >= 2");
  need(c.physics.cutoff.lambda > 0.0 && c.physics.cutoff.lambda <= 1.0, "cutoff.lambda", "lambda must lie in (0, 1]");
  need(c.physics.boundary.heat.k >= 0.0, "thermal.k", "k must be >= 0");
  need(c.physics.boundary.heat.theta_ext >= 0.0, "thermal.theta_ext", "theta_ext must be >= 0");
  need(c.scenario.theta0 >= 0.0, "scenario.theta0", "theta0 must be >= 0");
  need(c.scenario.theta_noise >= 0.0 && c.scenario.theta_noise < 1.0, "scenario.theta_noise",
       "theta_noise must lie in [0, 1)");
  need(c.solver.cg.tolerance > 0.0, "solver.cg_tolerance", "cg_tolerance must be > 0");
  need(c.solver.cg.max_iterations >= 1, "solver.cg_max_iterations", "cg_max_iterations must be >= 1");
  need(c.solver.picard_momentum >= 1, "solver.picard_momentum", "picard_momentum must be >= 1");
  need(c.solver.flow_iterations >= 1, "solver.flow_max_iterations", "flow_max_iterations must be >= 1");
  need(c.solver.picard_tolerance > 0.0, "solver.picard_tolerance", "picard_tolerance must be > 0");
  need(c.solver.theta_floor <= 0.0, "solver.theta_floor", "theta_floor must be <= 0");
  need(c.audit.eps_scale > 0.0, "audit.eps_scale", "eps_scale must be > 0");
  need(c.output.snapshot_every >= 0, "output.snapshot_every", "snapshot_every must be >= 0");
  return out;
}

std::vector<std::string> warnings_of(const SolverConfig& c) {
  std::vector<std::string> out;
  if (c.physics.dissipation.below_analysis_exponents())
    out.push_back("p or q is <= 2: outside the exponent range p, q > 2 for which the coupled problem is known to be well posed");
  return out;
}

}  // namespace

ConfigError::ConfigError(ErrorKind kind, std::vector<Diagnostic> diagnostics)
    : Error(kind, join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

ParsedConfig parse_config(std::string_view text) {
  std::vector<Diagnostic> errors;
  std::vector<Entry> entries;
  std::set<std::string> seen;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back({line_no, "unterminated section header"});
        continue;
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      bool known = false;
      for (const Key& k : keys()) known = known || k.section == section;
      if (!known) errors.push_back({line_no, "unknown section [" + section + "]"});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back({line_no, "expected key = value"});
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (section.empty()) {
      errors.push_back({line_no, "key '" + key + "' outside any section"});
      continue;
    }
    if (!find_key(section, key)) {
      errors.push_back({line_no, "unknown key '" + key + "' in [" + section + "]"});
      continue;
    }
    if (!seen.insert(section + "." + key).second) {
      errors.push_back({line_no, "duplicate key '" + key + "' in [" + section + "]"});
      continue;
    }
    entries.push_back({section, key, value, line_no});
  }
  if (!errors.empty()) throw ConfigError(ErrorKind::parse_error, std::move(errors));

  auto lookup = [&](std::string_view s, std::string_view k) -> const Entry* {
    for (const Entry& e : entries)
      if (e.section == s && e.key == k) return &e;
    return nullptr;
  };

  // Scenario defaults first, then the material preset, then overrides.
  SolverConfig c;
  const Entry* scenario = lookup("scenario", "name");
  try {
    c = scenario_defaults(scenario ? scenario->value : c.scenario.name);
  } catch (const Error& e) {
    throw ConfigError(ErrorKind::validation_error, {{scenario ? scenario->line : 0, e.what()}});
  }
  if (const Entry* preset = lookup("material", "preset")) {
    try {
      c.physics.material = material_preset(preset->value);
      c.material_preset = preset->value;
    } catch (const Error& e) {
      throw ConfigError(ErrorKind::validation_error, {{preset->line, e.what()}});
    }
  }
  std::map<std::string, int> line_of;
  for (const Entry& e : entries) {
    line_of[e.section + "." + e.key] = e.line;
    if ((e.section == "scenario" && e.key == "name") || (e.section == "material" && e.key == "preset")) continue;
    try {
      find_key(e.section, e.key)->set(c, e.value);
    } catch (const std::exception& ex) {
      errors.push_back({e.line, e.key + ": " + ex.what()});
    }
  }
  if (!errors.empty()) throw ConfigError(ErrorKind::parse_error, std::move(errors));

  for (auto& [key, msg] : problems(c)) {
    const auto it = line_of.find(key);
    errors.push_back({it == line_of.end() ? 0 : it->second, msg});
  }
  if (!errors.empty()) throw ConfigError(ErrorKind::validation_error, std::move(errors));
  return {std::move(c), warnings_of(c)};
}

std::vector<std::string> validate_config(const SolverConfig& config) {
  std::vector<Diagnostic> errors;
  for (auto& [key, msg] : problems(config)) errors.push_back({0, key + ": " + msg});
  try {
    scenario_defaults(config.scenario.name);
    material_preset(config.material_preset);
  } catch (const Error& e) {
    errors.push_back({0, e.what()});
  }
  if (!errors.empty()) throw ConfigError(ErrorKind::validation_error, std::move(errors));
  return warnings_of(config);
}

std::string serialize_config(const SolverConfig& config) {
  std::ostringstream os;
  std::string section;
  for (const Key& k : keys()) {
    if (k.section != section) {
      if (!section.empty()) os << "\n";
      section = k.section;
      os << "[" << section << "]\n";
    }
    os << k.name << " = " << k.get(config) << "\n";
  }
  return os.str();
}

std::uint64_t config_hash(const SolverConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : serialize_config(config)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace eplast
