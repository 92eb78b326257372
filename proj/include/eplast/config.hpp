#pragma once

// Line-oriented `key = value` configuration with `[section]` headers.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "eplast/audit.hpp"
#include "eplast/error.hpp"
#include "eplast/model.hpp"

namespace eplast {

struct ScenarioSettings {
  std::string name = "shear_heating";
  double amplitude = 1.0;     // peak initial velocity or pre-strain, scenario-specific
  double theta0 = 1.0;        // initial temperature (K)
  double theta_noise = 0.0;   // relative amplitude of random temperature perturbation
  std::uint64_t seed = 1;
  friend bool operator==(const ScenarioSettings&, const ScenarioSettings&) = default;
};

struct OutputSettings {
  std::string directory = "out";
  int snapshot_every = 0;  // 0 writes only the first and last step
  friend bool operator==(const OutputSettings&, const OutputSettings&) = default;
};

struct SolverConfig {
  Grid grid{};
  double dt = 1e-3;
  int n_steps = 200;
  std::string material_preset = "neo_hookean_default";
  Physics physics{};
  SolverSettings solver{};
  AuditSettings audit{};
  ScenarioSettings scenario{};
  OutputSettings output{};

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

struct Diagnostic {
  int line = 0;  // 0 when not tied to a line
  std::string message;
};

// Carries every problem found, each with its line number.
class ConfigError : public Error {
 public:
  ConfigError(ErrorKind kind, std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

struct ParsedConfig {
  SolverConfig config;
  std::vector<std::string> warnings;
};

// Throws ConfigError with kind ParseError or ValidationError.
ParsedConfig parse_config(std::string_view text);

std::string serialize_config(const SolverConfig& config);

// Checks invariants of an assembled config; returns warnings.
std::vector<std::string> validate_config(const SolverConfig& config);

// 64-bit FNV-1a of the serialized config.
std::uint64_t config_hash(const SolverConfig& config);

}  // namespace eplast
