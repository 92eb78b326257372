#pragma once

// Named scenarios and material presets, and the initial fields they realize.

#include <string>
#include <string_view>
#include <vector>

#include "eplast/config.hpp"

namespace eplast {

struct NamedEntry {
  std::string name;
  std::string summary;
};

std::vector<NamedEntry> list_scenarios();
std::vector<NamedEntry> list_materials();

// Defaults of a scenario, including its material preset. Throws UnknownName.
SolverConfig scenario_defaults(std::string_view name);

// Throws UnknownName.
MaterialModel material_preset(std::string_view name);

// Human-readable parameter listing. Throws UnknownName.
std::string describe_material(std::string_view name);

// Initial reference map, including the ghost layer where it is held fixed.
VectorField initial_reference_map(const SolverConfig& config);

// Fully initialized state: v, xi, Fp = I, w = omega(theta0), theta.
StateFields initial_state(const SolverConfig& config);

}  // namespace eplast
