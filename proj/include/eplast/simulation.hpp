#pragma once

// The time-stepping driver: transport, momentum, flow rule, heat and audit
// in that order, once per step.

#include "eplast/audit.hpp"
#include "eplast/config.hpp"
#include "eplast/thermal.hpp"

namespace eplast {

struct StepDiagnostics {
  int step = 0;
  EnergyReport energy;
  TemperatureReport temperature;
  double exponential_drift = 0.0;  // max |det(exp(dt Lp) Fp) / det Fp - 1|
  double isochoric_defect = 0.0;   // max |det Fp - 1| after renormalization
  double max_plastic_rate = 0.0;   // max |Lp|
  double mean_plastic_rate = 0.0;  // volume average of |Lp|
  double cfl = 0.0;
  int cg_momentum = 0;
  int cg_flow = 0;
  int cg_heat = 0;
  int flow_iterations = 0;
  double flow_residual = 0.0;
};

class Simulator {
 public:
  explicit Simulator(SolverConfig config);
  Simulator(SolverConfig config, StateFields initial);

  // Advances one step. On error the state is left at the last completed step.
  const StepDiagnostics& step();

  const StateFields& state() const { return state_; }
  const StepDiagnostics& last() const { return last_; }
  const SolverConfig& config() const { return config_; }
  double time() const { return last_.energy.t; }
  int step_index() const { return last_.step; }

 private:
  SolverConfig config_;
  StateFields state_;
  StepDiagnostics last_;
};

}  // namespace eplast
