#pragma once

// Neo-Hookean elasticity with quadratic hardening, the thermal coupling
// energy with its enthalpy, quadratic plastic dissipation, conduction,
// boundary heat flux and the optional det/norm cutoff.

#include <array>
#include <string>

#include "eplast/tensor.hpp"

namespace eplast {

// Referential point; z is ignored by the planar presets.
using Point = std::array<double, 3>;

inline Point to_point(const Vec2& v) { return {v.x, v.y, 0.0}; }

struct PlasticViscosity {
  enum class Law { constant, melting_ramp };
  Law law = Law::constant;
  double m0 = 1.0;
  double floor = 0.0;       // added to the ramp; must be > 0 for the ramp
  double theta_melt = 1.0;

  double operator()(double theta) const;
  double infimum() const;
  friend bool operator==(const PlasticViscosity&, const PlasticViscosity&) = default;
};

struct SpatialModulation {
  enum class Kind { constant, linear, checkerboard };
  Kind kind = Kind::constant;
  double amplitude = 0.0;   // relative contrast
  double period = 0.5;      // checkerboard tile size (m)
  double width = 0.02;      // checkerboard interface smoothing (m)
  Vec2 direction{1.0, 0.0}; // linear ramp direction

  double factor(const Point& X) const;
  friend bool operator==(const SpatialModulation&, const SpatialModulation&) = default;
};

struct BoundaryFlux {
  enum class Kind { insulated, newton };
  Kind kind = Kind::insulated;
  double k = 0.0;
  double theta_ext = 0.0;

  // Heat influx n.kappa.grad(theta) through the boundary (W/m^2).
  double flux(double t, const Point& x, double theta) const;
  double dflux_dtheta(double t, const Point& x, double theta) const;
  friend bool operator==(const BoundaryFlux&, const BoundaryFlux&) = default;
};

struct MaterialModel {
  std::string name = "neo_hookean_default";
  double bulk = 1.0;       // K_E
  double shear = 1.0;      // G_E
  double hardening = 0.1;  // H_E
  double heat_capacity = 1.0;  // c
  double coupling = 1e-3;      // c1
  double alpha = 2.0;
  double kappa = 1e-3;
  double density = 1.0;    // reference density
  PlasticViscosity viscosity{};
  SpatialModulation modulation{};

  double bulk_at(const Point& X) const { return bulk * modulation.factor(X); }
  double shear_at(const Point& X) const { return shear * modulation.factor(X); }
  double hardening_at(const Point& X) const { return hardening * modulation.factor(X); }
  double density_at(const Point& X) const { return density * modulation.factor(X); }

  // Throws ValidationError listing every violated bound.
  void validate() const;
  friend bool operator==(const MaterialModel&, const MaterialModel&) = default;
};

struct DissipationParams {
  double nu0 = 0.1;
  double nu1 = 1e-6;
  double nu2 = 1e-6;
  double p = 4.0;
  double q = 4.0;

  void validate() const;
  // True when p or q does not exceed the planar dimension.
  bool below_analysis_exponents(int dim = 2) const { return p <= dim || q <= dim; }
  friend bool operator==(const DissipationParams&, const DissipationParams&) = default;
};

struct CutoffParams {
  double lambda = 0.5;
  bool enabled = false;

  void validate() const;
  friend bool operator==(const CutoffParams&, const CutoffParams&) = default;
};

double stored_energy(const MaterialModel& m, const Point& X, const Tensor2& Fe);
Tensor2 stored_stress(const MaterialModel& m, const Point& X, const Tensor2& Fe);

struct ThermalPart {
  double energy = 0.0;
  Tensor2 d_fe;
  double d_theta = 0.0;
};
ThermalPart thermal_energy(const MaterialModel& m, const Point& X, const Tensor2& Fe, double theta);

struct HardeningPart {
  double energy = 0.0;
  Tensor2 gradient;
};
HardeningPart hardening_energy(const MaterialModel& m, const Point& X, const Tensor2& Fp);

Tensor2 elastic_cauchy_stress(const MaterialModel& m, const Point& X, const Tensor2& Fe, double theta,
                              const CutoffParams& cutoff = {});

Tensor2 mandel_driving_force(const MaterialModel& m, const Point& X, const Tensor2& Fe, const Tensor2& Fp,
                             double theta, const CutoffParams& cutoff = {});

double plastic_dissipation_potential(const MaterialModel& m, double theta, const Tensor2& Lp);
Tensor2 plastic_dissipation_gradient(const MaterialModel& m, double theta, const Tensor2& Lp);

struct Enthalpy {
  double w = 0.0;
  double dw_dtheta = 0.0;
};
Enthalpy heat_internal_energy(const MaterialModel& m, const Point& X, const Tensor2& Fe, double theta);
double invert_enthalpy(const MaterialModel& m, const Point& X, const Tensor2& Fe, double w);

double cutoff_pi(const Tensor2& Fe, const CutoffParams& params);
Tensor2 cutoff_pi_gradient(const Tensor2& Fe, const CutoffParams& params);
double det_lambda(const Tensor2& A, const CutoffParams& params);

double conductivity(const MaterialModel& m, const Point& X, const Tensor2& Fe, double theta);

}  // namespace eplast
