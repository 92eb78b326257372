#include "eplast/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "eplast/error.hpp"

namespace eplast {

namespace {

constexpr double pi = 3.14159265358979323846;

double checked_jacobian(const Tensor2& Fe) {
  const double J = det(Fe);
  if (!(J > 0.0)) {
    std::ostringstream os;
    os << "det Fe = " << J;
    throw Error(ErrorKind::non_positive_determinant, os.str());
  }
  return J;
}

void require_nonnegative(double theta) {
  if (theta < 0.0 || std::isnan(theta)) {
    std::ostringstream os;
    os << "theta = " << theta;
    throw Error(ErrorKind::negative_temperature, os.str());
  }
}

void throw_if_any(const std::vector<std::string>& problems, const char* what) {
  if (problems.empty()) return;
  std::ostringstream os;
  os << what << ":";
  for (const auto& p : problems) os << " " << p << ";";
  throw Error(ErrorKind::validation_error, os.str());
}

// Blend in the determinant; 1 for det >= lambda, 0 for det <= lambda/2.
double det_factor(double d, double lambda, double* slope) {
  if (d >= lambda) { *slope = 0.0; return 1.0; }
  if (d <= 0.5 * lambda) { *slope = 0.0; return 0.0; }
  const double s = 2.0 * d - lambda;
  const double l2 = lambda * lambda, l3 = l2 * lambda;
  *slope = 2.0 * (6.0 * s / l2 - 6.0 * s * s / l3);
  return 3.0 * s * s / l2 - 2.0 * s * s * s / l3;
}

// Blend in the norm; 1 for |F| <= 1/lambda, 0 for |F| >= 2/lambda.
double norm_factor(double n, double lambda, double* slope) {
  if (n <= 1.0 / lambda) { *slope = 0.0; return 1.0; }
  if (n >= 2.0 / lambda) { *slope = 0.0; return 0.0; }
  const double r = lambda * n - 2.0;
  *slope = lambda * (6.0 * r + 6.0 * r * r);
  return 3.0 * r * r + 2.0 * r * r * r;
}

}  // namespace

double PlasticViscosity::operator()(double theta) const {
  if (law == Law::constant) return m0;
  return m0 * std::max(0.0, 1.0 - theta / theta_melt) + floor;
}

double PlasticViscosity::infimum() const { return law == Law::constant ? m0 : floor; }

double SpatialModulation::factor(const Point& X) const {
  switch (kind) {
    case Kind::constant:
      return 1.0;
    case Kind::linear: {
      const double s = std::clamp(direction.x * X[0] + direction.y * X[1], 0.0, 1.0);
      return 1.0 + amplitude * (2.0 * s - 1.0);
    }
    case Kind::checkerboard: {
      const double s = std::sin(pi * X[0] / period) * std::sin(pi * X[1] / period);
      return 1.0 + amplitude * std::tanh(s * period / (pi * width));
    }
  }
  return 1.0;
}

double BoundaryFlux::flux(double, const Point&, double theta) const {
  return kind == Kind::newton ? k * (theta_ext - theta) : 0.0;
}

double BoundaryFlux::dflux_dtheta(double, const Point&, double) const {
  return kind == Kind::newton ? -k : 0.0;
}

void MaterialModel::validate() const {
  std::vector<std::string> bad;
  if (!(bulk >= 0.0)) bad.push_back("K_E must be >= 0");
  if (!(shear >= 0.0)) bad.push_back("G_E must be >= 0");
  if (!(hardening >= 0.0)) bad.push_back("H_E must be >= 0");
  if (!(heat_capacity > 0.0)) bad.push_back("c must be > 0");
  if (!(coupling > 0.0)) bad.push_back("c1 must be > 0");
  if (!(alpha > 1.0 && alpha <= 2.0)) bad.push_back("alpha must satisfy 1 < alpha <= 2");
  if (!(viscosity.infimum() > 0.0)) bad.push_back("plastic viscosity must have a positive infimum");
  if (viscosity.law == PlasticViscosity::Law::melting_ramp && !(viscosity.theta_melt > 0.0))
    bad.push_back("theta_melt must be > 0");
  if (!(viscosity.m0 >= 0.0)) bad.push_back("M0 must be >= 0");
  if (!(kappa > 0.0)) bad.push_back("kappa must be > 0");
  if (!(density > 0.0)) bad.push_back("rho_R must be > 0");
  if (!(std::abs(modulation.amplitude) < 1.0)) bad.push_back("modulation amplitude must lie in (-1, 1)");
  if (modulation.kind == SpatialModulation::Kind::checkerboard &&
      !(modulation.period > 0.0 && modulation.width > 0.0))
    bad.push_back("checkerboard period and width must be > 0");
  throw_if_any(bad, "material");
}

void DissipationParams::validate() const {
  std::vector<std::string> bad;
  if (!(nu0 >= 0.0 && nu1 >= 0.0 && nu2 >= 0.0)) bad.push_back("viscosities must be >= 0");
  if (!(p >= 2.0)) bad.push_back("p must be >= 2");
  if (!(q >= 2.0)) bad.push_back("q must be >= 2");
  throw_if_any(bad, "dissipation");
}

void CutoffParams::validate() const {
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw Error(ErrorKind::validation_error, "cutoff: lambda must lie in (0, 1]");
}

double stored_energy(const MaterialModel& m, const Point& X, const Tensor2& Fe) {
  const double J = checked_jacobian(Fe);
  const int d = Fe.dim();
  const double iso = std::pow(J, -2.0 / d) * contract(Fe, Fe) - d;
  return 0.5 * m.bulk_at(X) * (J - 1.0) * (J - 1.0) + 0.5 * m.shear_at(X) * iso;
}

Tensor2 stored_stress(const MaterialModel& m, const Point& X, const Tensor2& Fe) {
  const double J = checked_jacobian(Fe);
  const int d = Fe.dim();
  const Tensor2 cof = cofactor(Fe);
  const double n2 = contract(Fe, Fe);
  // F^-T = Cof F / J
  const Tensor2 iso = Fe - (n2 / (d * J)) * cof;
  return (m.bulk_at(X) * (J - 1.0)) * cof + (m.shear_at(X) * std::pow(J, -2.0 / d)) * iso;
}

ThermalPart thermal_energy(const MaterialModel& m, const Point&, const Tensor2& Fe, double theta) {
  require_nonnegative(theta);
  const double J = checked_jacobian(Fe);
  const double c = m.heat_capacity, c1 = m.coupling, a = m.alpha;
  ThermalPart out;
  const double ta = std::pow(theta, a);
  out.d_fe = (-c1 * ta) * cofactor(Fe);
  if (theta == 0.0) {
    out.energy = 0.0;
    out.d_theta = std::numeric_limits<double>::infinity();
    return out;
  }
  const double lt = std::log(theta);
  out.energy = -c * theta * (lt - 1.0) - c1 * J * ta;
  out.d_theta = -c * lt - c1 * a * J * std::pow(theta, a - 1.0);
  return out;
}

HardeningPart hardening_energy(const MaterialModel& m, const Point& X, const Tensor2& Fp) {
  const double h = m.hardening_at(X);
  return {0.5 * h * contract(Fp, Fp), h * Fp};
}

Tensor2 elastic_cauchy_stress(const MaterialModel& m, const Point& X, const Tensor2& Fe, double theta,
                              const CutoffParams& cutoff) {
  const double J = checked_jacobian(Fe);
  const Tensor2 dphi = stored_stress(m, X, Fe);
  const Tensor2 dgamma = thermal_energy(m, X, Fe, theta).d_fe;
  if (!cutoff.enabled) return (1.0 / J) * ((dphi + dgamma) * transpose(Fe));
  const double p = cutoff_pi(Fe, cutoff);
  Tensor2 s = stored_energy(m, X, Fe) * cutoff_pi_gradient(Fe, cutoff);
  s += p * dphi;
  s += p * dgamma;
  return (1.0 / J) * (s * transpose(Fe));
}

Tensor2 mandel_driving_force(const MaterialModel& m, const Point& X, const Tensor2& Fe, const Tensor2& Fp,
                             double theta, const CutoffParams& cutoff) {
  const Tensor2 FeT = transpose(Fe);
  const Tensor2 dphi = stored_stress(m, X, Fe);
  const Tensor2 dgamma = thermal_energy(m, X, Fe, theta).d_fe;
  const Tensor2 back = hardening_energy(m, X, Fp).gradient * transpose(Fp);
  if (!cutoff.enabled) return dev(FeT * (dphi + dgamma) - back);
  const double p = cutoff_pi(Fe, cutoff);
  Tensor2 s = stored_energy(m, X, Fe) * cutoff_pi_gradient(Fe, cutoff);
  s += p * dphi;
  s += p * dgamma;
  return dev(FeT * s - back);
}

double plastic_dissipation_potential(const MaterialModel& m, double theta, const Tensor2& Lp) {
  require_nonnegative(theta);
  return 0.5 * m.viscosity(theta) * contract(Lp, Lp);
}

Tensor2 plastic_dissipation_gradient(const MaterialModel& m, double theta, const Tensor2& Lp) {
  require_nonnegative(theta);
  if (std::abs(trace(Lp)) > 1e-10 * norm(Lp)) {
    std::ostringstream os;
    os << "tr Lp = " << trace(Lp);
    throw Error(ErrorKind::non_deviatoric_input, os.str());
  }
  return m.viscosity(theta) * Lp;
}

Enthalpy heat_internal_energy(const MaterialModel& m, const Point&, const Tensor2& Fe, double theta) {
  require_nonnegative(theta);
  const double J = checked_jacobian(Fe);
  const double c = m.heat_capacity, c1 = m.coupling, a = m.alpha;
  return {c * theta / J + c1 * (a - 1.0) * std::pow(theta, a),
          c / J + c1 * a * (a - 1.0) * std::pow(theta, a - 1.0)};
}

double invert_enthalpy(const MaterialModel& m, const Point& X, const Tensor2& Fe, double w) {
  if (w < 0.0 || std::isnan(w)) {
    std::ostringstream os;
    os << "w = " << w;
    throw Error(ErrorKind::negative_enthalpy, os.str());
  }
  if (w == 0.0) return 0.0;
  const double J = checked_jacobian(Fe);
  // omega >= c theta / J bounds the root from above.
  double lo = 0.0, hi = w * J / m.heat_capacity;
  double theta = hi;
  for (int it = 0; it < 100; ++it) {
    const Enthalpy e = heat_internal_energy(m, X, Fe, theta);
    const double f = e.w - w;
    if (f == 0.0) return theta;
    if (f > 0.0) hi = theta; else lo = theta;
    double next = theta - f / e.dw_dtheta;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - theta);
    theta = next;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(theta, 1e-300) || hi - lo <= 0.0)
      return theta;
  }
  std::ostringstream os;
  os << "enthalpy inversion for w = " << w << " did not converge in 100 iterations";
  throw Error(ErrorKind::no_convergence, os.str());
}

double cutoff_pi(const Tensor2& Fe, const CutoffParams& params) {
  double s1 = 0.0, s2 = 0.0;
  return det_factor(det(Fe), params.lambda, &s1) * norm_factor(norm(Fe), params.lambda, &s2);
}

Tensor2 cutoff_pi_gradient(const Tensor2& Fe, const CutoffParams& params) {
  double s1 = 0.0, s2 = 0.0;
  const double n = norm(Fe);
  const double f1 = det_factor(det(Fe), params.lambda, &s1);
  const double f2 = norm_factor(n, params.lambda, &s2);
  Tensor2 g = (s1 * f2) * cofactor(Fe);
  if (s2 != 0.0) g += (f1 * s2 / n) * Fe;
  return g;
}

double det_lambda(const Tensor2& A, const CutoffParams& params) {
  const double p = cutoff_pi(A, params);
  return p * det(A) + (1.0 - p);
}

double conductivity(const MaterialModel& m, const Point&, const Tensor2&, double) { return m.kappa; }

}  // namespace eplast
