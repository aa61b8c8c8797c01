#include "starkvdw/interaction.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "starkvdw/constants.hpp"
#include "starkvdw/errors.hpp"
#include "starkvdw/hydrogen.hpp"
#include "starkvdw/specfun.hpp"

namespace starkvdw {

std::string_view to_string(Zone z) noexcept { return z == Zone::near ? "near" : "far"; }

std::string_view to_string(Regime r) noexcept {
  switch (r) {
  case Regime::near: return "near";
  case Regime::intermediate: return "intermediate";
  case Regime::far: return "far";
  }
  return "unknown";
}

namespace shape {

namespace {

void require_x(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(fmt::format("k0 r must be positive and finite, got {}", x));
}

} // namespace

// Written through the tails F = x f - 1 and G = x^2 g - 1 so that the
// large-x limit does not cancel 1/x against f.
double perp(double x) {
  require_x(x);
  const auto a = specfun::aux_fg(x);
  const double x2 = x * x;
  return a.f / (x2 * x) + (a.g - a.f_tail) / x2;
}

double par(double x) {
  require_x(x);
  const auto a = specfun::aux_fg(x);
  return -2.0 * (a.f / x + a.g) / (x * x);
}

double general(double x, double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return s * s * perp(x) + c * c * par(x);
}

double perp_derivative(double x) {
  require_x(x);
  const auto a = specfun::aux_fg(x);
  return (-3.0 * a.g - 3.0 * a.f / x + a.g_tail + 2.0 * a.f_tail) / (x * x * x);
}

double par_derivative(double x) {
  require_x(x);
  const auto a = specfun::aux_fg(x);
  return 2.0 * (3.0 * a.g + 3.0 * a.f / x - a.f_tail) / (x * x * x);
}

double general_derivative(double x, double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return s * s * perp_derivative(x) + c * c * par_derivative(x);
}

double asymptotic(double x, Orientation orientation, Zone zone) {
  require_x(x);
  const double near_coeff = orientation == Orientation::perp ? 0.5 * kPi : -kPi;
  const double far_coeff = orientation == Orientation::perp ? 4.0 : -4.0;
  return zone == Zone::near ? near_coeff / (x * x * x) : far_coeff / (x * x * x * x);
}

} // namespace shape

void validate_geometry(const Geometry& geometry) {
  const double r_min = min_separation();
  if (!std::isfinite(geometry.r) || geometry.r < r_min)
    throw DomainError(fmt::format(
        "interatomic distance {:.6e} m is below r_min = 10 a0 = {:.6e} m (dipole approximation bound)",
        geometry.r, r_min));
  if (!std::isfinite(geometry.theta) || geometry.theta < 0.0 || geometry.theta > kPi)
    throw DomainError(fmt::format("theta = {} rad must lie in [0, pi]", geometry.theta));
}

double field_energy_scale(const FieldConfig& fields) {
  const auto& h = hydrogen_data();
  return h.beta * fields.field * fields.field_prime * h.k0;
}

double delta_e_perp(double r, const FieldConfig& fields) {
  validate_geometry({r, 0.5 * kPi});
  return field_energy_scale(fields) * shape::perp(hydrogen_data().k0 * r);
}

double delta_e_par(double r, const FieldConfig& fields) {
  validate_geometry({r, 0.0});
  return field_energy_scale(fields) * shape::par(hydrogen_data().k0 * r);
}

double delta_e_general(const Geometry& geometry, const FieldConfig& fields) {
  validate_geometry(geometry);
  return field_energy_scale(fields) * shape::general(hydrogen_data().k0 * geometry.r, geometry.theta);
}

double delta_e_asymptotic(double r, Orientation orientation, Zone zone, const FieldConfig& fields) {
  validate_geometry({r, 0.0});
  return field_energy_scale(fields) * shape::asymptotic(hydrogen_data().k0 * r, orientation, zone);
}

namespace {

double vdw_near_coefficient() {
  const auto& h = hydrogen_data();
  const double eps0 = codata2018.eps0;
  return 3.0 / (64.0 * kPi * kPi * eps0 * eps0) * h.Ebar * h.alpha * h.alpha;
}

double vdw_far_coefficient() {
  const auto& h = hydrogen_data();
  const auto& k = codata2018;
  return 23.0 * k.hbar * k.c / (64.0 * kPi * kPi * kPi * k.eps0 * k.eps0) * h.alpha * h.alpha;
}

bool near_branch(double r) { return hydrogen_data().k0 * r <= kVdwSwitch; }

} // namespace

double vdw_near_formula(double r) { return -vdw_near_coefficient() / std::pow(r, 6); }

double vdw_far_formula(double r) { return -vdw_far_coefficient() / std::pow(r, 7); }

Regime classify_regime(double r) {
  const double x = hydrogen_data().k0 * r;
  if (x < kIntermediateLow) return Regime::near;
  if (x > kIntermediateHigh) return Regime::far;
  return Regime::intermediate;
}

VdwBaseline vdw_baseline(double r) {
  validate_geometry({r, 0.0});
  if (near_branch(r)) return {vdw_near_formula(r), Zone::near, classify_regime(r)};
  return {vdw_far_formula(r), Zone::far, classify_regime(r)};
}

InteractionBreakdown total_energy(const Geometry& geometry, const FieldConfig& fields) {
  validate_geometry(geometry);
  require_perturbative(fields.field);
  require_perturbative(fields.field_prime);

  InteractionBreakdown out;
  out.field_component = delta_e_general(geometry, fields);
  const auto vdw = vdw_baseline(geometry.r);
  out.vdw_component = vdw.energy;
  out.total = out.field_component + out.vdw_component;
  out.regime = vdw.regime;

  const double stark = std::max(stark_validity(fields.field), stark_validity(fields.field_prime));
  if (stark > kStarkWarnRatio)
    out.warnings.push_back(fmt::format("stark_soft_limit({:.2e})", stark));
  if (out.regime == Regime::intermediate) out.warnings.emplace_back("vdw_intermediate_zone");
  return out;
}

double field_force(const Geometry& geometry, const FieldConfig& fields) {
  validate_geometry(geometry);
  const double k0 = hydrogen_data().k0;
  return -field_energy_scale(fields) * k0 * shape::general_derivative(k0 * geometry.r, geometry.theta);
}

double vdw_force(double r) {
  validate_geometry({r, 0.0});
  // E = -C / r^n  =>  -dE/dr = -n C / r^(n+1)
  if (near_branch(r)) return 6.0 * vdw_near_formula(r) / r;
  return 7.0 * vdw_far_formula(r) / r;
}

double radial_force(const Geometry& geometry, const FieldConfig& fields) {
  require_perturbative(fields.field);
  require_perturbative(fields.field_prime);
  return field_force(geometry, fields) + vdw_force(geometry.r);
}

} // namespace starkvdw
