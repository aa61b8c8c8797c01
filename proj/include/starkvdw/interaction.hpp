#pragma once

// Field-assisted dispersion energy between two ground-state hydrogen atoms in
// static fields along z, the unperturbed van der Waals baseline, and forces.
//
// With x = k0 r the field term is
//
//   dE(r, theta) = beta E E' k0 [ sin^2(theta) S_perp(x) + cos^2(theta) S_par(x) ]
//
//   S_perp(x) = [ f (1/x^2 - 1) + g / x + 1/x ] / x
//   S_par(x)  = -2 [ f / x^2 + g / x ] / x
//
// The angular weights come from the tensor (-lap delta_ij + d_i d_j) acting
// on f(k0 r)/r with both dipoles along z.

#include <string>
#include <string_view>
#include <vector>

#include "starkvdw/geometry.hpp"

namespace starkvdw {

enum class Orientation { perp, par };
enum class Zone { near, far };
enum class Regime { near, intermediate, far };

std::string_view to_string(Zone z) noexcept;
std::string_view to_string(Regime r) noexcept;

/// Regime band in k0 r where the piecewise vdW baseline carries model error.
inline constexpr double kIntermediateLow = 0.1;
inline constexpr double kIntermediateHigh = 10.0;
/// k0 r at which the vdW baseline switches from the near to the far formula.
inline constexpr double kVdwSwitch = 1.0;

/// Dimensionless profiles. No range guard: they are valid for any x > 0.
namespace shape {

double perp(double x);
double par(double x);
double general(double x, double theta);
double perp_derivative(double x);
double par_derivative(double x);
double general_derivative(double x, double theta);
/// Leading near/far asymptote of perp or par.
double asymptotic(double x, Orientation orientation, Zone zone);

} // namespace shape

/// beta E E' k0, the energy scale multiplying the shape functions.
double field_energy_scale(const FieldConfig& fields);

double delta_e_perp(double r, const FieldConfig& fields);
double delta_e_par(double r, const FieldConfig& fields);
double delta_e_general(const Geometry& geometry, const FieldConfig& fields);
double delta_e_asymptotic(double r, Orientation orientation, Zone zone, const FieldConfig& fields);

/// Raw near- and far-zone vdW formulas, without range guard or branch logic.
double vdw_near_formula(double r);
double vdw_far_formula(double r);

struct VdwBaseline {
  double energy;
  Zone branch;
  Regime regime;
};

/// Near formula for k0 r <= 1, far formula above.
VdwBaseline vdw_baseline(double r);

Regime classify_regime(double r);

struct InteractionBreakdown {
  double field_component = 0.0;
  double vdw_component = 0.0;
  double total = 0.0;
  Regime regime = Regime::near;
  std::vector<std::string> warnings;
};

InteractionBreakdown total_energy(const Geometry& geometry, const FieldConfig& fields);

/// -d(total)/dr in N; positive is repulsive.
double radial_force(const Geometry& geometry, const FieldConfig& fields);
double field_force(const Geometry& geometry, const FieldConfig& fields);
double vdw_force(double r);

/// Throws DomainError unless r >= min_separation() and theta in [0, pi].
void validate_geometry(const Geometry& geometry);

} // namespace starkvdw
