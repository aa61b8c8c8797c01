#pragma once

// Hydrogen data restricted to the n <= 2 basis: energies, dipole matrix
// elements, Stark mixing, polarizability, and the coupling constant beta of
// the field-assisted interaction. Dipole convention: mu_z = q z with q > 0.

#include "starkvdw/geometry.hpp"

namespace starkvdw {

struct QuantumNumbers {
  int n = 1;
  int l = 0;
  int m = 0;
};

struct HydrogenData {
  double E1;    // J, ground level (negative)
  double E2;    // J, first excited level, E1 / 4
  double k0;    // 1/m, 2 |E2 - E1| / (hbar c)
  double mu_eg; // C m, <210| mu_z |100>
  double gamma; // C m / J, 2^9 q a0 / (3^6 E1); negative
  double alpha; // C^2 m^2 / J, static polarizability from n = 2 only
  double beta;  // C^2 m^3 / J
  double Ebar;  // J, E_A E_B / (E_A + E_B)

  double transition_energy() const noexcept { return E2 - E1; }
};

/// Fills every HydrogenData field from the constant set and E1.
HydrogenData derived_constants();

/// Process-wide immutable instance of derived_constants().
const HydrogenData& hydrogen_data();

/// The three algebraically equivalent expressions for beta.
struct BetaForms {
  double from_gamma;
  double from_constants;
  double from_polarizability;
};
BetaForms beta_forms();

/// Smallest interatomic distance accepted anywhere in the library (10 a0).
double min_separation();

/// q <n'l'm'| z |nlm> from closed-form radial and angular integrals.
double transition_dipole(QuantumNumbers bra, QuantumNumbers ket);

/// Two-atom amplitudes of the field-perturbed ground state through second
/// order in the fields.
struct StateCoefficients {
  double c_gg = 1.0; // |100,100>
  double c_eA = 0.0; // |210,100>
  double c_eB = 0.0; // |100,210>
  double c_ee = 0.0; // |210,210>
  double c_sA = 0.0; // |200,100>
  double c_sB = 0.0; // |100,200>

  double norm_squared() const noexcept {
    return c_gg * c_gg + c_eA * c_eA + c_eB * c_eB + c_ee * c_ee + c_sA * c_sA + c_sB * c_sB;
  }
};

StateCoefficients stark_ground_state(const FieldConfig& fields);

/// <psi| mu_z |psi> through first order in the field, C m.
double induced_dipole(double field);

inline constexpr double kStarkWarnRatio = 1e-6;
inline constexpr double kStarkHardRatio = 1e-2;

/// |quadratic Stark shift| / (E2 - E1) in the n = 2 truncated model.
double stark_validity(double field);

/// Throws ValidityError when |field| exceeds the hard perturbative limit.
void require_perturbative(double field);

} // namespace starkvdw
