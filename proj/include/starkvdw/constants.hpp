#pragma once

// CODATA 2018 constants in SI. Everything inside the library is SI; eV only
// appears at the presentation boundary.

namespace starkvdw {

struct PhysicalConstants {
  double hbar; // J s
  double c;    // m/s
  double eps0; // C^2 / (J m)
  double q_e;  // C, positive elementary charge
  double a0;   // m, Bohr radius
  double m_e;  // kg
};

inline constexpr PhysicalConstants codata2018{
    .hbar = 1.054571817e-34,
    .c = 299792458.0,
    .eps0 = 8.8541878128e-12,
    .q_e = 1.602176634e-19,
    .a0 = 5.29177210903e-11,
    .m_e = 9.1093837015e-31,
};

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.5772156649015329;

/// Ground-state energy of hydrogen used throughout, in eV (textbook Rydberg).
inline constexpr double kGroundEnergyEv = -13.6057;

double ev_to_joule(double ev) noexcept;
double joule_to_ev(double joule) noexcept;

/// Relative mismatch of a0 against 4 pi eps0 hbar^2 / (m_e q_e^2).
double bohr_radius_consistency(const PhysicalConstants& k = codata2018) noexcept;

} // namespace starkvdw
