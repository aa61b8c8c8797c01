#include "starkvdw/constants.hpp"

#include <cmath>

namespace starkvdw {

double ev_to_joule(double ev) noexcept { return ev * codata2018.q_e; }

double joule_to_ev(double joule) noexcept { return joule / codata2018.q_e; }

double bohr_radius_consistency(const PhysicalConstants& k) noexcept {
  const double derived = 4.0 * kPi * k.eps0 * k.hbar * k.hbar / (k.m_e * k.q_e * k.q_e);
  return std::abs(derived - k.a0) / k.a0;
}

} // namespace starkvdw
