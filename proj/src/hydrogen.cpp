#include "starkvdw/hydrogen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

#include <fmt/core.h>

#include "starkvdw/constants.hpp"
#include "starkvdw/errors.hpp"

namespace starkvdw {

namespace {

// R_nl(r) = poly(r) exp(-decay r) in units of a0.
struct RadialFunction {
  std::array<double, 2> poly;
  double decay;
};

RadialFunction radial(int n, int l) {
  if (n == 1) return {{2.0, 0.0}, 1.0};
  if (l == 0) return {{1.0 / std::sqrt(2.0), -0.5 / std::sqrt(2.0)}, 0.5};
  return {{0.0, 1.0 / (2.0 * std::sqrt(6.0))}, 0.5};
}

double factorial(int k) {
  double out = 1.0;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

// int_0^inf R_a R_b r^3 dr, via int r^k e^(-lambda r) dr = k! / lambda^(k+1).
double radial_r_integral(const RadialFunction& a, const RadialFunction& b) {
  const double lambda = a.decay + b.decay;
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const int k = i + j + 3;
      sum += a.poly[i] * b.poly[j] * factorial(k) / std::pow(lambda, k + 1);
    }
  }
  return sum;
}

// <l' m'| cos(theta) |l m>
double angular_cos(int l1, int m1, int l2, int m2) {
  if (m1 != m2 || std::abs(l1 - l2) != 1) return 0.0;
  const int l = std::min(l1, l2);
  const double m = m1;
  return std::sqrt(((l + 1.0) * (l + 1.0) - m * m) / ((2.0 * l + 1.0) * (2.0 * l + 3.0)));
}

void validate(const QuantumNumbers& s) {
  if (s.n < 1 || s.l < 0 || s.l >= s.n || std::abs(s.m) > s.l)
    throw DomainError(fmt::format("invalid hydrogen state (n={}, l={}, m={})", s.n, s.l, s.m));
  if (s.n > 2)
    throw UnsupportedBasisError(fmt::format("state n={} lies outside the n <= 2 basis", s.n));
}

} // namespace

HydrogenData derived_constants() {
  const auto& k = codata2018;
  HydrogenData h{};
  h.E1 = ev_to_joule(kGroundEnergyEv);
  h.E2 = h.E1 / 4.0;
  const double delta = h.E2 - h.E1;
  h.k0 = 2.0 * std::abs(delta) / (k.hbar * k.c);
  h.mu_eg = std::pow(2.0, 7.5) / std::pow(3.0, 5) * k.q_e * k.a0;
  h.gamma = std::pow(2.0, 9) * k.q_e * k.a0 / (std::pow(3.0, 6) * h.E1);
  h.alpha = 2.0 * h.mu_eg * h.mu_eg / (3.0 * delta);
  h.beta = 2.0 * h.gamma * h.gamma * h.k0 * h.k0 * h.mu_eg * h.mu_eg / (kPi * kPi * k.eps0);
  h.Ebar = delta * delta / (delta + delta);
  return h;
}

const HydrogenData& hydrogen_data() {
  static const HydrogenData data = derived_constants();
  return data;
}

BetaForms beta_forms() {
  const auto& k = codata2018;
  const auto& h = hydrogen_data();
  BetaForms out{};
  out.from_gamma = h.beta;
  const double qa = k.q_e * k.a0;
  out.from_constants = 1.0 / (4.0 * kPi * k.eps0) * std::pow(2.0, 34) * qa * qa * qa * qa /
                       (std::pow(3.0, 20) * kPi * k.hbar * k.hbar * k.c * k.c);
  out.from_polarizability = 9.0 * h.k0 * h.k0 * h.alpha * h.alpha / (4.0 * kPi * kPi * k.eps0);
  return out;
}

double min_separation() { return 10.0 * codata2018.a0; }

double transition_dipole(QuantumNumbers bra, QuantumNumbers ket) {
  validate(bra);
  validate(ket);
  const double ang = angular_cos(bra.l, bra.m, ket.l, ket.m);
  if (ang == 0.0) return 0.0;
  const double rad = radial_r_integral(radial(bra.n, bra.l), radial(ket.n, ket.l));
  return codata2018.q_e * codata2018.a0 * rad * ang;
}

StateCoefficients stark_ground_state(const FieldConfig& fields) {
  require_perturbative(fields.field);
  require_perturbative(fields.field_prime);
  const double g = hydrogen_data().gamma;
  const double e = fields.field;
  const double ep = fields.field_prime;
  const double s2 = std::sqrt(2.0);
  const double mix = std::pow(1.5, 6) / s2;
  StateCoefficients c;
  c.c_gg = 1.0 - g * g * (e * e + ep * ep);
  c.c_eA = -s2 * g * e;
  c.c_eB = -s2 * g * ep;
  c.c_ee = 2.0 * g * g * e * ep;
  c.c_sA = -mix * g * g * e * e;
  c.c_sB = -mix * g * g * ep * ep;
  return c;
}

double induced_dipole(double field) {
  const auto& h = hydrogen_data();
  return -2.0 * std::sqrt(2.0) * h.gamma * h.mu_eg * field;
}

double stark_validity(double field) {
  const auto& h = hydrogen_data();
  const double shift = 1.5 * h.alpha * field * field;
  return shift / h.transition_energy();
}

void require_perturbative(double field) {
  if (!std::isfinite(field)) throw ValidityError("field strength must be finite");
  const double ratio = stark_validity(field);
  if (ratio > kStarkHardRatio)
    throw ValidityError(fmt::format(
        "field {:.3e} V/m exceeds the perturbative limit: Stark shift / transition energy = {:.3e} > {:.0e}",
        field, ratio, kStarkHardRatio));
}

} // namespace starkvdw
