#include <cmath>

#include <doctest.h>

#include "starkvdw/constants.hpp"
#include "starkvdw/errors.hpp"
#include "starkvdw/hydrogen.hpp"
#include "starkvdw/oracle.hpp"

using namespace starkvdw;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
const double qa0 = codata2018.q_e * codata2018.a0;
} // namespace

TEST_CASE("transition dipoles") {
  const double mu = transition_dipole({2, 1, 0}, {1, 0, 0});
  CHECK(rel(mu, std::pow(2.0, 7.5) / 243.0 * qa0) < 1e-12);
  CHECK(mu / qa0 == doctest::Approx(0.74494).epsilon(1e-5));
  CHECK(transition_dipole({2, 0, 0}, {1, 0, 0}) == 0.0);
  CHECK(transition_dipole({2, 1, 1}, {1, 0, 0}) == 0.0);
  CHECK(transition_dipole({2, 1, -1}, {2, 0, 0}) == 0.0);
  CHECK(rel(transition_dipole({2, 0, 0}, {2, 1, 0}), -3.0 * qa0) < 1e-12);
  CHECK(rel(mu, hydrogen_data().mu_eg) < 1e-8);
}

TEST_CASE("transition dipole is symmetric") {
  const QuantumNumbers basis[] = {{1, 0, 0}, {2, 0, 0}, {2, 1, 0}, {2, 1, 1}, {2, 1, -1}};
  for (const auto& a : basis)
    for (const auto& b : basis) CHECK(transition_dipole(a, b) == transition_dipole(b, a));
}

TEST_CASE("transition dipole rejects bad states") {
  CHECK_THROWS_AS(transition_dipole({3, 1, 0}, {1, 0, 0}), UnsupportedBasisError);
  CHECK_THROWS_AS(transition_dipole({2, 2, 0}, {1, 0, 0}), DomainError);
  CHECK_THROWS_AS(transition_dipole({2, 1, 2}, {1, 0, 0}), DomainError);
  CHECK_THROWS_AS(transition_dipole({0, 0, 0}, {1, 0, 0}), DomainError);
}

TEST_CASE("derived constants") {
  const auto h = derived_constants();
  CHECK(rel(h.k0, 1.034e8) < 5e-3);
  CHECK(h.E2 == h.E1 / 4);
  CHECK(rel(h.k0, 2 * std::abs(h.E2 - h.E1) / (codata2018.hbar * codata2018.c)) < 1e-15);
  CHECK(rel(joule_to_ev(h.E2 - h.E1), 10.20) < 1e-3);
  CHECK(h.gamma < 0);
  CHECK(rel(h.alpha, 2 * h.mu_eg * h.mu_eg / (3 * (h.E2 - h.E1))) < 1e-15);
  CHECK(rel(h.Ebar, (h.E2 - h.E1) / 2) < 1e-15);
  CHECK(h.beta == hydrogen_data().beta);
}

TEST_CASE("beta three ways") {
  const auto b = beta_forms();
  CHECK(rel(b.from_gamma, b.from_constants) < 1e-12);
  CHECK(rel(b.from_gamma, b.from_polarizability) < 1e-12);
  CHECK(rel(b.from_constants, b.from_polarizability) < 1e-12);
}

TEST_CASE("stark ground state coefficients") {
  const auto zero = stark_ground_state({0.0, 0.0});
  CHECK(zero.c_gg == 1.0);
  CHECK(zero.c_eA == 0.0);
  CHECK(zero.c_eB == 0.0);
  CHECK(zero.c_ee == 0.0);
  CHECK(zero.c_sA == 0.0);
  CHECK(zero.c_sB == 0.0);

  const double g = hydrogen_data().gamma;
  const auto c = stark_ground_state({2e6, -3e6});
  CHECK(rel(c.c_eA, -std::sqrt(2.0) * g * 2e6) < 1e-15);
  CHECK(rel(c.c_eB, -std::sqrt(2.0) * g * -3e6) < 1e-15);
  CHECK(rel(c.c_ee, 2 * g * g * 2e6 * -3e6) < 1e-15);
  CHECK(rel(c.c_sA, -std::pow(1.5, 6) / std::sqrt(2.0) * g * g * 4e12) < 1e-15);
  CHECK(rel(c.c_sB, -std::pow(1.5, 6) / std::sqrt(2.0) * g * g * 9e12) < 1e-15);

  const auto flipped = stark_ground_state({-2e6, -3e6});
  CHECK(flipped.c_eA == -c.c_eA);
  CHECK(flipped.c_ee == -c.c_ee);
  CHECK(flipped.c_sA == c.c_sA);
  CHECK(stark_ground_state({2e6, 3e6}).c_ee == -c.c_ee);
}

TEST_CASE("normalization holds to second order") {
  const double g2 = std::pow(hydrogen_data().gamma, 2);
  for (double e : {1e4, 1e6, 1e8, 1e9}) {
    const auto c = stark_ground_state({e, 0.7 * e});
    // bound set by the gamma^2 scale: |sum - 1| <= K gamma^4 E^4
    CHECK(std::abs(c.norm_squared() - 1.0) <= 100 * g2 * g2 * std::pow(e, 4) + 1e-15);
  }
}

TEST_CASE("coefficients match the diagonalized single-atom hamiltonian") {
  const double e = 1e6;
  const auto c = stark_ground_state({e, 0.0});
  const auto v = oracle::single_atom_ground_state(e);
  CHECK(rel(c.c_eA, v[2]) < 1e-4);
  CHECK(rel(c.c_sA, v[1]) < 1e-4);
  CHECK(c.c_eB == 0.0);
  CHECK(c.c_ee == 0.0);
}

TEST_CASE("stark ground state rejects strong fields") {
  CHECK_THROWS_AS(stark_ground_state({1e11, 0.0}), ValidityError);
  CHECK_THROWS_AS(stark_ground_state({0.0, -1e11}), ValidityError);
}

TEST_CASE("induced dipole") {
  const auto& h = hydrogen_data();
  CHECK(induced_dipole(0.0) == 0.0);
  CHECK(induced_dipole(1e5) > 0);
  CHECK(induced_dipole(-1e5) < 0);
  CHECK(rel(induced_dipole(1e5), -2 * std::sqrt(2.0) * h.gamma * h.mu_eg * 1e5) < 1e-15);
  CHECK(rel(induced_dipole(1e5), 3 * h.alpha * 1e5) < 1e-12);
}

TEST_CASE("stark validity ratio") {
  CHECK(stark_validity(0.0) == 0.0);
  CHECK(stark_validity(1e5) < kStarkWarnRatio);
  CHECK(rel(stark_validity(2e7), 4 * stark_validity(1e7)) < 1e-14);
  CHECK_NOTHROW(require_perturbative(1e9));
  CHECK_THROWS_AS(require_perturbative(1e11), ValidityError);
  CHECK_THROWS_AS(require_perturbative(NAN), ValidityError);
}

TEST_CASE("minimum separation") {
  CHECK(min_separation() == 10 * codata2018.a0);
}
