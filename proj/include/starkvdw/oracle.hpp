#pragma once

// Independent numerical validators. None of them reuse the code path they
// check: quadrature instead of series/continued fractions, a regularized
// k-space integral instead of the closed forms, and dense eigen-solves
// instead of perturbative formulas.

#include <string>
#include <vector>

#include "starkvdw/geometry.hpp"
#include "starkvdw/quadrature.hpp"

namespace starkvdw::oracle {

struct FGPair {
  double f;
  double g;
};

/// f(x) = int_0^inf e^{-xt}/(1+t^2) dt and g(x) = int_0^inf t e^{-xt}/(1+t^2) dt.
FGPair aux_fg_quadrature(double x, const QuadratureSpec& spec = {});

/// Si(x) = int_0^x sin t / t dt.
double si_quadrature(double x, const QuadratureSpec& spec = {});
/// Ci(x) = gamma_E + ln x + int_0^x (cos t - 1)/t dt.
double ci_quadrature(double x, const QuadratureSpec& spec = {});

struct KspaceResult {
  double value;                  // J, extrapolated to eta -> 0
  std::vector<double> eta;       // m
  std::vector<double> estimates; // J, one per eta
  std::vector<double> extrapolants; // J, using the first 1..n estimates
  double last_change;            // |final - previous extrapolant| / |final|
};

inline constexpr double kKspaceTargetTol = 1e-3;

/// Continuum k-space second-order shift for two z-dipoles, evaluated with an
/// exp(-eta k) regulator and extrapolated to eta = 0.
KspaceResult kspace_shift(const Geometry& geometry, const FieldConfig& fields, const QuadratureSpec& spec = {});

struct Term {
  std::string label;
  double value;
};

struct MatrixElementReport {
  double summed_product = 0.0; // C^2 m^2, atomic part of the one-photon product sum
  double factor = 0.0;         // summed_product / (gamma^2 E E' mu_A mu_B)
  double expected_factor = 8.0;
  double relative_error = 0.0;
  double exchange_difference = 0.0; // |S(E, E') - S(E', E)| / |S|
  bool passed = false;
  std::vector<Term> terms;
};

inline constexpr double kMatrixElementTol = 1e-10;

/// Builds the field-dressed two-atom ground state to first order, the four
/// degenerate (|210> +- |200>) product intermediate states, and sums the
/// dipole product entering the one-photon exchange amplitude.
MatrixElementReport matrix_element_check(const FieldConfig& fields = {1e5, 1e5});

struct StarkPtReport {
  double field = 0.0;
  double first_order = 0.0;          // fitted d c_210 / dE, m/V
  double first_order_expected = 0.0; // -sqrt(2) gamma
  double first_order_rel_err = 0.0;
  double second_order = 0.0;          // fitted c_200 / E^2
  double second_order_expected = 0.0; // -(1/sqrt2)(3/2)^6 gamma^2
  double second_order_rel_err = 0.0;
  double ratio_rel_err = 0.0; // c_200 / c_210^2 against its closed-form value
  double fit_residual = 0.0;  // relative misfit of the two-parameter fits
  double m1_amplitude = 0.0;  // largest |21+-1> amplitude in the ground state
  double n2_overlap_deficit = 0.0; // 1 - |<v|(210 +- 200)/sqrt2>|^2, worst case
  double splitting_nonlinearity = 0.0; // spread of splitting / E over the ladder
  double residual_scaling = 0.0; // first-order truncation residual ratio for E vs E/2 (expect 8)
  bool zero_field_exact = false;
  bool passed = false;
};

inline constexpr double kStarkCoeffTol = 1e-4;
inline constexpr double kDefaultStarkCheckField = 1e9;

/// Diagonalizes the single-atom Hamiltonian in {100, 200, 210, 211, 21-1}
/// on the field ladder E, E/2, E/4 and fits the perturbative coefficients.
StarkPtReport degenerate_pt_check(double field = kDefaultStarkCheckField);

/// Ground eigenvector amplitudes {100, 200, 210, 211, 21-1} at one field.
std::vector<double> single_atom_ground_state(double field);

struct CheckRow {
  std::string suite;
  std::string check;
  double max_error;
  double threshold;
  bool passed;
};

enum class Suite { specfun, kspace, matrix, stark, all };

std::vector<CheckRow> run_suite(Suite suite);

} // namespace starkvdw::oracle
