#pragma once

#include <functional>
#include <vector>

namespace starkvdw::oracle {

struct QuadratureSpec {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_subdivisions = 4000;
  /// Regulator scales exp(-eta k) for the k-space integral, in m, strictly
  /// decreasing. Empty means r * 0.1 * 2^-k, k = 0..5.
  std::vector<double> eta_sequence;
};

struct QuadratureResult {
  double value;
  double error;
  int subdivisions;
};

/// Globally adaptive 15-point Gauss-Kronrod on [a, b]. Throws OracleFailure
/// when the tolerance is not met within spec.max_subdivisions.
QuadratureResult integrate(const std::function<double(double)>& fn, double a, double b, const QuadratureSpec& spec = {});

/// Neville polynomial extrapolation of (h_i, y_i) to h = 0 using the first
/// `points` samples.
double extrapolate_to_zero(const std::vector<double>& h, const std::vector<double>& y, std::size_t points);

} // namespace starkvdw::oracle
