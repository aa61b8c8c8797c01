#include "starkvdw/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include <fmt/core.h>

#include "starkvdw/errors.hpp"

namespace starkvdw::oracle {

namespace {

// Kronrod 15-point nodes/weights with the embedded 7-point Gauss weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const std::function<double(double)>& fn, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = fn(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = fn(center - dx) + fn(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& fn, double a, double b, const QuadratureSpec& spec) {
  std::priority_queue<Interval> heap;
  Interval first = gk15(fn, a, b);
  double value = first.value;
  double error = first.error;
  heap.push(first);
  int subdivisions = 0;
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
    if (subdivisions >= spec.max_subdivisions)
      throw OracleFailure(fmt::format("quadrature on [{}, {}] did not converge: error {:.3e}, value {:.6e}", a, b,
                                      error, value));
    Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Interval left = gk15(fn, worst.a, mid);
    Interval right = gk15(fn, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }
  // re-sum to shed the drift of the running updates
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {value, error, subdivisions};
}

double extrapolate_to_zero(const std::vector<double>& h, const std::vector<double>& y, std::size_t points) {
  points = std::min({points, h.size(), y.size()});
  std::vector<double> p(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(points));
  for (std::size_t level = 1; level < points; ++level) {
    for (std::size_t i = 0; i + level < points; ++i) {
      // P_{i..i+level}(0) from the two overlapping lower-order polynomials
      p[i] = (h[i] * p[i + 1] - h[i + level] * p[i]) / (h[i] - h[i + level]);
    }
  }
  return p[0];
}

} // namespace starkvdw::oracle
