#include "starkvdw/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <fmt/core.h>

#include "starkvdw/constants.hpp"
#include "starkvdw/errors.hpp"
#include "starkvdw/hydrogen.hpp"
#include "starkvdw/interaction.hpp"
#include "starkvdw/specfun.hpp"

namespace starkvdw::oracle {

// ---------------------------------------------------------------------------
// Auxiliary functions and Si/Ci by quadrature

FGPair aux_fg_quadrature(double x, const QuadratureSpec& spec) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(fmt::format("aux_fg_quadrature: x = {} must be > 0", x));
  if (x <= 1.0) {
    // t = tan(phi) maps [0, inf) onto [0, pi/2) and absorbs 1/(1+t^2)
    auto f_integrand = [x](double phi) { return std::exp(-x * std::tan(phi)); };
    auto g_integrand = [x](double phi) {
      const double t = std::tan(phi);
      return t * std::exp(-x * t);
    };
    const double top = 0.5 * kPi;
    return {integrate(f_integrand, 0.0, top, spec).value, integrate(g_integrand, 0.0, top, spec).value};
  }
  // large x: u = x t puts the decay on a unit scale; x f and x^2 g are O(1)
  const double x2 = x * x;
  auto xf = [x2](double u) { return x2 * std::exp(-u) / (x2 + u * u); };
  auto x2g = [x2](double u) { return x2 * u * std::exp(-u) / (x2 + u * u); };
  double sf = 0.0, sg = 0.0;
  const double panels[] = {0.0, 1.0, 10.0, 40.0, 750.0};
  for (int i = 0; i < 4; ++i) {
    sf += integrate(xf, panels[i], panels[i + 1], spec).value;
    sg += integrate(x2g, panels[i], panels[i + 1], spec).value;
  }
  return {sf / x, sg / x2};
}

double si_quadrature(double x, const QuadratureSpec& spec) {
  if (x == 0.0) return 0.0;
  auto sinc = [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; };
  return integrate(sinc, 0.0, x, spec).value;
}

double ci_quadrature(double x, const QuadratureSpec& spec) {
  if (!(x > 0.0)) throw DomainError("ci_quadrature: x must be > 0");
  auto integrand = [](double t) {
    if (std::abs(t) < 1e-4) return -0.5 * t + t * t * t / 24.0;
    return (std::cos(t) - 1.0) / t;
  };
  return kEulerGamma + std::log(x) + integrate(integrand, 0.0, x, spec).value;
}

// ---------------------------------------------------------------------------
// k-space shift

namespace {

// j_n(u) = u^n sum_k (-u^2/2)^k / (k! (2n+2k+1)!!), divided by u^n.
double bessel_series_scaled(int n, double u) {
  double double_fact = 1.0;
  for (int i = 3; i <= 2 * n + 1; i += 2) double_fact *= i;
  double term = 1.0 / double_fact;
  double sum = term;
  const double q = -0.5 * u * u;
  for (int k = 1; k < 60; ++k) {
    term *= q / (k * (2.0 * n + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// (delta_zz - k_z^2) angular average pieces: j0 - j1/u and j2.
struct AngularKernel {
  double transverse; // j0(u) - j1(u)/u
  double j2;
};

AngularKernel angular_kernel(double u) {
  if (u < 1.0) {
    const double j0 = bessel_series_scaled(0, u);
    const double j1_over_u = bessel_series_scaled(1, u);
    const double j2 = u * u * bessel_series_scaled(2, u);
    return {j0 - j1_over_u, j2};
  }
  const double s = std::sin(u);
  const double c = std::cos(u);
  const double j0 = s / u;
  const double j1 = s / (u * u) - c / u;
  const double j2 = (3.0 / (u * u) - 1.0) * s / u - 3.0 * c / (u * u);
  return {j0 - j1 / u, j2};
}

// int_0^inf exp(-eps u) u^3/(u + x0) [ (j0 - j1/u)(u) + cos^2(theta) j2(u) ] du
double regularized_radial_integral(double x0, double cos2, double eps, const QuadratureSpec& spec) {
  auto integrand = [=](double u) {
    const auto k = angular_kernel(u);
    return std::exp(-eps * u) * u * u * u / (u + x0) * (k.transverse + cos2 * k.j2);
  };
  // exp(-60) u^2 is far below double resolution of the result
  const double upper = 60.0 / eps;
  const int panels = static_cast<int>(std::ceil(upper / kPi));
  QuadratureSpec panel_spec = spec;
  panel_spec.rel_tol = std::min(spec.rel_tol, 1e-13);
  double sum = 0.0;
  double comp = 0.0; // Kahan compensation: panel values alternate in sign
  for (int i = 0; i < panels; ++i) {
    const double v = integrate(integrand, i * kPi, (i + 1) * kPi, panel_spec).value - comp;
    const double t = sum + v;
    comp = (t - sum) - v;
    sum = t;
  }
  return sum;
}

} // namespace

KspaceResult kspace_shift(const Geometry& geometry, const FieldConfig& fields, const QuadratureSpec& spec) {
  validate_geometry(geometry);
  const auto& h = hydrogen_data();
  const double r = geometry.r;

  std::vector<double> eta = spec.eta_sequence;
  if (eta.empty())
    for (int k = 0; k < 6; ++k) eta.push_back(0.1 * r * std::ldexp(1.0, -k));
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (!(eta[i] >= 1e-4 * r)) throw OracleFailure(fmt::format("eta {} m is below the floor 1e-4 r", eta[i]));
    if (i > 0 && !(eta[i] < eta[i - 1])) throw OracleFailure("eta_sequence must be strictly decreasing");
  }

  const double x0 = h.k0 * r;
  const double c = std::cos(geometry.theta);
  const double mu = transition_dipole({2, 1, 0}, {1, 0, 0});
  const double prefactor = -2.0 * h.gamma * h.gamma * fields.field * fields.field_prime * mu * mu /
                           (kPi * kPi * codata2018.eps0 * r * r * r);

  KspaceResult out{};
  out.eta = eta;
  std::vector<double> eps;
  for (double e : eta) {
    eps.push_back(e / r);
    out.estimates.push_back(prefactor * regularized_radial_integral(x0, c * c, e / r, spec));
  }
  for (std::size_t n = 1; n <= eps.size(); ++n) out.extrapolants.push_back(extrapolate_to_zero(eps, out.estimates, n));
  out.value = out.extrapolants.back();
  const double prev = out.extrapolants.size() > 1 ? out.extrapolants[out.extrapolants.size() - 2] : out.value;
  out.last_change = out.value == 0.0 ? std::abs(prev) : std::abs(out.value - prev) / std::abs(out.value);
  if (out.value != 0.0 && out.last_change > 10.0 * kKspaceTargetTol)
    throw OracleFailure(fmt::format("eta extrapolation did not settle: last step changed the value by {:.3e}",
                                    out.last_change));
  return out;
}

// ---------------------------------------------------------------------------
// Matrix-element product over the degenerate intermediate states

namespace {

// single-atom basis order: |100>, |200>, |210>
constexpr int kG = 0;
constexpr int kS = 1;
constexpr int kP = 2;

using Mat3 = Eigen::Matrix3d;
using Vec9 = Eigen::Matrix<double, 9, 1>;
using Mat9 = Eigen::Matrix<double, 9, 9>;

Mat3 dipole_matrix() {
  const std::array<QuantumNumbers, 3> basis{{{1, 0, 0}, {2, 0, 0}, {2, 1, 0}}};
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = transition_dipole(basis[i], basis[j]);
  return m;
}

Vec9 product(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  Vec9 v;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v(3 * i + j) = a(i) * b(j);
  return v;
}

Vec9 basis_state(int a, int b) {
  Vec9 v = Vec9::Zero();
  v(3 * a + b) = 1.0;
  return v;
}

struct ProductSum {
  double total;
  std::vector<Term> terms;
};

ProductSum one_photon_product_sum(const FieldConfig& fields) {
  const Mat3 mu = dipole_matrix();
  const Mat3 id = Mat3::Identity();
  Mat9 mu_a;
  Mat9 mu_b;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          mu_a(3 * i + k, 3 * j + l) = mu(i, j) * id(k, l);
          mu_b(3 * i + k, 3 * j + l) = id(i, j) * mu(k, l);
        }

  const auto c = stark_ground_state(fields);
  const Vec9 psi = c.c_gg * basis_state(kG, kG) + c.c_eA * basis_state(kP, kG) + c.c_eB * basis_state(kG, kP);

  ProductSum out{0.0, {}};
  const std::array<int, 2> signs{+1, -1};
  for (int m : signs) {
    for (int n : signs) {
      Eigen::Vector3d a = Eigen::Vector3d::Zero();
      Eigen::Vector3d b = Eigen::Vector3d::Zero();
      a(kP) = 1.0;
      a(kS) = m;
      b(kP) = 1.0;
      b(kS) = n;
      const Vec9 inter = 0.5 * product(a, b);
      const double ab = psi.dot(mu_a * inter) * inter.dot(mu_b * psi);
      const double ba = psi.dot(mu_b * inter) * inter.dot(mu_a * psi);
      const std::string tag = fmt::format("I({}{})", m > 0 ? '+' : '-', n > 0 ? '+' : '-');
      out.terms.push_back({tag + " A<-B", ab});
      out.terms.push_back({tag + " B<-A", ba});
      out.total += ab + ba;
    }
  }
  return out;
}

} // namespace

MatrixElementReport matrix_element_check(const FieldConfig& fields) {
  const auto& h = hydrogen_data();
  MatrixElementReport rep;
  const auto forward = one_photon_product_sum(fields);
  const auto swapped = one_photon_product_sum({fields.field_prime, fields.field});
  rep.summed_product = forward.total;
  rep.terms = forward.terms;
  const double norm = h.gamma * h.gamma * fields.field * fields.field_prime * h.mu_eg * h.mu_eg;
  rep.factor = norm == 0.0 ? 0.0 : forward.total / norm;
  rep.relative_error = std::abs(rep.factor - rep.expected_factor) / rep.expected_factor;
  rep.exchange_difference =
      forward.total == 0.0 ? std::abs(swapped.total) : std::abs(forward.total - swapped.total) / std::abs(forward.total);
  rep.passed = rep.relative_error <= kMatrixElementTol && rep.exchange_difference <= 1e-12;
  return rep;
}

// ---------------------------------------------------------------------------
// Degenerate perturbation theory by dense diagonalization

namespace {

constexpr std::array<QuantumNumbers, 5> kAtomBasis{{{1, 0, 0}, {2, 0, 0}, {2, 1, 0}, {2, 1, 1}, {2, 1, -1}}};

struct AtomSpectrum {
  Eigen::Matrix<double, 5, 1> values;
  Eigen::Matrix<double, 5, 5> vectors;
};

// H / |E1| with H = H_atom - mu_z E
AtomSpectrum atom_spectrum(double field) {
  const auto& h = hydrogen_data();
  const double unit = std::abs(h.E1);
  Eigen::Matrix<double, 5, 5> H = Eigen::Matrix<double, 5, 5>::Zero();
  for (int i = 0; i < 5; ++i) {
    H(i, i) = (kAtomBasis[i].n == 1 ? h.E1 : h.E2) / unit;
    for (int j = 0; j < 5; ++j) H(i, j) -= field * transition_dipole(kAtomBasis[i], kAtomBasis[j]) / unit;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 5, 5>> solver(H);
  if (solver.info() != Eigen::Success) throw OracleFailure("eigen-solve of the Stark Hamiltonian failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// least squares y = p0 + p1 t; returns {p0, p1, relative rms misfit}
std::array<double, 3> linear_fit(const std::vector<double>& t, const std::vector<double>& y) {
  const double n = static_cast<double>(t.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  const double det = n * stt - st * st;
  const double p1 = (n * sty - st * sy) / det;
  const double p0 = (sy - p1 * st) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double d = y[i] - (p0 + p1 * t[i]);
    ss += d * d;
  }
  return {p0, p1, std::sqrt(ss / n) / std::abs(p0)};
}

} // namespace

std::vector<double> single_atom_ground_state(double field) {
  require_perturbative(field);
  const auto s = atom_spectrum(field);
  Eigen::Matrix<double, 5, 1> v = s.vectors.col(0);
  if (v(0) < 0.0) v = -v;
  return {v.data(), v.data() + 5};
}

StarkPtReport degenerate_pt_check(double field) {
  require_perturbative(field);
  if (field == 0.0) throw DomainError("degenerate_pt_check needs a nonzero field to fit against");
  const auto& h = hydrogen_data();
  StarkPtReport rep;
  rep.field = field;
  rep.first_order_expected = -std::sqrt(2.0) * h.gamma;
  rep.second_order_expected = -std::pow(1.5, 6) / std::sqrt(2.0) * h.gamma * h.gamma;

  const auto zero = single_atom_ground_state(0.0);
  rep.zero_field_exact = zero[0] == 1.0 && zero[1] == 0.0 && zero[2] == 0.0 && zero[3] == 0.0 && zero[4] == 0.0;

  std::vector<double> ladder{field, field / 2.0, field / 4.0};
  std::vector<double> t, y1, y2, split, trunc;
  double worst_m1 = 0.0;
  double worst_overlap = 0.0;
  for (double e : ladder) {
    const auto spec = atom_spectrum(e);
    Eigen::Matrix<double, 5, 1> g = spec.vectors.col(0);
    if (g(0) < 0.0) g = -g;
    t.push_back(e * e);
    y1.push_back(g(2) / e);
    y2.push_back(g(1) / (e * e));
    trunc.push_back(g(2) - rep.first_order_expected * e);
    worst_m1 = std::max({worst_m1, std::abs(g(3)), std::abs(g(4))});

    // the two n = 2, m = 0 eigenvectors: largest weight on {200, 210}
    std::array<int, 4> idx{1, 2, 3, 4};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      const double wa = spec.vectors(1, a) * spec.vectors(1, a) + spec.vectors(2, a) * spec.vectors(2, a);
      const double wb = spec.vectors(1, b) * spec.vectors(1, b) + spec.vectors(2, b) * spec.vectors(2, b);
      return wa > wb;
    });
    for (int k = 0; k < 2; ++k) {
      const auto v = spec.vectors.col(idx[k]);
      const double plus = (v(2) + v(1)) / std::sqrt(2.0);
      const double minus = (v(2) - v(1)) / std::sqrt(2.0);
      const double best = std::max(plus * plus, minus * minus);
      worst_overlap = std::max(worst_overlap, 1.0 - best);
    }
    split.push_back(std::abs(spec.values(idx[0]) - spec.values(idx[1])) / e);
  }

  const auto f1 = linear_fit(t, y1);
  const auto f2 = linear_fit(t, y2);
  rep.first_order = f1[0];
  rep.second_order = f2[0];
  rep.fit_residual = std::max(f1[2], f2[2]);
  rep.first_order_rel_err = std::abs(rep.first_order - rep.first_order_expected) / std::abs(rep.first_order_expected);
  rep.second_order_rel_err =
      std::abs(rep.second_order - rep.second_order_expected) / std::abs(rep.second_order_expected);

  const double smallest = ladder.back();
  const double ratio = (y2.back() * smallest * smallest) / std::pow(y1.back() * smallest, 2);
  const double ratio_expected = -std::pow(1.5, 6) / (2.0 * std::sqrt(2.0));
  rep.ratio_rel_err = std::abs(ratio - ratio_expected) / std::abs(ratio_expected);

  rep.m1_amplitude = worst_m1;
  rep.n2_overlap_deficit = worst_overlap;
  const auto [smin, smax] = std::minmax_element(split.begin(), split.end());
  rep.splitting_nonlinearity = (*smax - *smin) / *smax;
  rep.residual_scaling = trunc[0] / trunc[1];

  const double second_order_scale = 10.0 * stark_validity(field) + 1e-12;
  const bool scaling_resolved = std::abs(trunc[0]) > 1e4 * std::numeric_limits<double>::epsilon();
  rep.passed = rep.zero_field_exact && rep.first_order_rel_err <= kStarkCoeffTol &&
               rep.second_order_rel_err <= kStarkCoeffTol && rep.ratio_rel_err <= kStarkCoeffTol &&
               rep.m1_amplitude <= 1e-14 && rep.n2_overlap_deficit <= second_order_scale &&
               rep.splitting_nonlinearity <= second_order_scale &&
               (!scaling_resolved || std::abs(rep.residual_scaling / 8.0 - 1.0) <= 0.05);
  return rep;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

CheckRow row(const char* suite, std::string check, double err, double thr) {
  return {suite, std::move(check), err, thr, err <= thr};
}

void specfun_suite(std::vector<CheckRow>& rows) {
  double fg_err = 0.0;
  for (double x : log_grid(1e-2, 1e2, 41)) {
    const auto q = aux_fg_quadrature(x);
    const auto a = specfun::aux_fg(x);
    fg_err = std::max({fg_err, std::abs(a.f - q.f) / q.f, std::abs(a.g - q.g) / q.g});
  }
  rows.push_back(row("specfun", "f,g vs quadrature, 41 pts on [1e-2,1e2] (rel)", fg_err, 1e-8));

  double si_err = 0.0;
  double ci_err = 0.0;
  for (double x : {0.01, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 40.0, 100.0}) {
    si_err = std::max(si_err, std::abs(specfun::sine_integral(x) - si_quadrature(x)));
    ci_err = std::max(ci_err, std::abs(specfun::cosine_integral(x) - ci_quadrature(x)));
  }
  rows.push_back(row("specfun", "Si vs quadrature (abs)", si_err, 1e-10));
  rows.push_back(row("specfun", "Ci vs quadrature (abs)", ci_err, 1e-10));

  double df_err = 0.0;
  double dg_err = 0.0;
  for (double x : log_grid(1e-3, 1e3, 40)) {
    const double h = 1e-4 * x;
    const double fd_f = (specfun::aux_f(x + h) - specfun::aux_f(x - h)) / (2.0 * h);
    const double fd_g = (specfun::aux_g(x + h) - specfun::aux_g(x - h)) / (2.0 * h);
    const double g = specfun::aux_g(x);
    const double gp = specfun::aux_f(x) - 1.0 / x;
    df_err = std::max(df_err, std::abs(fd_f + g) / std::max(std::abs(fd_f), std::abs(g)));
    dg_err = std::max(dg_err, std::abs(fd_g - gp) / std::max(std::abs(fd_g), std::abs(gp)));
  }
  rows.push_back(row("specfun", "f' = -g vs finite differences, 40 pts (rel)", df_err, 1e-6));
  rows.push_back(row("specfun", "g' = f - 1/x vs finite differences, 40 pts (rel)", dg_err, 1e-6));

  const double xs = specfun::kSeriesCut;
  const auto sc = specfun::detail::si_ci_series(xs);
  const double s = std::sin(xs), c = std::cos(xs);
  const double f_series = sc.ci * s + (0.5 * kPi - sc.si) * c;
  const auto cf = specfun::detail::fg_continued_fraction(xs);
  rows.push_back(row("specfun", "series / continued-fraction switch (rel f)", std::abs(f_series - cf.f) / cf.f, 1e-10));
  const double xa = specfun::kAsymptoticCut;
  const auto cf2 = specfun::detail::fg_continued_fraction(xa);
  const auto as = specfun::detail::fg_asymptotic(xa);
  rows.push_back(row("specfun", "continued-fraction / asymptotic switch (rel f,g)",
                     std::max(std::abs(cf2.f - as.f) / as.f, std::abs(cf2.g - as.g) / as.g), 1e-10));
}

void kspace_suite(std::vector<CheckRow>& rows) {
  const double k0 = hydrogen_data().k0;
  const FieldConfig fields{1e5, 1e5};
  for (double theta : {0.0, 0.25 * kPi, 0.5 * kPi}) {
    for (double x : {0.1, 1.0, 10.0}) {
      const Geometry geo{x / k0, theta};
      const double exact = delta_e_general(geo, fields);
      const auto k = kspace_shift(geo, fields);
      rows.push_back(row("kspace", fmt::format("theta={:.4f} k0r={:g} vs closed form (rel)", theta, x),
                         std::abs(k.value - exact) / std::abs(exact), kKspaceTargetTol));
    }
  }
}

void matrix_suite(std::vector<CheckRow>& rows) {
  const auto rep = matrix_element_check();
  rows.push_back(row("matrix", fmt::format("prefactor {:.10g} vs 8 gamma^2 E E' (rel)", rep.factor),
                     rep.relative_error, kMatrixElementTol));
  rows.push_back(row("matrix", "A <-> B exchange (rel)", rep.exchange_difference, 1e-12));
  const auto zero = matrix_element_check({0.0, 1e5});
  rows.push_back(row("matrix", "E = 0 gives zero sum (abs, C^2 m^2)", std::abs(zero.summed_product), 0.0));
}

void stark_suite(std::vector<CheckRow>& rows) {
  const auto rep = degenerate_pt_check();
  const double second = 10.0 * stark_validity(rep.field) + 1e-12;
  rows.push_back(row("stark", "first-order c_210 vs -sqrt2 gamma (rel)", rep.first_order_rel_err, kStarkCoeffTol));
  rows.push_back(row("stark", "second-order c_200 vs -(3/2)^6 gamma^2/sqrt2 (rel)", rep.second_order_rel_err,
                     kStarkCoeffTol));
  rows.push_back(row("stark", "c_200 / c_210^2 ratio (rel)", rep.ratio_rel_err, kStarkCoeffTol));
  rows.push_back(row("stark", "|21+-1> amplitudes", rep.m1_amplitude, 1e-14));
  rows.push_back(row("stark", "n=2 eigenstates vs (210 +- 200)/sqrt2 (1 - overlap)", rep.n2_overlap_deficit, second));
  rows.push_back(row("stark", "Stark splitting / E spread over ladder", rep.splitting_nonlinearity, second));
  rows.push_back(row("stark", "truncation residual E vs E/2 ratio (|r/8 - 1|)", std::abs(rep.residual_scaling / 8.0 - 1.0),
                     0.05));
  rows.push_back(row("stark", "zero field ground state = |100>", rep.zero_field_exact ? 0.0 : 1.0, 0.0));
}

} // namespace

std::vector<CheckRow> run_suite(Suite suite) {
  std::vector<CheckRow> rows;
  if (suite == Suite::specfun || suite == Suite::all) specfun_suite(rows);
  if (suite == Suite::kspace || suite == Suite::all) kspace_suite(rows);
  if (suite == Suite::matrix || suite == Suite::all) matrix_suite(rows);
  if (suite == Suite::stark || suite == Suite::all) stark_suite(rows);
  return rows;
}

} // namespace starkvdw::oracle
