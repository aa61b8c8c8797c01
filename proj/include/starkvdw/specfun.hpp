#pragma once

// Sine/cosine integrals and the auxiliary functions
//
//   f(x) = Ci(x) sin x + (pi/2 - Si(x)) cos x
//   g(x) = -Ci(x) cos x + (pi/2 - Si(x)) sin x
//
// Three evaluation branches are used:
//   x <= kSeriesCut          power series for Si/Ci, f and g from the definitions
//   kSeriesCut < x < kAsymptoticCut   continued fraction for e^{ix} E1(ix) = g - i f
//   x >= kAsymptoticCut      asymptotic series for f and g directly
// The definitions subtract nearly equal numbers once x grows past ~20, so the
// upper two branches never go through Si/Ci.

namespace starkvdw::specfun {

struct RegimeThresholds {
  double near_cut = 0.01;
  double far_cut = 50.0;
  // f deviates from pi/2 by x (gamma_E + ln x - 1) near zero: 3.2% at 0.01.
  double certified_rel_err = 0.04;
};

inline constexpr RegimeThresholds kDefaultThresholds{};

inline constexpr double kSeriesCut = 3.0;
inline constexpr double kAsymptoticCut = 40.0;

double sine_integral(double x);
double cosine_integral(double x);

double aux_f(double x);
double aux_g(double x);

/// f'(x) = -g(x).
double aux_f_prime(double x);
/// g'(x) = f(x) - 1/x.
double aux_g_prime(double x);

/// f and g together with the large-x tails x f - 1 and x^2 g - 1, each
/// computed without cancellation.
struct AuxValues {
  double f;
  double g;
  double f_tail;
  double g_tail;
};

AuxValues aux_fg(double x);

namespace detail {

struct SiCi {
  double si;
  double ci;
};

SiCi si_ci_series(double x);
AuxValues fg_continued_fraction(double x);
AuxValues fg_asymptotic(double x);

} // namespace detail

} // namespace starkvdw::specfun
