#include "starkvdw/specfun.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include <fmt/core.h>

#include "starkvdw/constants.hpp"
#include "starkvdw/errors.hpp"

namespace starkvdw::specfun {

namespace {

constexpr double kHalfPi = 0.5 * kPi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(fmt::format("{}: argument must be finite", what));
}

void require_positive(double x, const char* what) {
  require_finite(x, what);
  if (x <= 0.0) throw DomainError(fmt::format("{}: argument must be > 0, got {}", what, x));
}

AuxValues fg_from_si_ci(double x, const detail::SiCi& sc) {
  const double s = std::sin(x);
  const double c = std::cos(x);
  const double p = kHalfPi - sc.si;
  AuxValues out{};
  out.f = sc.ci * s + p * c;
  out.g = -sc.ci * c + p * s;
  out.f_tail = x * out.f - 1.0;
  out.g_tail = x * x * out.g - 1.0;
  return out;
}

} // namespace

namespace detail {

SiCi si_ci_series(double x) {
  const double x2 = x * x;
  // Si = sum (-1)^n x^(2n+1) / ((2n+1) (2n+1)!)
  double si = 0.0;
  double power = x; // (-1)^n x^(2n+1) / (2n+1)!
  for (int n = 0; n < 200; ++n) {
    const double term = power / (2 * n + 1);
    si += term;
    if (std::abs(term) <= 0.1 * kEps * std::abs(si)) break;
    power *= -x2 / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
  }
  // Ci = gamma + ln x + sum_{n>=1} (-1)^n x^(2n) / (2n (2n)!)
  double sum = 0.0;
  power = 1.0; // (-1)^n x^(2n) / (2n)!
  for (int n = 1; n < 200; ++n) {
    power *= -x2 / ((2.0 * n - 1.0) * (2.0 * n));
    const double term = power / (2 * n);
    sum += term;
    if (std::abs(term) <= 0.1 * kEps * (std::abs(sum) + 1e-300)) break;
  }
  return {si, kEulerGamma + std::log(x) + sum};
}

AuxValues fg_continued_fraction(double x) {
  // Modified Lentz evaluation of e^z E1(z), z = ix:
  // 1/(z+1 - 1/(z+3 - 4/(z+5 - ...)))
  using cd = std::complex<double>;
  constexpr double tiny = 1e-300;
  cd b(1.0, x);
  cd c(1.0 / tiny, 0.0);
  cd d = 1.0 / b;
  cd h = d;
  int i = 2;
  for (; i < 10000; ++i) {
    const double a = -static_cast<double>(i - 1) * static_cast<double>(i - 1);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cd delta = c * d;
    h *= delta;
    if (std::abs(delta.real() - 1.0) + std::abs(delta.imag()) < kEps) break;
  }
  if (i == 10000) throw std::runtime_error(fmt::format("aux_fg: continued fraction stalled at x = {}", x));
  AuxValues out{};
  out.g = h.real();
  out.f = -h.imag();
  out.f_tail = x * out.f - 1.0;
  out.g_tail = x * x * out.g - 1.0;
  return out;
}

AuxValues fg_asymptotic(double x) {
  // x f - 1   ~ sum_{n>=1} (-1)^n (2n)!   / x^(2n)
  // x^2 g - 1 ~ sum_{n>=1} (-1)^n (2n+1)! / x^(2n)
  const double inv2 = 1.0 / (x * x);
  double f_tail = 0.0;
  double g_tail = 0.0;
  double tf = 1.0; // (-1)^n (2n)! / x^(2n)
  double tg = 1.0; // (-1)^n (2n+1)! / x^(2n)
  double last_f = std::numeric_limits<double>::infinity();
  double last_g = std::numeric_limits<double>::infinity();
  bool f_done = false;
  bool g_done = false;
  for (int n = 1; n < 200 && !(f_done && g_done); ++n) {
    tf *= -(2.0 * n - 1.0) * (2.0 * n) * inv2;
    tg *= -(2.0 * n) * (2.0 * n + 1.0) * inv2;
    if (!f_done) {
      // stop at the smallest term of the divergent series
      if (std::abs(tf) >= last_f) {
        f_done = true;
      } else {
        f_tail += tf;
        last_f = std::abs(tf);
        f_done = last_f <= 0.1 * kEps * std::abs(f_tail);
      }
    }
    if (!g_done) {
      if (std::abs(tg) >= last_g) {
        g_done = true;
      } else {
        g_tail += tg;
        last_g = std::abs(tg);
        g_done = last_g <= 0.1 * kEps * std::abs(g_tail);
      }
    }
  }
  AuxValues out{};
  out.f_tail = f_tail;
  out.g_tail = g_tail;
  out.f = (1.0 + f_tail) / x;
  out.g = (1.0 + g_tail) * inv2;
  return out;
}

} // namespace detail

AuxValues aux_fg(double x) {
  require_positive(x, "aux_fg");
  if (x <= kSeriesCut) return fg_from_si_ci(x, detail::si_ci_series(x));
  if (x < kAsymptoticCut) return detail::fg_continued_fraction(x);
  return detail::fg_asymptotic(x);
}

double sine_integral(double x) {
  require_finite(x, "sine_integral");
  if (x < 0.0) throw DomainError(fmt::format("sine_integral: argument must be >= 0, got {}", x));
  if (x == 0.0) return 0.0;
  if (x <= kSeriesCut) return detail::si_ci_series(x).si;
  const AuxValues a = aux_fg(x);
  return kHalfPi - a.f * std::cos(x) - a.g * std::sin(x);
}

double cosine_integral(double x) {
  require_positive(x, "cosine_integral");
  if (x <= kSeriesCut) return detail::si_ci_series(x).ci;
  const AuxValues a = aux_fg(x);
  return a.f * std::sin(x) - a.g * std::cos(x);
}

double aux_f(double x) { return aux_fg(x).f; }

double aux_g(double x) { return aux_fg(x).g; }

double aux_f_prime(double x) { return -aux_fg(x).g; }

double aux_g_prime(double x) {
  // f - 1/x == (x f - 1) / x
  return aux_fg(x).f_tail / x;
}

} // namespace starkvdw::specfun
