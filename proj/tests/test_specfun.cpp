#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "starkvdw/constants.hpp"
#include "starkvdw/errors.hpp"
#include "starkvdw/oracle.hpp"
#include "starkvdw/specfun.hpp"

using namespace starkvdw;
using namespace starkvdw::specfun;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return v;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("sine integral") {
  CHECK(sine_integral(0.0) == 0.0);
  CHECK(std::abs(sine_integral(1e6) - kPi / 2) < 1e-5);
  CHECK(std::abs(sine_integral(1.0) - oracle::si_quadrature(1.0)) < 1e-12);
  CHECK(sine_integral(1.0) == doctest::Approx(0.9460831).epsilon(1e-7));
  CHECK_THROWS_AS(sine_integral(-1.0), DomainError);
  CHECK_THROWS_AS(sine_integral(std::numeric_limits<double>::quiet_NaN()), DomainError);
  CHECK_THROWS_AS(sine_integral(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("sine integral against quadrature up to 1e3") {
  for (double x : log_grid(1e-3, 1e3, 25)) {
    INFO("x = " << x);
    CHECK(std::abs(sine_integral(x) - oracle::si_quadrature(x)) < 1e-12);
  }
}

TEST_CASE("cosine integral") {
  const double x = 1e-6;
  CHECK(std::abs(cosine_integral(x) - (kEulerGamma + std::log(x))) < 1e-9);
  CHECK(std::abs(cosine_integral(1.0) - oracle::ci_quadrature(1.0)) < 1e-12);
  CHECK(cosine_integral(1.0) == doctest::Approx(0.3374039).epsilon(1e-7));
  const double c100 = cosine_integral(100.0);
  CHECK(std::abs(c100) < 1e-2);
  CHECK((c100 > 0) == (std::sin(100.0) > 0));
  CHECK_THROWS_AS(cosine_integral(0.0), DomainError);
  CHECK_THROWS_AS(cosine_integral(-2.0), DomainError);
}

TEST_CASE("cosine integral against quadrature") {
  for (double x : log_grid(1e-8, 1e3, 23)) {
    INFO("x = " << x);
    CHECK(std::abs(cosine_integral(x) - oracle::ci_quadrature(x)) < 1e-12);
  }
}

TEST_CASE("f and g at representative points") {
  CHECK(std::abs(aux_f(1e-8) - kPi / 2) < 1e-6);
  const auto q = oracle::aux_fg_quadrature(1.0);
  CHECK(rel(aux_f(1.0), q.f) < 1e-10);
  CHECK(rel(aux_g(1.0), q.g) < 1e-10);
  CHECK(aux_f(1.0) == doctest::Approx(0.6214496).epsilon(1e-7));
  CHECK(aux_g(1.0) == doctest::Approx(0.3433780).epsilon(1e-7));
  CHECK(std::abs(1e4 * aux_f(1e4) - 1.0) < 2e-8);
  CHECK_THROWS_AS(aux_f(0.0), DomainError);
  CHECK_THROWS_AS(aux_g(-1.0), DomainError);
}

TEST_CASE("f and g relative accuracy over the full range") {
  // quadrature of the Laplace representations is accurate at any x
  for (double x : log_grid(1e-6, 1e6, 49)) {
    const auto q = oracle::aux_fg_quadrature(x);
    INFO("x = " << x);
    CHECK(rel(aux_f(x), q.f) < 1e-10);
    CHECK(rel(aux_g(x), q.g) < 1e-10);
  }
}

TEST_CASE("tails agree with f and g") {
  for (double x : {0.5, 2.0, 10.0, 39.0, 41.0, 300.0}) {
    const auto v = aux_fg(x);
    CHECK(v.f == aux_f(x));
    CHECK(v.g == aux_g(x));
    CHECK(std::abs(v.f_tail - (x * v.f - 1.0)) < 1e-12);
  }
}

TEST_CASE("branch switch points agree") {
  for (double x : {kSeriesCut, kAsymptoticCut}) {
    const double lo = std::nextafter(x, 0.0);
    CHECK(rel(aux_f(lo), aux_f(x)) < 1e-10);
    CHECK(rel(aux_g(lo), aux_g(x)) < 1e-10);
  }
  // both neighbouring methods evaluated at the same points
  const auto cf3 = detail::fg_continued_fraction(kSeriesCut);
  const auto sc = detail::si_ci_series(kSeriesCut);
  const double f_series = sc.ci * std::sin(kSeriesCut) + (kPi / 2 - sc.si) * std::cos(kSeriesCut);
  const double g_series = -sc.ci * std::cos(kSeriesCut) + (kPi / 2 - sc.si) * std::sin(kSeriesCut);
  CHECK(rel(cf3.f, f_series) < 1e-10);
  CHECK(rel(cf3.g, g_series) < 1e-10);
  const auto cf40 = detail::fg_continued_fraction(kAsymptoticCut);
  const auto as40 = detail::fg_asymptotic(kAsymptoticCut);
  CHECK(rel(cf40.f, as40.f) < 1e-10);
  CHECK(rel(cf40.g, as40.g) < 1e-10);
}

TEST_CASE("derivative identities by finite differences") {
  for (double x : log_grid(1e-3, 1e3, 40)) {
    const double h = 1e-5 * x;
    const double df = (aux_f(x + h) - aux_f(x - h)) / (2 * h);
    const double dg = (aux_g(x + h) - aux_g(x - h)) / (2 * h);
    INFO("x = " << x);
    CHECK(std::abs(df - aux_f_prime(x)) <= 1e-6 * std::max(std::abs(df), std::abs(aux_f_prime(x))));
    CHECK(std::abs(dg - aux_g_prime(x)) <= 1e-6 * std::max(std::abs(dg), std::abs(aux_g_prime(x))));
    CHECK(aux_f_prime(x) == -aux_g(x));
    CHECK(rel(aux_g_prime(x), aux_f(x) - 1.0 / x) < 1e-9);
  }
  CHECK(aux_f_prime(1.0) == doctest::Approx(-0.3433780).epsilon(1e-7));
  CHECK(aux_g_prime(1e-6) == doctest::Approx(-1e6).epsilon(1e-5));
  const double h = 1e-4;
  const double dg100 = (aux_g(100 + h) - aux_g(100 - h)) / (2 * h);
  CHECK(rel(aux_g_prime(100.0), dg100) < 1e-6);
  CHECK_THROWS_AS(aux_g_prime(0.0), DomainError);
}

TEST_CASE("positivity and monotonic decrease") {
  const auto xs = log_grid(1e-3, 1e3, 200);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(aux_f(xs[i]) > 0);
    CHECK(aux_g(xs[i]) > 0);
    if (i > 0) {
      CHECK(aux_f(xs[i]) < aux_f(xs[i - 1]));
      CHECK(aux_g(xs[i]) < aux_g(xs[i - 1]));
    }
  }
}

TEST_CASE("asymptotic certification at the regime cuts") {
  const auto& t = kDefaultThresholds;
  CHECK(0 < t.near_cut);
  CHECK(t.near_cut < t.far_cut);
  for (double x : log_grid(t.far_cut, 1e5, 30)) {
    const double f = aux_f(x);
    CHECK(std::abs(f - (1 / x - 2 / (x * x * x))) <= t.certified_rel_err * f);
  }
  for (double x : log_grid(1e-8, t.near_cut, 30)) {
    const double f = aux_f(x);
    CHECK(std::abs(f - kPi / 2) <= t.certified_rel_err * f);
  }
}
