#include <cmath>
#include <sstream>

#include <doctest.h>

#include "starkvdw/analysis.hpp"
#include "starkvdw/constants.hpp"
#include "starkvdw/errors.hpp"
#include "starkvdw/hydrogen.hpp"
#include "starkvdw/interaction.hpp"
#include "starkvdw/roots.hpp"

using namespace starkvdw;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
const double half_pi = kPi / 2;
} // namespace

TEST_CASE("bracketed solver") {
  const auto s = solve_bracketed([](double x) { return x * x - 2; }, 0.0, 2.0, 1e-14);
  CHECK(s.root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(s.lo <= s.root);
  CHECK(s.root <= s.hi);
  CHECK_THROWS_AS(solve_bracketed([](double x) { return x * x + 1; }, -1.0, 1.0, 1e-12), NoSolutionError);
  // steep function where plain secant stalls
  const auto t = solve_bracketed([](double x) { return std::tanh(50 * (x - 0.3)); }, -1.0, 1.0, 1e-12);
  CHECK(t.root == doctest::Approx(0.3).epsilon(1e-11));
}

TEST_CASE("crossover field") {
  const auto c = crossover_field({1e-6, half_pi});
  CHECK(rel(c.value, 6.8e4) < 0.1);
  CHECK(std::abs(std::log10(c.value) - 5) < 0.5);
  CHECK(c.iterations == 0);
  CHECK(c.stability == Stability::not_applicable);
  CHECK(c.bracket.first <= c.value);
  CHECK(c.value <= c.bracket.second);
  // residual recomputed through the public API
  const auto b = total_energy({1e-6, half_pi}, {c.value, c.value});
  CHECK(std::abs(std::abs(b.field_component) - std::abs(b.vdw_component)) <= c.tolerance);

  const auto c8 = crossover_field({1e-8, half_pi});
  CHECK(std::abs(std::log10(c8.value) - 8) < 0.5);
  CHECK(c8.regime == Regime::intermediate);
}

TEST_CASE("crossover far-zone power counting") {
  const double r1 = 2e-6, r2 = 8e-6;
  const double ratio = crossover_field({r1, half_pi}).value / crossover_field({r2, half_pi}).value;
  CHECK(ratio == doctest::Approx(std::pow(r2 / r1, 1.5)).epsilon(5e-3));
}

TEST_CASE("crossover without a field term") {
  // in the far zone the magic angle nearly cancels; find the exact zero at k0r = 1
  const double k0 = hydrogen_data().k0;
  const double x = 1.0;
  const auto s = solve_bracketed(
      [&](double th) { return shape::general(x, th); }, 0.0, half_pi, 1e-15);
  CHECK_THROWS_AS(crossover_field({x / k0, s.root}), NoSolutionError);
}

TEST_CASE("equilibrium distance") {
  const auto res = equilibrium_distance(half_pi, {1e4, 1e4}, {1e-7, 1e-5});
  CHECK(res.value > 1e-7);
  CHECK(res.value < 1e-5);
  CHECK(res.value == doctest::Approx(4.347080743e-6).epsilon(1e-8));
  CHECK(res.stability == Stability::unstable);
  CHECK(res.bracket.first <= res.value);
  CHECK(res.value <= res.bracket.second);
  CHECK(std::abs(radial_force({res.value, half_pi}, {1e4, 1e4})) <= res.tolerance);
  CHECK(res.warnings.empty());
}

TEST_CASE("equilibrium moves inward with stronger fields") {
  double prev = 1.0;
  for (double e : {5e3, 1e4, 2e4, 4e4, 8e4}) {
    const auto res = equilibrium_distance(half_pi, {e, e}, {1e-7, 1e-5});
    CHECK(res.value < prev);
    CHECK(res.stability == Stability::unstable);
    prev = res.value;
  }
}

TEST_CASE("equilibrium for antiparallel fields along the axis") {
  const auto res = equilibrium_distance(0.0, {1e4, -1e4}, {1e-7, 1e-5});
  CHECK(res.stability == Stability::unstable);
  CHECK(std::abs(radial_force({res.value, 0.0}, {1e4, -1e4})) <= res.tolerance);
}

TEST_CASE("equilibrium failures") {
  CHECK_THROWS_AS(equilibrium_distance(half_pi, {0.0, 0.0}, {1e-7, 1e-5}), NoSolutionError);
  CHECK_THROWS_AS(equilibrium_distance(0.0, {1e4, 1e4}, {1e-7, 1e-5}), NoSolutionError);
  CHECK_THROWS_AS(equilibrium_distance(half_pi, {1e4, 1e4}, {1e-5, 1e-7}), DomainError);
  CHECK_THROWS_AS(equilibrium_distance(half_pi, {1e4, 1e4}, {1e-12, 1e-5}), DomainError);
}

TEST_CASE("grid points") {
  const auto lin = grid_points({0.0, 1.0, 5, Spacing::linear});
  CHECK(lin == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const auto lg = grid_points({1e-8, 1e-6, 3, Spacing::log});
  CHECK(lg.front() == 1e-8);
  CHECK(lg[1] == doctest::Approx(1e-7).epsilon(1e-15));
  CHECK(lg.back() == 1e-6);
  CHECK(grid_points({3.0, 3.0, 1, Spacing::log}).size() == 1);
}

TEST_CASE("output selection") {
  const auto o = parse_outputs("total,regime");
  CHECK_FALSE(o.field);
  CHECK_FALSE(o.vdw);
  CHECK(o.total);
  CHECK_FALSE(o.force);
  CHECK(o.regime);
  CHECK(parse_outputs("field_component").field);
  CHECK_THROWS_AS(parse_outputs("total,bogus"), SpecError);
}

TEST_CASE("sweep spec validation") {
  SweepSpec s;
  s.r_range = {1e-8, 1e-6, 3, Spacing::log};
  s.field_range = {1e4, 1e4, 1, Spacing::linear};
  CHECK_NOTHROW(validate(s));
  auto bad = s;
  bad.r_range.min = 1e-12;
  CHECK_THROWS_AS(validate(bad), SpecError);
  bad = s;
  bad.r_range.count = 0;
  CHECK_THROWS_AS(validate(bad), SpecError);
  bad = s;
  bad.r_range.max = 1e-9;
  CHECK_THROWS_AS(validate(bad), SpecError);
  bad = s;
  bad.field_range = {-1.0, 1.0, 3, Spacing::log};
  CHECK_THROWS_AS(validate(bad), SpecError);
  bad = s;
  bad.theta = 4.0;
  CHECK_THROWS_AS(validate(bad), SpecError);
}

TEST_CASE("single-point sweep equals total energy") {
  SweepSpec s;
  s.r_range = {2e-7, 2e-7, 1, Spacing::log};
  s.theta = 0.7;
  s.field_range = {3e4, 3e4, 1, Spacing::linear};
  const auto rows = sweep(s);
  REQUIRE(rows.size() == 1);
  const auto b = total_energy({2e-7, 0.7}, {3e4, 3e4});
  CHECK(rows[0].total_energy == b.total);
  CHECK(rows[0].field_energy == b.field_component);
  CHECK(rows[0].force == radial_force({2e-7, 0.7}, {3e4, 3e4}));
}

TEST_CASE("sweep slope runs from -3 to -4") {
  const double k0 = hydrogen_data().k0;
  SweepSpec s;
  s.r_range = {1e-2 / k0, 1e2 / k0, 81, Spacing::log};
  s.r_range.min = std::max(s.r_range.min, min_separation());
  s.theta = half_pi;
  s.field_range = {1e5, 1e5, 1, Spacing::linear};
  s.outputs = parse_outputs("total");
  const auto rows = sweep(s);
  REQUIRE(rows.size() == 81);
  auto slope = [&](std::size_t i) {
    return std::log(rows[i + 1].field_energy / rows[i].field_energy) / std::log(rows[i + 1].r / rows[i].r);
  };
  CHECK(slope(0) == doctest::Approx(-3).epsilon(0.03));
  CHECK(slope(79) == doctest::Approx(-4).epsilon(0.01));
  for (std::size_t i = 1; i < 79; ++i) CHECK(slope(i) <= slope(i - 1) + 1e-9);
}

TEST_CASE("opposite field mode flips the field component") {
  SweepSpec s;
  s.r_range = {1e-8, 1e-5, 7, Spacing::log};
  s.theta = 1.0;
  s.field_range = {1e3, 1e6, 4, Spacing::log};
  const auto eq = sweep(s);
  s.field_mode = FieldMode::opposite;
  const auto op = sweep(s);
  REQUIRE(eq.size() == op.size());
  for (std::size_t i = 0; i < eq.size(); ++i) {
    CHECK(op[i].field_prime == -eq[i].field_prime);
    CHECK(op[i].field_energy == -eq[i].field_energy);
  }
}

TEST_CASE("sweep is deterministic across thread counts") {
  SweepSpec s;
  s.r_range = {1e-9, 1e-5, 33, Spacing::log};
  s.theta = 0.3;
  s.field_range = {1e3, 1e7, 9, Spacing::log};
  s.threads = 1;
  std::ostringstream a, b, c;
  write_csv(a, sweep(s));
  s.threads = 7;
  write_csv(b, sweep(s));
  s.threads = 0;
  write_csv(c, sweep(s));
  CHECK(a.str() == b.str());
  CHECK(a.str() == c.str());
  const auto rows = sweep(s);
  CHECK(rows.front().r == 1e-9);
  CHECK(rows[1].r == 1e-9);
  CHECK(rows[9].r > 1e-9);
}

TEST_CASE("csv layout") {
  SweepSpec s;
  s.r_range = {1e-6, 1e-6, 1, Spacing::log};
  s.theta = half_pi;
  s.field_range = {1e5, 1e5, 1, Spacing::linear};
  std::ostringstream os;
  write_csv(os, sweep(s), {parse_outputs("total"), false});
  std::istringstream in(os.str());
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == kCsvHeader);
  CHECK(row.rfind("1e-06,1.5707963267948966,100000,100000,,,", 0) == 0);

  std::ostringstream si;
  write_csv(si, sweep(s), {OutputSet{}, true});
  CHECK(si.str().rfind("r_m,theta_rad,E_Vpm,Eprime_Vpm,field_J,vdw_J,total_J,force_N,regime,warnings", 0) == 0);
}

TEST_CASE("json rows") {
  SweepSpec s;
  s.r_range = {1e-8, 1e-6, 2, Spacing::log};
  s.theta = half_pi;
  s.field_range = {1e5, 1e5, 1, Spacing::linear};
  const auto j = to_json(sweep(s), {parse_outputs("field,regime"), false});
  REQUIRE(j.is_array());
  CHECK(j.size() == 2);
  CHECK(j[0]["r_m"] == 1e-8);
  CHECK(j[0]["vdw_eV"].is_null());
  CHECK(j[0]["field_eV"].is_number());
  CHECK(j[0]["regime"] == "intermediate");
  CHECK(j[0]["warnings"].is_array());
}

TEST_CASE("number formatting") {
  CHECK(format_value(1.0 / 3.0) == "0.3333333333");
  CHECK(format_coordinate(0.1) == "0.1");
  CHECK(rounded(1.0 / 3.0) == 0.3333333333);
}
