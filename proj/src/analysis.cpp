#include "starkvdw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/core.h>

#include "starkvdw/constants.hpp"
#include "starkvdw/errors.hpp"
#include "starkvdw/hydrogen.hpp"
#include "starkvdw/roots.hpp"

namespace starkvdw {

std::string_view to_string(Stability s) noexcept {
  switch (s) {
  case Stability::stable: return "stable";
  case Stability::unstable: return "unstable";
  case Stability::not_applicable: return "n/a";
  }
  return "unknown";
}

RootResult crossover_field(const Geometry& geometry) {
  validate_geometry(geometry);
  const FieldConfig unit{1.0, 1.0};
  const double per_unit = delta_e_general(geometry, unit);
  const double scale = std::abs(delta_e_perp(geometry.r, unit)) + std::abs(delta_e_par(geometry.r, unit));
  if (std::abs(per_unit) <= 1e-14 * scale)
    throw NoSolutionError(fmt::format("field term vanishes at theta = {} rad; no crossover exists", geometry.theta));

  const double vdw = std::abs(vdw_baseline(geometry.r).energy);
  const double field = std::sqrt(vdw / std::abs(per_unit));

  RootResult out;
  out.value = field;
  out.residual = std::abs(delta_e_general(geometry, {field, field})) - vdw;
  out.tolerance = 1e-10 * vdw;
  out.bracket = {field, field};
  out.stability = Stability::not_applicable;
  out.iterations = 0;
  out.regime = classify_regime(geometry.r);
  const double stark = stark_validity(field);
  if (stark > kStarkHardRatio)
    out.warnings.push_back(fmt::format("beyond_perturbative_limit({:.2e})", stark));
  else if (stark > kStarkWarnRatio)
    out.warnings.push_back(fmt::format("stark_soft_limit({:.2e})", stark));
  if (out.regime == Regime::intermediate) out.warnings.emplace_back("vdw_intermediate_zone");
  return out;
}

namespace {

// Radial force with the vdW branch pinned, so each segment is smooth.
double force_on_branch(double r, double theta, const FieldConfig& fields, Zone branch) {
  const double vdw = branch == Zone::near ? 6.0 * vdw_near_formula(r) / r : 7.0 * vdw_far_formula(r) / r;
  return field_force({r, theta}, fields) + vdw;
}

double force_scale(double r, double theta, const FieldConfig& fields, Zone branch) {
  const double vdw = branch == Zone::near ? 6.0 * vdw_near_formula(r) / r : 7.0 * vdw_far_formula(r) / r;
  return std::abs(field_force({r, theta}, fields)) + std::abs(vdw);
}

Stability classify(double r, double theta, const FieldConfig& fields, Zone branch) {
  const double h = 1e-6 * r;
  const double slope = force_on_branch(r + h, theta, fields, branch) - force_on_branch(r - h, theta, fields, branch);
  // dF/dr > 0: an outward displacement meets a repulsive force
  return slope > 0.0 ? Stability::unstable : Stability::stable;
}

} // namespace

RootResult equilibrium_distance(double theta, const FieldConfig& fields, std::pair<double, double> bracket,
                                double rel_tol) {
  if (!(rel_tol > 0.0)) throw DomainError("equilibrium_distance: rel_tol must be positive");
  auto [lo, hi] = bracket;
  validate_geometry({lo, theta});
  validate_geometry({hi, theta});
  if (!(lo < hi)) throw DomainError(fmt::format("bracket ({}, {}) must satisfy lo < hi", lo, hi));
  require_perturbative(fields.field);
  require_perturbative(fields.field_prime);

  const double r_switch = kVdwSwitch / hydrogen_data().k0;
  struct Segment {
    double lo, hi;
    Zone branch;
  };
  std::vector<Segment> segments;
  if (hi <= r_switch) {
    segments.push_back({lo, hi, Zone::near});
  } else if (lo >= r_switch) {
    segments.push_back({lo, hi, Zone::far});
  } else {
    segments.push_back({lo, r_switch, Zone::near});
    segments.push_back({r_switch, hi, Zone::far});
  }

  for (const auto& seg : segments) {
    const double f_lo = force_on_branch(seg.lo, theta, fields, seg.branch);
    const double f_hi = force_on_branch(seg.hi, theta, fields, seg.branch);
    if (f_lo == 0.0 || f_hi == 0.0 || std::signbit(f_lo) != std::signbit(f_hi)) {
      auto fn = [&](double r) { return force_on_branch(r, theta, fields, seg.branch); };
      const auto sol = solve_bracketed(fn, seg.lo, seg.hi, rel_tol);
      RootResult out;
      out.value = sol.root;
      out.residual = radial_force({sol.root, theta}, fields);
      out.tolerance = kForceResidualRelTol * force_scale(sol.root, theta, fields, seg.branch);
      out.bracket = {sol.lo, sol.hi};
      out.iterations = sol.iterations;
      out.stability = classify(sol.root, theta, fields, seg.branch);
      out.regime = classify_regime(sol.root);
      if (out.regime == Regime::intermediate) out.warnings.emplace_back("vdw_intermediate_zone");
      return out;
    }
  }

  if (segments.size() == 2) {
    const double near_side = force_on_branch(r_switch, theta, fields, Zone::near);
    const double far_side = force_on_branch(r_switch, theta, fields, Zone::far);
    if (std::signbit(near_side) != std::signbit(far_side)) {
      RootResult out;
      out.value = r_switch;
      out.residual = near_side;
      out.tolerance = kForceResidualRelTol * force_scale(r_switch, theta, fields, Zone::near);
      out.bracket = {r_switch, r_switch};
      out.stability = near_side < far_side ? Stability::unstable : Stability::stable;
      out.regime = classify_regime(r_switch);
      out.warnings.emplace_back("root_at_vdw_switch");
      return out;
    }
  }
  throw NoSolutionError(fmt::format("radial force has no sign change on ({:.6e}, {:.6e}) m", lo, hi));
}

std::vector<double> grid_points(const GridRange& range) {
  std::vector<double> out(range.count);
  if (range.count == 1) {
    out[0] = range.min;
    return out;
  }
  const double n = static_cast<double>(range.count - 1);
  for (std::size_t i = 0; i < range.count; ++i) {
    const double t = static_cast<double>(i) / n;
    if (range.spacing == Spacing::log)
      out[i] = std::pow(10.0, std::log10(range.min) + t * (std::log10(range.max) - std::log10(range.min)));
    else
      out[i] = range.min + t * (range.max - range.min);
  }
  // pin the endpoints exactly
  out.front() = range.min;
  out.back() = range.max;
  return out;
}

OutputSet parse_outputs(const std::string& list) {
  OutputSet set{false, false, false, false, false};
  std::stringstream ss(list);
  std::string item;
  bool any = false;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    any = true;
    if (item == "field" || item == "field_component") set.field = true;
    else if (item == "vdw") set.vdw = true;
    else if (item == "total") set.total = true;
    else if (item == "force") set.force = true;
    else if (item == "regime") set.regime = true;
    else throw SpecError(fmt::format("unknown sweep output '{}'", item));
  }
  if (!any) throw SpecError("sweep outputs list is empty");
  return set;
}

namespace {

void validate_range(const GridRange& range, const char* name) {
  if (range.count < 1) throw SpecError(fmt::format("{} count must be >= 1", name));
  if (!std::isfinite(range.min) || !std::isfinite(range.max))
    throw SpecError(fmt::format("{} bounds must be finite", name));
  if (range.min > range.max) throw SpecError(fmt::format("{} min must not exceed max", name));
  if (range.spacing == Spacing::log && range.min <= 0.0)
    throw SpecError(fmt::format("{} log spacing needs a positive minimum", name));
}

} // namespace

void validate(const SweepSpec& spec) {
  validate_range(spec.r_range, "r");
  validate_range(spec.field_range, "field");
  if (spec.r_range.min < min_separation())
    throw SpecError(fmt::format("r min {:.6e} m is below r_min = 10 a0 = {:.6e} m", spec.r_range.min, min_separation()));
  if (!std::isfinite(spec.theta) || spec.theta < 0.0 || spec.theta > kPi)
    throw SpecError(fmt::format("theta = {} rad must lie in [0, pi]", spec.theta));
  const double strongest = std::max(std::abs(spec.field_range.min), std::abs(spec.field_range.max));
  if (stark_validity(strongest) > kStarkHardRatio)
    throw SpecError(fmt::format("field {:.3e} V/m exceeds the perturbative limit", strongest));
}

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  validate(spec);
  const auto rs = grid_points(spec.r_range);
  const auto fields = grid_points(spec.field_range);
  const std::size_t total = rs.size() * fields.size();
  std::vector<SweepRow> rows(total);

  auto compute = [&](std::size_t idx) {
    const double r = rs[idx / fields.size()];
    const double e = fields[idx % fields.size()];
    const FieldConfig fc{e, spec.field_mode == FieldMode::equal ? e : -e};
    const Geometry geo{r, spec.theta};
    const auto b = total_energy(geo, fc);
    SweepRow& row = rows[idx];
    row.r = r;
    row.theta = spec.theta;
    row.field = fc.field;
    row.field_prime = fc.field_prime;
    row.field_energy = b.field_component;
    row.vdw_energy = b.vdw_component;
    row.total_energy = b.total;
    row.force = radial_force(geo, fc);
    row.regime = b.regime;
    row.warnings = b.warnings;
  };

  unsigned workers = spec.threads != 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) compute(i);
    return rows;
  }
  // each row depends only on its index, so the schedule cannot change the table
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < total; i += workers) compute(i);
    });
  for (auto& t : pool) t.join();
  return rows;
}

// + 0.0 folds -0 into 0
std::string format_value(double v) { return fmt::format("{:.{}g}", v + 0.0, kOutputDigits); }

std::string format_coordinate(double v) { return fmt::format("{}", v); }

double rounded(double v) { return std::strtod(format_value(v).c_str(), nullptr); }

namespace {

double energy_unit(double joule, bool si) { return si ? joule : joule_to_ev(joule); }

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

} // namespace

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, const TableFormat& format) {
  if (format.si)
    out << "r_m,theta_rad,E_Vpm,Eprime_Vpm,field_J,vdw_J,total_J,force_N,regime,warnings\n";
  else
    out << kCsvHeader << '\n';
  const auto& o = format.outputs;
  for (const auto& row : rows) {
    out << format_coordinate(row.r) << ',' << format_coordinate(row.theta) << ',' << format_coordinate(row.field)
        << ',' << format_coordinate(row.field_prime) << ',';
    out << (o.field ? format_value(energy_unit(row.field_energy, format.si)) : "") << ',';
    out << (o.vdw ? format_value(energy_unit(row.vdw_energy, format.si)) : "") << ',';
    out << (o.total ? format_value(energy_unit(row.total_energy, format.si)) : "") << ',';
    out << (o.force ? format_value(row.force) : "") << ',';
    out << (o.regime ? std::string(to_string(row.regime)) : "") << ',';
    out << join(row.warnings, ';') << '\n';
  }
}

nlohmann::json to_json(const std::vector<SweepRow>& rows, const TableFormat& format) {
  const auto& o = format.outputs;
  const std::string suffix = format.si ? "_J" : "_eV";
  auto maybe = [](bool on, double v) -> nlohmann::json { return on ? nlohmann::json(rounded(v)) : nlohmann::json(); };
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj;
    obj["r_m"] = row.r;
    obj["theta_rad"] = row.theta;
    obj["E_Vpm"] = row.field;
    obj["Eprime_Vpm"] = row.field_prime;
    obj["field" + suffix] = maybe(o.field, energy_unit(row.field_energy, format.si));
    obj["vdw" + suffix] = maybe(o.vdw, energy_unit(row.vdw_energy, format.si));
    obj["total" + suffix] = maybe(o.total, energy_unit(row.total_energy, format.si));
    obj["force_N"] = maybe(o.force, row.force);
    obj["regime"] = o.regime ? nlohmann::json(std::string(to_string(row.regime))) : nlohmann::json();
    obj["warnings"] = row.warnings;
    arr.push_back(std::move(obj));
  }
  return arr;
}

} // namespace starkvdw
