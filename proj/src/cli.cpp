#include "starkvdw/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "starkvdw/analysis.hpp"
#include "starkvdw/constants.hpp"
#include "starkvdw/errors.hpp"
#include "starkvdw/hydrogen.hpp"
#include "starkvdw/interaction.hpp"
#include "starkvdw/oracle.hpp"

namespace starkvdw::cli {

namespace {

using nlohmann::json;

enum class Format { text, csv, json };

// Keys a config file may set, by the subcommand that consumes them. Global
// options are listed under "".
const std::map<std::string, std::set<std::string>>& key_scopes() {
  static const std::map<std::string, std::set<std::string>> scopes{
      {"", {"format", "output", "si"}},
      {"energy", {"r", "theta", "field", "field-prime"}},
      {"sweep",
       {"r-min", "r-max", "r-count", "r-spacing", "theta", "field-min", "field-max", "field-count", "field-spacing",
        "field-mode", "outputs", "threads"}},
      {"crossover", {"r", "theta"}},
      {"equilibrium", {"theta", "field", "field-prime", "bracket-lo", "bracket-hi", "rel-tol"}},
  };
  return scopes;
}

bool known_key(const std::string& key) {
  return std::any_of(key_scopes().begin(), key_scopes().end(), [&](const auto& kv) { return kv.second.count(key); });
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

std::map<std::string, std::string> load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(fmt::format("cannot open '{}'", path));
  auto kv = parse_key_values(in, path);
  for (const auto& [k, v] : kv)
    if (!known_key(k)) throw SpecError(fmt::format("{}: unknown key '{}'", path, k));
  return kv;
}

// Value following `--name` or `--name=...`, if present.
std::optional<std::string> find_flag(const std::vector<std::string>& args, const std::string& name) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == name && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind(name + "=", 0) == 0) return args[i].substr(name.size() + 1);
  }
  return std::nullopt;
}

std::set<std::string> given_flags(const std::vector<std::string>& args) {
  std::set<std::string> out;
  for (const auto& a : args) {
    if (a.rfind("--", 0) != 0) continue;
    out.insert(a.substr(2, a.find('=') - 2));
  }
  return out;
}

double parse_theta(const std::string& text) {
  if (text == "perp") return 0.5 * kPi;
  if (text == "par") return 0.0;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw SpecError(fmt::format("theta '{}' is neither a number (rad) nor perp/par", text));
  return v;
}

Spacing parse_spacing(const std::string& s) {
  if (s == "linear") return Spacing::linear;
  if (s == "log") return Spacing::log;
  throw SpecError(fmt::format("spacing '{}' must be linear or log", s));
}

std::string num(double v) { return format_value(v); }

struct Globals {
  std::string format = "text";
  std::string output;
  std::string config;
  bool si = false;
};

Format to_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  return Format::text;
}

double energy_out(double joule, bool si) { return si ? joule : joule_to_ev(joule); }

std::string energy_unit(bool si) { return si ? "J" : "eV"; }

// Ordered key/value listing used by the text and csv renderers.
using Listing = std::vector<std::pair<std::string, std::string>>;

void render_listing(std::ostream& os, Format fmt_kind, const Listing& listing, const json& as_json) {
  if (fmt_kind == Format::json) {
    os << as_json.dump(2) << '\n';
  } else if (fmt_kind == Format::csv) {
    os << "key,value\n";
    for (const auto& [k, v] : listing) os << k << ',' << v << '\n';
  } else {
    std::size_t width = 0;
    for (const auto& kv : listing) width = std::max(width, kv.first.size());
    for (const auto& [k, v] : listing) os << fmt::format("{:<{}} = {}\n", k, width, v);
  }
}

std::string join_warnings(const std::vector<std::string>& w) {
  if (w.empty()) return "";
  std::string out = w.front();
  for (std::size_t i = 1; i < w.size(); ++i) out += ";" + w[i];
  return out;
}

// ---------------------------------------------------------------------------

void cmd_constants(std::ostream& os, Format f) {
  const auto& k = codata2018;
  const auto& h = hydrogen_data();
  Listing l{
      {"hbar_Js", num(k.hbar)},
      {"c_mps", num(k.c)},
      {"eps0_C2_per_Jm", num(k.eps0)},
      {"q_e_C", num(k.q_e)},
      {"a0_m", num(k.a0)},
      {"m_e_kg", num(k.m_e)},
      {"E1_J", num(h.E1)},
      {"E1_eV", num(joule_to_ev(h.E1))},
      {"E2_J", num(h.E2)},
      {"E2_eV", num(joule_to_ev(h.E2))},
      {"transition_energy_eV", num(joule_to_ev(h.transition_energy()))},
      {"k0_per_m", num(h.k0)},
      {"mu_eg_Cm", num(h.mu_eg)},
      {"gamma_Cm_per_J", num(h.gamma)},
      {"alpha_C2m2_per_J", num(h.alpha)},
      {"beta_C2m3_per_J", num(h.beta)},
      {"Ebar_J", num(h.Ebar)},
      {"Ebar_eV", num(joule_to_ev(h.Ebar))},
      {"r_min_m", num(min_separation())},
  };
  json j = json::object();
  for (const auto& [key, v] : l) j[key] = std::stod(v);
  render_listing(os, f, l, j);
}

void cmd_energy(std::ostream& os, Format f, bool si, double r, double theta, double e, double ep) {
  const Geometry geo{r, theta};
  const FieldConfig fields{e, ep};
  const auto b = total_energy(geo, fields);
  const double force = radial_force(geo, fields);
  if (f == Format::csv) {
    SweepRow row{r, theta, e, ep, b.field_component, b.vdw_component, b.total, force, b.regime, b.warnings};
    write_csv(os, {row}, {OutputSet{}, si});
    return;
  }
  const std::string u = energy_unit(si);
  Listing l{
      {"r_m", format_coordinate(r)},
      {"theta_rad", format_coordinate(theta)},
      {"E_Vpm", format_coordinate(e)},
      {"Eprime_Vpm", format_coordinate(ep)},
      {"field_" + u, num(energy_out(b.field_component, si))},
      {"vdw_" + u, num(energy_out(b.vdw_component, si))},
      {"total_" + u, num(energy_out(b.total, si))},
      {"force_N", num(force)},
      {"regime", std::string(to_string(b.regime))},
      {"warnings", join_warnings(b.warnings)},
  };
  json j{{"r_m", r},
         {"theta_rad", theta},
         {"E_Vpm", e},
         {"Eprime_Vpm", ep},
         {"field_" + u, rounded(energy_out(b.field_component, si))},
         {"vdw_" + u, rounded(energy_out(b.vdw_component, si))},
         {"total_" + u, rounded(energy_out(b.total, si))},
         {"force_N", rounded(force)},
         {"regime", std::string(to_string(b.regime))},
         {"warnings", b.warnings}};
  render_listing(os, f, l, j);
}

void render_root(std::ostream& os, Format f, const std::string& value_key, const std::string& residual_key,
                 const RootResult& res, const Listing& head, json j) {
  Listing l = head;
  l.emplace_back(value_key, num(res.value));
  l.emplace_back(residual_key, num(res.residual));
  l.emplace_back("tolerance", num(res.tolerance));
  l.emplace_back("bracket_lo", num(res.bracket.first));
  l.emplace_back("bracket_hi", num(res.bracket.second));
  l.emplace_back("stability", std::string(to_string(res.stability)));
  l.emplace_back("iterations", std::to_string(res.iterations));
  l.emplace_back("regime", std::string(to_string(res.regime)));
  l.emplace_back("warnings", join_warnings(res.warnings));
  j[value_key] = rounded(res.value);
  j[residual_key] = rounded(res.residual);
  j["tolerance"] = rounded(res.tolerance);
  j["bracket"] = {rounded(res.bracket.first), rounded(res.bracket.second)};
  j["stability"] = std::string(to_string(res.stability));
  j["iterations"] = res.iterations;
  j["regime"] = std::string(to_string(res.regime));
  j["warnings"] = res.warnings;
  render_listing(os, f, l, j);
}

int cmd_oracle(std::ostream& os, Format f, const std::string& suite_name) {
  static const std::map<std::string, oracle::Suite> suites{{"specfun", oracle::Suite::specfun},
                                                           {"kspace", oracle::Suite::kspace},
                                                           {"matrix", oracle::Suite::matrix},
                                                           {"stark", oracle::Suite::stark},
                                                           {"all", oracle::Suite::all}};
  const auto it = suites.find(suite_name);
  if (it == suites.end()) throw SpecError(fmt::format("unknown oracle suite '{}'", suite_name));
  const auto rows = oracle::run_suite(it->second);
  const bool ok = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.passed; });
  if (f == Format::json) {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"suite", r.suite},
                     {"check", r.check},
                     {"max_error", r.max_error},
                     {"threshold", r.threshold},
                     {"passed", r.passed}});
    os << json{{"passed", ok}, {"checks", arr}}.dump(2) << '\n';
  } else if (f == Format::csv) {
    os << "suite,check,max_error,threshold,passed\n";
    for (const auto& r : rows)
      os << r.suite << ",\"" << r.check << "\"," << num(r.max_error) << ',' << num(r.threshold) << ','
         << (r.passed ? "true" : "false") << '\n';
  } else {
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.check.size());
    os << fmt::format("{:<8} {:<{}} {:>12} {:>12}  {}\n", "suite", "check", width, "max_error", "threshold", "result");
    for (const auto& r : rows)
      os << fmt::format("{:<8} {:<{}} {:>12.3e} {:>12.3e}  {}\n", r.suite, r.check, width, r.max_error, r.threshold,
                        r.passed ? "PASS" : "FAIL");
    os << (ok ? "all checks passed\n" : "some checks FAILED\n");
  }
  return ok ? kOk : kOracleFailure;
}

} // namespace

std::map<std::string, std::string> parse_key_values(std::istream& in, const std::string& source) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw SpecError(fmt::format("{}:{}: expected 'key = value'", source, lineno));
    const std::string key = normalize_key(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw SpecError(fmt::format("{}:{}: empty key or value", source, lineno));
    out[key] = value;
  }
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = raw_args;
  std::string subcommand;
  for (const auto& a : args) {
    if (key_scopes().count(a) || a == "oracle-check" || a == "constants") {
      subcommand = a;
      break;
    }
  }

  try {
    // defaults from --config, then --spec-file; explicit flags win
    std::map<std::string, std::string> defaults;
    if (auto path = find_flag(args, "--config")) defaults = load_key_values(*path);
    if (subcommand == "sweep")
      if (auto path = find_flag(args, "--spec-file"))
        for (auto& [k, v] : load_key_values(*path)) defaults[k] = v;
    const auto given = given_flags(args);
    for (const auto& [k, v] : defaults) {
      if (given.count(k)) continue;
      const bool global = key_scopes().at("").count(k) > 0;
      const auto scope = key_scopes().find(subcommand);
      const bool local = scope != key_scopes().end() && scope->second.count(k) > 0;
      if (!global && !local) continue;
      if (k == "si") {
        if (v == "true" || v == "1" || v == "yes") args.push_back("--si");
        continue;
      }
      args.push_back("--" + k + "=" + v);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  CLI::App app{"Field-modified dispersion interaction between two ground-state hydrogen atoms", "starkvdw"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--output", g.output, "Write output to this file instead of stdout");
  app.add_option("--config", g.config, "key = value file supplying defaults");
  app.add_flag("--si", g.si, "Report energies in J instead of eV");

  app.add_subcommand("constants", "Print physical constants and derived hydrogen data");

  std::string theta_text = "perp";
  double r = 0.0, field = 0.0, field_prime = 0.0;
  auto* energy = app.add_subcommand("energy", "Field term, vdW baseline, total and force at one point");
  energy->add_option("--r", r, "Interatomic distance (m)")->required();
  energy->add_option("--theta", theta_text, "Angle to the field axis: radians, perp or par");
  energy->add_option("--field", field, "Field on atom A (V/m)");
  energy->add_option("--field-prime", field_prime, "Field on atom B (V/m)");

  SweepSpec spec;
  std::string r_spacing = "log", f_spacing = "linear", field_mode = "equal", outputs = "field,vdw,total,force,regime";
  std::string sweep_theta = "perp", spec_file;
  std::size_t r_count = 1, f_count = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate energies over an r x field grid");
  sweep_cmd->add_option("--spec-file", spec_file, "key = value file with sweep settings");
  sweep_cmd->add_option("--r-min", spec.r_range.min, "Smallest distance (m)")->required();
  sweep_cmd->add_option("--r-max", spec.r_range.max, "Largest distance (m)")->required();
  sweep_cmd->add_option("--r-count", r_count, "Number of distances");
  sweep_cmd->add_option("--r-spacing", r_spacing, "linear or log");
  sweep_cmd->add_option("--theta", sweep_theta, "Angle: radians, perp or par");
  sweep_cmd->add_option("--field-min", spec.field_range.min, "Smallest field (V/m)");
  sweep_cmd->add_option("--field-max", spec.field_range.max, "Largest field (V/m)");
  sweep_cmd->add_option("--field-count", f_count, "Number of field values");
  sweep_cmd->add_option("--field-spacing", f_spacing, "linear or log");
  sweep_cmd->add_option("--field-mode", field_mode, "equal (E' = E) or opposite (E' = -E)")
      ->check(CLI::IsMember({"equal", "opposite"}));
  sweep_cmd->add_option("--outputs", outputs, "Comma list of field,vdw,total,force,regime");
  sweep_cmd->add_option("--threads", spec.threads, "Worker threads (0: all cores)");

  double cross_r = 0.0;
  std::string cross_theta = "perp";
  auto* cross = app.add_subcommand("crossover", "Field at which the field term matches the vdW baseline");
  cross->add_option("--r", cross_r, "Interatomic distance (m)")->required();
  cross->add_option("--theta", cross_theta, "Angle: radians, perp or par");

  std::string eq_theta = "perp";
  double eq_field = 0.0, eq_field_prime = 0.0, lo = 1e-7, hi = 1e-5, rel_tol = kEquilibriumRelTol;
  auto* eq = app.add_subcommand("equilibrium", "Distance where the total radial force vanishes");
  eq->add_option("--theta", eq_theta, "Angle: radians, perp or par");
  eq->add_option("--field", eq_field, "Field on atom A (V/m)");
  eq->add_option("--field-prime", eq_field_prime, "Field on atom B (V/m)");
  eq->add_option("--bracket-lo", lo, "Lower end of the search bracket (m)");
  eq->add_option("--bracket-hi", hi, "Upper end of the search bracket (m)");
  eq->add_option("--rel-tol", rel_tol, "Relative tolerance on the root");

  std::string suite = "all";
  auto* orc = app.add_subcommand("oracle-check", "Run the independent numerical validation suites");
  orc->add_option("suite", suite, "specfun, kspace, matrix, stark or all");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const Format f = to_format(g.format);
  std::ostringstream buffer;
  int code = kOk;
  try {
    if (app.got_subcommand("constants")) {
      cmd_constants(buffer, f);
    } else if (app.got_subcommand(energy)) {
      cmd_energy(buffer, f, g.si, r, parse_theta(theta_text), field, field_prime);
    } else if (app.got_subcommand(sweep_cmd)) {
      spec.r_range.count = r_count;
      spec.r_range.spacing = parse_spacing(r_spacing);
      if (sweep_cmd->count("--field-max") == 0) spec.field_range.max = spec.field_range.min;
      spec.field_range.count = f_count;
      spec.field_range.spacing = parse_spacing(f_spacing);
      spec.theta = parse_theta(sweep_theta);
      spec.field_mode = field_mode == "opposite" ? FieldMode::opposite : FieldMode::equal;
      spec.outputs = parse_outputs(outputs);
      const auto rows = sweep(spec);
      const TableFormat tf{spec.outputs, g.si};
      if (f == Format::json)
        buffer << to_json(rows, tf).dump(2) << '\n';
      else
        write_csv(buffer, rows, tf); // text and csv share the table layout
    } else if (app.got_subcommand(cross)) {
      const double theta = parse_theta(cross_theta);
      const auto res = crossover_field({cross_r, theta});
      render_root(buffer, f, "crossover_field_Vpm", "residual_J", res,
                  {{"r_m", format_coordinate(cross_r)}, {"theta_rad", format_coordinate(theta)}},
                  json{{"r_m", cross_r}, {"theta_rad", theta}});
    } else if (app.got_subcommand(eq)) {
      const double theta = parse_theta(eq_theta);
      const auto res = equilibrium_distance(theta, {eq_field, eq_field_prime}, {lo, hi}, rel_tol);
      render_root(buffer, f, "r_eq_m", "residual_N", res,
                  {{"theta_rad", format_coordinate(theta)},
                   {"E_Vpm", format_coordinate(eq_field)},
                   {"Eprime_Vpm", format_coordinate(eq_field_prime)}},
                  json{{"theta_rad", theta}, {"E_Vpm", eq_field}, {"Eprime_Vpm", eq_field_prime}});
    } else if (app.got_subcommand(orc)) {
      code = cmd_oracle(buffer, f, suite);
    }
  } catch (const NoSolutionError& e) {
    err << "no solution: " << e.what() << '\n';
    return kNoSolution;
  } catch (const OracleFailure& e) {
    err << "oracle failure: " << e.what() << '\n';
    return kOracleFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (!g.output.empty()) {
    std::ofstream file(g.output);
    if (!file) {
      err << "error: cannot write '" << g.output << "'\n";
      return kUsage;
    }
    file << buffer.str();
  } else {
    out << buffer.str();
  }
  return code;
}

} // namespace starkvdw::cli
