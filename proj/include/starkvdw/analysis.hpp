#pragma once

// Quantities derived from the interaction model: crossover fields, force
// equilibria, and parameter sweeps with CSV/JSON serialization.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "starkvdw/geometry.hpp"
#include "starkvdw/interaction.hpp"

namespace starkvdw {

enum class Stability { stable, unstable, not_applicable };
std::string_view to_string(Stability s) noexcept;

struct RootResult {
  double value = 0.0;     // m or V/m
  double residual = 0.0;  // J or N
  double tolerance = 0.0; // bound the residual is held to, same unit
  std::pair<double, double> bracket{0.0, 0.0};
  Stability stability = Stability::not_applicable;
  int iterations = 0;
  Regime regime = Regime::near;
  std::vector<std::string> warnings;
};

/// Field E = E' > 0 at which |field term| = |vdW baseline|. Closed form since
/// the field term is quadratic in E.
RootResult crossover_field(const Geometry& geometry);

inline constexpr double kEquilibriumRelTol = 1e-9;
inline constexpr double kForceResidualRelTol = 1e-6;

/// Distance where radial_force vanishes inside the bracket. The bracket is
/// split at the vdW branch switch so the solver only sees smooth segments.
RootResult equilibrium_distance(double theta, const FieldConfig& fields, std::pair<double, double> bracket,
                                double rel_tol = kEquilibriumRelTol);

enum class Spacing { linear, log };
enum class FieldMode { equal, opposite };

struct GridRange {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;
  Spacing spacing = Spacing::linear;
};

std::vector<double> grid_points(const GridRange& range);

struct OutputSet {
  bool field = true;
  bool vdw = true;
  bool total = true;
  bool force = true;
  bool regime = true;
};

/// Parses a comma separated list of {field, vdw, total, force, regime}.
OutputSet parse_outputs(const std::string& list);

struct SweepSpec {
  GridRange r_range;
  double theta = 0.0;
  GridRange field_range;
  FieldMode field_mode = FieldMode::equal;
  OutputSet outputs;
  unsigned threads = 0; // 0: hardware concurrency
};

void validate(const SweepSpec& spec);

struct SweepRow {
  double r = 0.0;
  double theta = 0.0;
  double field = 0.0;
  double field_prime = 0.0;
  double field_energy = 0.0; // J
  double vdw_energy = 0.0;   // J
  double total_energy = 0.0; // J
  double force = 0.0;        // N
  Regime regime = Regime::near;
  std::vector<std::string> warnings;
};

/// Rows in r-major, then field order. Identical specs give identical tables
/// regardless of thread count.
std::vector<SweepRow> sweep(const SweepSpec& spec);

struct TableFormat {
  OutputSet outputs;
  bool si = false; // energies in J instead of eV
};

inline constexpr const char* kCsvHeader =
    "r_m,theta_rad,E_Vpm,Eprime_Vpm,field_eV,vdw_eV,total_eV,force_N,regime,warnings";

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, const TableFormat& format = {});
nlohmann::json to_json(const std::vector<SweepRow>& rows, const TableFormat& format = {});

/// Coordinates are printed in shortest round-trip form, derived values with
/// this many significant digits.
inline constexpr int kOutputDigits = 10;
std::string format_value(double v);
std::string format_coordinate(double v);
/// format_value(v) parsed back to double.
double rounded(double v);

} // namespace starkvdw
