#pragma once

namespace starkvdw {

/// Signed static field strengths along z, in V/m, on atom A and atom B.
struct FieldConfig {
  double field = 0.0;
  double field_prime = 0.0;
};

/// Interatomic distance (m) and the angle (rad) between the interatomic axis
/// and the common field axis z.
struct Geometry {
  double r = 0.0;
  double theta = 0.0;
};

} // namespace starkvdw
