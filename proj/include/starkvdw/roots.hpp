#pragma once

#include <functional>

namespace starkvdw {

struct BracketSolution {
  double root;
  double value; // function value at root
  double lo;
  double hi;
  int iterations;
};

/// Bisection safeguarding secant steps. Requires a sign change on [lo, hi];
/// stops once hi - lo <= rel_tol * max(|lo|, |hi|) or an exact zero is hit.
BracketSolution solve_bracketed(const std::function<double(double)>& fn, double lo, double hi,
                                double rel_tol, int max_iterations = 500);

} // namespace starkvdw
