#include "starkvdw/roots.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/core.h>

#include "starkvdw/errors.hpp"

namespace starkvdw {

BracketSolution solve_bracketed(const std::function<double(double)>& fn, double lo, double hi,
                                double rel_tol, int max_iterations) {
  if (!(lo < hi)) throw DomainError(fmt::format("bracket [{}, {}] is empty", lo, hi));
  double a = lo;
  double b = hi;
  double fa = fn(a);
  double fb = fn(b);
  if (fa == 0.0) return {a, fa, a, a, 0};
  if (fb == 0.0) return {b, fb, b, b, 0};
  if (std::signbit(fa) == std::signbit(fb))
    throw NoSolutionError(fmt::format("no sign change on [{:.6e}, {:.6e}]: f = {:.3e}, {:.3e}", a, b, fa, fb));

  int it = 0;
  bool force_bisect = false;
  while (it < max_iterations) {
    const double width = b - a;
    if (width <= rel_tol * std::max(std::abs(a), std::abs(b))) break;
    ++it;

    double s = 0.5 * (a + b);
    if (!force_bisect) {
      const double secant = b - fb * (b - a) / (fb - fa);
      // stay clear of the endpoints so the bracket keeps shrinking
      const double margin = 1e-3 * width;
      if (std::isfinite(secant) && secant > a + margin && secant < b - margin) s = secant;
    }
    const double fs = fn(s);
    if (fs == 0.0) return {s, fs, s, s, it};
    if (std::signbit(fs) == std::signbit(fa)) {
      a = s;
      fa = fs;
    } else {
      b = s;
      fb = fs;
    }
    // fall back to bisection whenever a step fails to halve the bracket
    force_bisect = (b - a) > 0.5 * width;
  }
  if (it >= max_iterations) throw NoSolutionError("bracketed solver exceeded its iteration budget");
  if (std::abs(fa) < std::abs(fb)) return {a, fa, a, b, it};
  return {b, fb, a, b, it};
}

} // namespace starkvdw
