#pragma once

#include <functional>

namespace ants {

struct RootResult {
  double x = 0.0;      // best abscissa found
  double fx = 0.0;     // f at x
  int iterations = 0;  // iterations consumed
  bool bracketed = false;  // false when f(lo) and f(hi) share a sign
};

// Brent's derivative-free root finder (inverse quadratic / secant / bisection
// hybrid) on [lo, hi].  Requires a sign change across the interval; otherwise
// returns bracketed = false with x at the endpoint of smaller |f|.
// Stops when the bracket shrinks below rel_tol * |x| (plus a small absolute
// term) or |f(x)| <= f_tol.
RootResult brent_root(const std::function<double(double)>& f, double lo, double hi,
                      double rel_tol, double f_tol, int max_iter);

}  // namespace ants
