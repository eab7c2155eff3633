#include "prudence/roots.hpp"

#include <algorithm>
#include <cmath>

#include "prudence/errors.hpp"

namespace prudence {

double solve_monotone_root(const std::function<double(double)>& f, double target,
                           double bracket_seed, const RootOptions& opt) {
  if (!(bracket_seed > 0.0))
    fail(errc::domain_error, "solve_monotone_root: bracket_seed must be positive");

  double lo = bracket_seed;
  double hi = bracket_seed;
  double flo = f(bracket_seed);
  double fhi = flo;
  if (flo == target) return bracket_seed;
  if (flo < target) {
    // f decreasing, so the root lies to the left; halve lo until f(lo) >= target.
    for (int k = 0; flo < target; ++k) {
      if (k >= opt.max_bracket_steps)
        fail(errc::no_bracket, "solve_monotone_root: target above range of f");
      hi = lo;
      fhi = flo;
      lo *= 0.5;
      flo = f(lo);
    }
  } else {
    for (int k = 0; fhi > target; ++k) {
      if (k >= opt.max_bracket_steps)
        fail(errc::no_bracket, "solve_monotone_root: target below range of f");
      lo = hi;
      flo = fhi;
      hi *= 2.0;
      fhi = f(hi);
    }
  }

  // Invariant: f(lo) >= target >= f(hi), lo <= root <= hi.
  double mid = 0.5 * (lo + hi);
  for (int k = 0; k < 200; ++k) {
    mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::fabs(fm - target) <= opt.f_tol) return mid;
    if (fm > target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= opt.x_rel_tol * std::max(1.0, mid)) return 0.5 * (lo + hi);
  }
  return mid;
}

}  // namespace prudence
