#pragma once

#include <functional>

namespace prudence {

struct RootOptions {
  double f_tol = 1e-12;       // tolerance on |f(h) - target|
  double x_rel_tol = 1e-14;   // relative bracket-width tolerance
  int max_bracket_steps = 200;
};

/// Solves f(h) = target for a continuous, strictly decreasing f on (0, inf).
/// The root is bracketed by doubling/halving from bracket_seed, then isolated
/// by bisection. Throws errc::no_bracket if max_bracket_steps expansions fail
/// to straddle the target, which signals a target outside the range of f.
double solve_monotone_root(const std::function<double(double)>& f, double target,
                           double bracket_seed, const RootOptions& opt = {});

}  // namespace prudence
