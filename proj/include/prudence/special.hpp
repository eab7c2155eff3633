#pragma once

#include <cstdint>

namespace prudence {

/// Standard normal distribution function Phi(x), absolute error below 1e-12.
double std_normal_cdf(double x);

/// Upper tail 1 - Phi(x), evaluated as Phi(-x) so it keeps relative accuracy
/// deep in the tail instead of rounding to zero near x ~ 8.
double std_normal_tail(double x);

/// Regularized incomplete beta function I_x(a, b) for a, b > 0 and x in [0, 1].
/// Continued-fraction evaluation; uses the symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
/// to stay on the fast-converging side.
double reg_inc_beta(double a, double b, double x);

/// Distribution function of Student's t with df >= 1 degrees of freedom,
/// computed from reg_inc_beta via the half-integral identity.
double student_t_cdf(double t, std::int64_t df);

}  // namespace prudence
