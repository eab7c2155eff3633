#include "prudence/special.hpp"

#include <cmath>

#include "prudence/errors.hpp"

namespace prudence {

double std_normal_cdf(double x) {
  if (std::isnan(x)) fail(errc::domain_error, "std_normal_cdf: NaN argument");
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double std_normal_tail(double x) { return std_normal_cdf(-x); }

namespace {

constexpr double kCfEps = 1e-15;
constexpr int kCfMaxIter = 1000000;

// Continued fraction for the incomplete beta function, modified Lentz scheme.
double inc_beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kCfMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kCfEps) return h;
  }
  fail(errc::internal_fault, "reg_inc_beta: continued fraction did not converge");
}

}  // namespace

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    fail(errc::domain_error, "reg_inc_beta: parameters must be positive");
  if (!(x >= 0.0 && x <= 1.0)) fail(errc::domain_error, "reg_inc_beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log1p(-x) -
                           (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * inc_beta_cf(a, b, x) / a;
  return 1.0 - front * inc_beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, std::int64_t df) {
  if (df < 1) fail(errc::domain_error, "student_t_cdf: df must be >= 1");
  if (t == 0.0) return 0.5;
  const double nu = static_cast<double>(df);
  const double tail = 0.5 * reg_inc_beta(0.5 * nu, 0.5, nu / (nu + t * t));
  return t > 0.0 ? 1.0 - tail : tail;
}

}  // namespace prudence
