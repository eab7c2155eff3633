#include "prudence/recalibration.hpp"

#include <cmath>
#include <string>

#include "prudence/roots.hpp"

namespace prudence {

namespace {

constexpr double kInteriorEps = 1e-12;

void require_interior(const Eigen::Ref<const Eigen::ArrayXd>& x, const char* what) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!(x[i] > kInteriorEps && x[i] < 1.0 - kInteriorEps))
      fail(errc::domain_error,
           std::string(what) + " not interior to (0, 1) (index " + std::to_string(i) + ")");
}

// Bracket failure here means broken preconditions, not a user-facing condition.
double solve_or_fault(const std::function<double(double)>& f, double target) {
  try {
    return solve_monotone_root(f, target, 1.0);
  } catch (const Error& e) {
    if (e.code() == errc::no_bracket)
      fail(errc::internal_fault, std::string("recalibration solver: ") + e.what());
    throw;
  }
}

}  // namespace

RecalibratedTargets power_transform(const Eigen::Ref<const Eigen::ArrayXd>& lambda,
                                    const WeightVector& w, double theta) {
  if (lambda.size() != w.size()) fail(errc::length_mismatch, "power_transform: length mismatch");
  require_interior(lambda, "power_transform: prediction");
  if (!(theta > 0.0 && theta < 1.0))
    fail(errc::domain_error, "power_transform: theta outside (0, 1)");

  double h;
  if (lambda.size() == 1) {
    h = std::log(theta) / std::log(lambda[0]);
  } else {
    auto f = [&](double hh) { return (w.values() * lambda.pow(hh)).sum(); };
    h = solve_or_fault(f, theta);
  }
  return RecalibratedTargets{theta, lambda.pow(h), h};
}

Eigen::ArrayXd odds_rho(const Eigen::Ref<const Eigen::ArrayXd>& p, const WeightVector& w) {
  if (p.size() != w.size()) fail(errc::length_mismatch, "odds_rho: length mismatch");
  require_interior(p, "odds_rho: probability");
  const double pw = weighted_mean(p, w);
  return ((1.0 - p) / p) * (pw / (1.0 - pw));
}

RecalibratedTargets odds_transform(const Eigen::Ref<const Eigen::ArrayXd>& p,
                                   const WeightVector& w, double theta) {
  if (!(theta > 0.0 && theta < 1.0))
    fail(errc::domain_error, "odds_transform: theta outside (0, 1)");
  const Eigen::ArrayXd rho = odds_rho(p, w);
  auto f = [&](double h) { return (w.values() / (theta + (1.0 - theta) * rho * h)).sum(); };
  const double h = solve_or_fault(f, 1.0);
  return RecalibratedTargets{theta, theta / (theta + (1.0 - theta) * rho * h), h};
}

RecalibratedTargets linear_scale(const Eigen::Ref<const Eigen::ArrayXd>& eta,
                                 const WeightVector& w, double theta) {
  if (eta.size() != w.size()) fail(errc::length_mismatch, "linear_scale: length mismatch");
  for (Eigen::Index i = 0; i < eta.size(); ++i)
    if (!(eta[i] > 0.0))
      fail(errc::domain_error, "linear_scale: prediction <= 0 (index " + std::to_string(i) + ")");
  if (!(theta > 0.0)) fail(errc::domain_error, "linear_scale: theta must be positive");
  const double eta_w = weighted_mean(eta, w);
  return RecalibratedTargets{theta, eta * (theta / eta_w), std::nullopt};
}

}  // namespace prudence
