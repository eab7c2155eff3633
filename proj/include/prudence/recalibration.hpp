#pragma once

#include <Eigen/Core>
#include <optional>

#include "prudence/sample.hpp"

namespace prudence {

/// Per-observation targets whose weighted mean equals the portfolio-level
/// target theta. `h` carries the solver output for the transforms that have
/// one (power and odds); linear scaling leaves it empty.
struct RecalibratedTargets {
  double theta = 0.0;
  Eigen::ArrayXd theta_i;
  std::optional<double> h;
};

/// theta_i = lambda_i^h, with h the unique solution of
/// sum_i w_i lambda_i^h = theta. Keeps targets strictly inside (0, 1).
RecalibratedTargets power_transform(const Eigen::Ref<const Eigen::ArrayXd>& lambda,
                                    const WeightVector& w, double theta);

/// rho_i = (1 - p_i)/p_i * p_w/(1 - p_w); equals 1 for a homogeneous portfolio.
Eigen::ArrayXd odds_rho(const Eigen::Ref<const Eigen::ArrayXd>& p, const WeightVector& w);

/// Bayes-odds form: theta_i = theta / (theta + (1 - theta) rho_i h), with h
/// the unique solution of sum_i w_i / (theta + (1 - theta) rho_i h) = 1.
RecalibratedTargets odds_transform(const Eigen::Ref<const Eigen::ArrayXd>& p,
                                   const WeightVector& w, double theta);

/// theta_i = eta_i * theta / eta_w, for positive predictions and theta > 0.
RecalibratedTargets linear_scale(const Eigen::Ref<const Eigen::ArrayXd>& eta,
                                 const WeightVector& w, double theta);

}  // namespace prudence
