#pragma once

#include <Eigen/Core>
#include <array>
#include <vector>

#include "prudence/errors.hpp"

namespace prudence {

/// Normalized sampling weights: every entry strictly positive, total one
/// within 1e-12 (a single observation carries weight exactly 1).
class WeightVector {
 public:
  static WeightVector equal(Eigen::Index n);

  const Eigen::ArrayXd& values() const noexcept { return w_; }
  Eigen::Index size() const noexcept { return w_.size(); }
  double operator[](Eigen::Index i) const { return w_[i]; }

 private:
  friend WeightVector normalize_weights(const Eigen::Ref<const Eigen::ArrayXd>& raw);
  explicit WeightVector(Eigen::ArrayXd w) : w_(std::move(w)) {}
  Eigen::ArrayXd w_;
};

/// w_i = raw_i / sum(raw). Inputs already summing to 1 (within 1e-12) pass
/// through unchanged. Rejects empty input and non-positive entries.
WeightVector normalize_weights(const Eigen::Ref<const Eigen::ArrayXd>& raw);

/// sum_i w_i x_i
double weighted_mean(const Eigen::Ref<const Eigen::ArrayXd>& x, const WeightVector& w);

/// sum_i w_i x_i^2 - (sum_i w_i x_i)^2, clamped at zero. A clamp caused by
/// round-off on near-constant data is reported through `clamped`.
double weighted_variance(const Eigen::Ref<const Eigen::ArrayXd>& x, const WeightVector& w,
                         bool* clamped = nullptr);

enum class SampleKind { residual, unit_interval, non_negative, probability };

/// Matched observation/prediction vectors with normalized weights.
///
/// Domain constraints by kind:
///   unit_interval: 0 <= obs <= 1, predictions strictly interior
///   non_negative:  obs >= 0, predictions > 0
///   probability:   obs in {0, 1}, predictions strictly interior
///   residual:      finite values only
struct PairedSample {
  Eigen::ArrayXd obs;
  Eigen::ArrayXd pred;
  WeightVector weights;
  SampleKind kind;

  static PairedSample make(Eigen::ArrayXd obs, Eigen::ArrayXd pred, WeightVector weights,
                           SampleKind kind);

  Eigen::Index size() const noexcept { return obs.size(); }
  Eigen::ArrayXd residuals() const { return obs - pred; }
  PairedSample with_weights(WeightVector w) const;
};

/// Residuals rescaled to n * w_i * Delta_i with the weights reset to 1/n, so
/// equal-weight machinery reproduces the weighted mean. Returns a residual
/// sample (obs = adjusted residuals, pred = 0).
PairedSample weight_adjust(const PairedSample& s);

/// The same rescaling applied to the observation and prediction columns
/// themselves. The result is a non-negative sample (scaled predictions stay
/// positive, scaled observations stay >= 0); unit-interval bounds are not
/// preserved, so the gamma-model tests are the ones that apply to it.
PairedSample weight_adjust_pairs(const PairedSample& s);

/// Descriptive statistics in the layout of the report's summary block.
struct SampleSummary {
  Eigen::Index n = 0;
  double mean_eq = 0.0;
  double mean_w = 0.0;
  double sd_eq = 0.0;
  double sd_w = 0.0;
  double sd_adj = 0.0;
  std::vector<double> top_weights;       // up to three largest, descending
  std::array<double, 5> quantiles{};     // 10/25/50/75/90% of the residuals
  std::array<double, 5> quantiles_adj{}; // same levels, weight-adjusted residuals
};

SampleSummary summarize(const PairedSample& s);

/// Empirical quantile with linear interpolation (type-7 convention).
double quantile_type7(const Eigen::Ref<const Eigen::ArrayXd>& x, double p);

}  // namespace prudence
