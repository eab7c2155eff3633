#include "prudence/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace prudence {

namespace {

constexpr double kInteriorEps = 1e-12;

[[noreturn]] void bad_row(errc code, const std::string& what, Eigen::Index i) {
  fail(code, what + " (index " + std::to_string(i) + ")");
}

}  // namespace

WeightVector WeightVector::equal(Eigen::Index n) {
  if (n < 1) fail(errc::empty_sample, "WeightVector::equal: n must be >= 1");
  return WeightVector(Eigen::ArrayXd::Constant(n, 1.0 / static_cast<double>(n)));
}

WeightVector normalize_weights(const Eigen::Ref<const Eigen::ArrayXd>& raw) {
  const Eigen::Index n = raw.size();
  if (n == 0) fail(errc::empty_sample, "normalize_weights: empty input");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(raw[i] > 0.0)) bad_row(errc::non_positive_weight, "normalize_weights: weight <= 0", i);
  if (n == 1) return WeightVector(Eigen::ArrayXd::Constant(1, 1.0));

  const double total = raw.sum();
  Eigen::ArrayXd w = std::fabs(total - 1.0) <= 1e-12 ? raw.eval() : (raw / total).eval();
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(w[i] > 0.0 && w[i] < 1.0))
      bad_row(errc::invariant_violation, "normalize_weights: weight outside (0, 1)", i);
  return WeightVector(std::move(w));
}

double weighted_mean(const Eigen::Ref<const Eigen::ArrayXd>& x, const WeightVector& w) {
  if (x.size() != w.size()) fail(errc::length_mismatch, "weighted_mean: length mismatch");
  return (w.values() * x).sum();
}

double weighted_variance(const Eigen::Ref<const Eigen::ArrayXd>& x, const WeightVector& w,
                         bool* clamped) {
  if (x.size() != w.size()) fail(errc::length_mismatch, "weighted_variance: length mismatch");
  const double m = (w.values() * x).sum();
  double v = (w.values() * x.square()).sum() - m * m;
  if (clamped) *clamped = false;
  if (v < 0.0) {
    v = 0.0;
    if (clamped) *clamped = true;
  }
  return v;
}

PairedSample PairedSample::make(Eigen::ArrayXd obs, Eigen::ArrayXd pred, WeightVector weights,
                                SampleKind kind) {
  const Eigen::Index n = obs.size();
  if (n == 0) fail(errc::empty_sample, "PairedSample: empty sample");
  if (pred.size() != n || weights.size() != n)
    fail(errc::length_mismatch, "PairedSample: obs, pred, weights must share length");
  if (!obs.isFinite().all() || !pred.isFinite().all())
    fail(errc::invariant_violation, "PairedSample: non-finite value");

  switch (kind) {
    case SampleKind::residual:
      break;
    case SampleKind::unit_interval:
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!(obs[i] >= 0.0 && obs[i] <= 1.0))
          bad_row(errc::invariant_violation, "unit-interval sample: obs outside [0, 1]", i);
        if (!(pred[i] > kInteriorEps && pred[i] < 1.0 - kInteriorEps))
          bad_row(errc::invariant_violation, "unit-interval sample: pred not interior to (0, 1)", i);
      }
      break;
    case SampleKind::non_negative:
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!(obs[i] >= 0.0))
          bad_row(errc::invariant_violation, "non-negative sample: obs < 0", i);
        if (!(pred[i] > 0.0))
          bad_row(errc::invariant_violation, "non-negative sample: pred <= 0", i);
      }
      break;
    case SampleKind::probability:
      for (Eigen::Index i = 0; i < n; ++i) {
        if (obs[i] != 0.0 && obs[i] != 1.0)
          bad_row(errc::invariant_violation, "probability sample: obs not in {0, 1}", i);
        if (!(pred[i] > kInteriorEps && pred[i] < 1.0 - kInteriorEps))
          bad_row(errc::invariant_violation, "probability sample: pred not interior to (0, 1)", i);
      }
      break;
  }
  return PairedSample{std::move(obs), std::move(pred), std::move(weights), kind};
}

PairedSample PairedSample::with_weights(WeightVector w) const {
  return PairedSample::make(obs, pred, std::move(w), kind);
}

PairedSample weight_adjust(const PairedSample& s) {
  const Eigen::Index n = s.size();
  const Eigen::ArrayXd adj = static_cast<double>(n) * s.weights.values() * s.residuals();
  return PairedSample::make(adj, Eigen::ArrayXd::Zero(n), WeightVector::equal(n),
                            SampleKind::residual);
}

PairedSample weight_adjust_pairs(const PairedSample& s) {
  const Eigen::Index n = s.size();
  const Eigen::ArrayXd f = static_cast<double>(n) * s.weights.values();
  return PairedSample::make(f * s.obs, f * s.pred, WeightVector::equal(n),
                            SampleKind::non_negative);
}

double quantile_type7(const Eigen::Ref<const Eigen::ArrayXd>& x, double p) {
  const Eigen::Index n = x.size();
  if (n == 0) fail(errc::empty_sample, "quantile_type7: empty input");
  if (!(p >= 0.0 && p <= 1.0)) fail(errc::domain_error, "quantile_type7: p outside [0, 1]");
  std::vector<double> v(x.data(), x.data() + n);
  std::sort(v.begin(), v.end());
  const double h = static_cast<double>(n - 1) * p;
  const auto lo = static_cast<Eigen::Index>(std::floor(h));
  if (lo + 1 >= n) return v[n - 1];
  const double frac = h - static_cast<double>(lo);
  return v[lo] + frac * (v[lo + 1] - v[lo]);
}

SampleSummary summarize(const PairedSample& s) {
  static constexpr std::array<double, 5> kLevels = {0.10, 0.25, 0.50, 0.75, 0.90};
  const Eigen::Index n = s.size();
  const Eigen::ArrayXd r = s.residuals();
  const WeightVector eq = WeightVector::equal(n);
  const PairedSample adj = weight_adjust(s);
  const Eigen::ArrayXd r_adj = adj.residuals();

  SampleSummary out;
  out.n = n;
  out.mean_eq = weighted_mean(r, eq);
  out.mean_w = weighted_mean(r, s.weights);
  out.sd_eq = std::sqrt(weighted_variance(r, eq));
  out.sd_w = std::sqrt(weighted_variance(r, s.weights));
  out.sd_adj = std::sqrt(weighted_variance(r_adj, eq));

  std::vector<double> w(s.weights.values().data(), s.weights.values().data() + n);
  std::sort(w.begin(), w.end(), std::greater<>());
  w.resize(std::min<std::size_t>(3, w.size()));
  out.top_weights = std::move(w);

  for (std::size_t k = 0; k < kLevels.size(); ++k) {
    out.quantiles[k] = quantile_type7(r, kLevels[k]);
    out.quantiles_adj[k] = quantile_type7(r_adj, kLevels[k]);
  }
  return out;
}

}  // namespace prudence
