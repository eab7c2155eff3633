#include "prudence/probability_tests.hpp"

#include <algorithm>
#include <cmath>

#include "prudence/recalibration.hpp"
#include "prudence/special.hpp"

namespace prudence {

namespace {

constexpr double kThresholdSnap = 1e-12;

double default_rate_or_fail(const PairedSample& s) {
  if (s.kind != SampleKind::probability)
    fail(errc::domain_error, "probability test on a sample of different kind");
  if (s.obs.minCoeff() == s.obs.maxCoeff())
    fail(errc::degenerate_mean,
         "probability test: all indicators equal, weighted default rate is 0 or 1");
  return weighted_mean(s.obs, s.weights);
}

void validate_summary(const BinomialSummary& s) {
  if (s.customers < 1) fail(errc::domain_error, "binomial summary: N must be >= 1");
  if (s.defaults < 0 || s.defaults > s.customers)
    fail(errc::domain_error, "binomial summary: D outside [0, N]");
  if (!(s.pd > 0.0 && s.pd < 1.0)) fail(errc::domain_error, "binomial summary: PD outside (0, 1)");
}

}  // namespace

BernoulliMixtureModel build_bernoulli_model(const PairedSample& s, double theta) {
  if (s.kind != SampleKind::probability)
    fail(errc::domain_error, "build_bernoulli_model: sample kind must be probability");
  RecalibratedTargets rt = odds_transform(s.pred, s.weights, theta);
  return BernoulliMixtureModel{std::move(rt.theta_i), odds_rho(s.pred, s.weights), s.weights,
                               s.obs};
}

LatticeAtom atom_pmf(const BernoulliMixtureModel& m) {
  const Eigen::ArrayXd& w = m.w.values();
  LatticeAtom a;
  a.p_minus = (w * (1.0 - m.b) * m.theta_i).sum();
  a.p_plus = (w * m.b * (1.0 - m.theta_i)).sum();
  a.p_zero = std::max(0.0, 1.0 - a.p_minus - a.p_plus);
  return a;
}

std::pair<double, double> model_moments_probability(const BernoulliMixtureModel& m, double theta) {
  const double bw = weighted_mean(m.b, m.w);
  const double mean = bw - theta;
  const double var = (m.w.values() * (m.b - m.theta_i).square()).sum() - mean * mean +
                     (m.w.values() * m.theta_i * (1.0 - m.theta_i)).sum();
  return {mean, var};
}

PValuePair exact_pvalues(const PairedSample& s) {
  const double bw = default_rate_or_fail(s);
  const BernoulliMixtureModel m = build_bernoulli_model(s, bw);
  const LatticeDistribution lat = lattice_convolve_n(atom_pmf(m), s.size());
  const double threshold = bw - weighted_mean(s.pred, s.weights);

  const double n = static_cast<double>(s.size());
  double p_le = 0.0;
  double p_ge = 0.0;
  for (Eigen::Index k = -lat.n; k <= lat.n; ++k) {
    const double x = static_cast<double>(k) / n;
    const double mass = lat.mass_at(k);
    if (x <= threshold + kThresholdSnap) p_le += mass;
    if (x >= threshold - kThresholdSnap) p_ge += mass;
  }
  return PValuePair{std::min(1.0, p_le), std::min(1.0, p_ge), "exact lattice"};
}

PValuePair probability_normal(const PairedSample& s, double* brier_out) {
  const double bw = default_rate_or_fail(s);
  const BernoulliMixtureModel m = build_bernoulli_model(s, bw);
  const Eigen::ArrayXd& w = s.weights.values();
  const double brier = (w * (s.obs - m.theta_i).square()).sum();
  if (brier_out) *brier_out = brier;
  const double var = brier + (w * m.theta_i * (1.0 - m.theta_i)).sum();
  if (!(var > 0.0)) fail(errc::zero_variance, "probability_normal: zero variance");
  const double dw = bw - weighted_mean(s.pred, s.weights);
  const double z = std::sqrt(static_cast<double>(s.size())) * dw / std::sqrt(var);
  return PValuePair{std_normal_cdf(z), std_normal_tail(z), "bernoulli normal"};
}

PValuePair simple_mixture_normal(const BinomialSummary& s) {
  validate_summary(s);
  if (s.defaults == 0 || s.defaults == s.customers)
    fail(errc::degenerate_mean, "simple_mixture_normal: D must be strictly between 0 and N");
  const double n = static_cast<double>(s.customers);
  const double rate = static_cast<double>(s.defaults) / n;
  const double z = std::sqrt(n) * (rate - s.pd) / std::sqrt(rate * (1.0 - rate));
  return PValuePair{std_normal_cdf(z), std_normal_tail(z), "simple normal"};
}

PValuePair jeffreys_pvalue(const BinomialSummary& s) {
  validate_summary(s);
  const double d = static_cast<double>(s.defaults);
  const double n = static_cast<double>(s.customers);
  const double p_aggr = reg_inc_beta(d + 0.5, n - d + 0.5, s.pd);
  return PValuePair{1.0 - p_aggr, p_aggr, "jeffreys"};
}

PValuePair binomial_pvalue(const BinomialSummary& s) {
  validate_summary(s);
  double p_aggr;
  if (s.defaults == 0) {
    p_aggr = 1.0;  // the tail sum covers the whole distribution
  } else if (s.defaults == s.customers) {
    p_aggr = std::pow(s.pd, static_cast<double>(s.customers));
  } else {
    p_aggr = reg_inc_beta(static_cast<double>(s.defaults),
                          static_cast<double>(s.customers - s.defaults) + 1.0, s.pd);
  }
  return PValuePair{1.0 - p_aggr, p_aggr, "binomial"};
}

PValuePair binomial_normal(const BinomialSummary& s) {
  validate_summary(s);
  const double n = static_cast<double>(s.customers);
  const double rate = static_cast<double>(s.defaults) / n;
  const double z = std::sqrt(n) * (rate - s.pd) / std::sqrt(s.pd * (1.0 - s.pd));
  return PValuePair{std_normal_cdf(z), std_normal_tail(z), "binomial normal"};
}

}  // namespace prudence
