#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "prudence/basic_tests.hpp"
#include "prudence/rng.hpp"
#include "prudence/special.hpp"
#include "testutil.hpp"

using namespace prudence;

namespace {

Eigen::ArrayXd arr(std::initializer_list<double> xs) {
  Eigen::ArrayXd out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

Eigen::ArrayXd std_normal_residuals(std::mt19937& g, Eigen::Index n, double shift) {
  std::normal_distribution<double> nd(shift, 1.0);
  Eigen::ArrayXd r(n);
  for (Eigen::Index i = 0; i < n; ++i) r[i] = nd(g);
  return r;
}

// Replicate means recomputed from the documented stream contract: replicate
// j draws from RngStream(seed, j) with inverse-cdf index picks.
Eigen::ArrayXd reference_means(const Eigen::ArrayXd& resid, const WeightVector& w,
                               const TestConfig& cfg) {
  const Eigen::Index n = resid.size();
  std::vector<double> cum(n);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    acc += w[i];
    cum[i] = acc;
  }
  cum[n - 1] = 1.0;
  Eigen::ArrayXd means(cfg.iterations);
  for (int j = 0; j < cfg.iterations; ++j) {
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(j) + 1);
    double sum = 0.0;
    double comp = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double u = rng.uniform01();
      const auto idx = std::upper_bound(cum.begin(), cum.end(), u) - cum.begin();
      const double y = resid[idx] - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    means[j] = sum / static_cast<double>(n);
  }
  return means;
}

}  // namespace

TEST_SUITE("basic") {

  TEST_CASE("bootstrap: degenerate all-zero sample gives p = 1 on both sides") {
    TestConfig cfg;
    cfg.iterations = 99;
    const PValuePair pv = basic_bootstrap(arr({0.0, 0.0, 0.0}), WeightVector::equal(3), cfg);
    CHECK(pv.p_prudent == 1.0);
    CHECK(pv.p_aggressive == 1.0);
  }

  TEST_CASE("bootstrap: empty exceedance side floors at 1/(R+1)") {
    // threshold 2*Delta_w = 3 lies above every attainable replicate mean
    TestConfig cfg;
    cfg.iterations = 999;
    const PValuePair pv = basic_bootstrap(arr({1.0, 2.0}), WeightVector::equal(2), cfg);
    CHECK(pv.p_aggressive == doctest::Approx(1.0 / 1000.0).epsilon(1e-12));
    CHECK(pv.p_prudent == 1.0);
  }

  TEST_CASE("bootstrap: matches the counting definition, also under a shift") {
    std::mt19937 g(21);
    const Eigen::ArrayXd resid = std_normal_residuals(g, 40, -0.2);
    const WeightVector w = testutil::random_weights(g, 40);
    TestConfig cfg;
    cfg.iterations = 499;
    cfg.seed = 97;

    for (double shift : {0.0, 0.7}) {
      const Eigen::ArrayXd r = resid + shift;
      const PValuePair got = basic_bootstrap(r, w, cfg);
      const Eigen::ArrayXd means = reference_means(r, w, cfg);
      const double thr = 2.0 * weighted_mean(r, w);
      const double p = (1.0 + (means <= thr).count()) / (cfg.iterations + 1.0);
      const double ps = (1.0 + (means >= thr).count()) / (cfg.iterations + 1.0);
      CHECK(got.p_prudent == p);
      CHECK(got.p_aggressive == ps);
    }
  }

  TEST_CASE("bootstrap: deterministic and identical under threading") {
    std::mt19937 g(22);
    const Eigen::ArrayXd resid = std_normal_residuals(g, 60, 0.1);
    const WeightVector w = testutil::random_weights(g, 60);
    TestConfig serial;
    serial.iterations = 777;
    serial.seed = 5;
    TestConfig threaded = serial;
    threaded.threads = 3;
    const PValuePair a = basic_bootstrap(resid, w, serial);
    const PValuePair b = basic_bootstrap(resid, w, serial);
    const PValuePair c = basic_bootstrap(resid, w, threaded);
    CHECK(a.p_prudent == b.p_prudent);
    CHECK(a.p_aggressive == b.p_aggressive);
    CHECK(a.p_prudent == c.p_prudent);
    CHECK(a.p_aggressive == c.p_aggressive);
  }

  TEST_CASE("bootstrap vs normal approximation at n = 30, R = 9999") {
    std::mt19937 g(23);
    const Eigen::ArrayXd resid = std_normal_residuals(g, 30, 0.0);
    const WeightVector w = WeightVector::equal(30);
    TestConfig cfg;
    cfg.iterations = 9999;
    cfg.threads = 2;
    const PValuePair boot = basic_bootstrap(resid, w, cfg);
    const PValuePair norm = basic_normal(resid, w);
    CHECK(std::fabs(boot.p_prudent - norm.p_prudent) <= 0.02);
    CHECK(std::fabs(boot.p_aggressive - norm.p_aggressive) <= 0.02);
  }

  TEST_CASE("normal: closed-form example and complementarity") {
    const PValuePair pv = basic_normal(arr({-1.0, -1.0, 1.0}), WeightVector::equal(3));
    CHECK(std::fabs(pv.p_prudent - 0.27014) <= 1e-5);
    CHECK(pv.p_prudent + pv.p_aggressive == doctest::Approx(1.0).epsilon(1e-14));

    const PValuePair centered = basic_normal(arr({-0.5, 0.5}), WeightVector::equal(2));
    CHECK(centered.p_prudent == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(centered.p_aggressive == doctest::Approx(0.5).epsilon(1e-14));
  }

  TEST_CASE("normal: equal-weight reduction") {
    std::mt19937 g(24);
    const Eigen::ArrayXd resid = std_normal_residuals(g, 17, 0.3);
    const PValuePair implicit = basic_normal(resid, WeightVector::equal(17));
    const PValuePair explicit_w =
        basic_normal(resid, normalize_weights(Eigen::ArrayXd::Constant(17, 4.0)));
    CHECK(implicit.p_prudent == doctest::Approx(explicit_w.p_prudent).epsilon(1e-14));
  }

  TEST_CASE("normal: constant residuals raise zero_variance") {
    CHECK(testutil::throws_code(errc::zero_variance, [] {
      basic_normal(arr({0.3, 0.3}), WeightVector::equal(2));
    }));
  }

  TEST_CASE("t-test: Cauchy closed form at n = 2") {
    const PValuePair pv = t_test(arr({-2.0, 0.0}), WeightVector::equal(2));
    CHECK(std::fabs(pv.p_aggressive - 0.75) <= 1e-12);
    CHECK(std::fabs(pv.p_prudent - 0.25) <= 1e-12);
  }

  TEST_CASE("t-test: centered sample and error paths") {
    const PValuePair pv = t_test(arr({-1.0, 1.0}), WeightVector::equal(2));
    CHECK(pv.p_prudent == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(testutil::throws_code(errc::too_few_observations,
                                [] { t_test(arr({1.0}), WeightVector::equal(1)); }));
    CHECK(testutil::throws_code(errc::zero_variance, [] {
      t_test(arr({0.4, 0.4, 0.4}), WeightVector::equal(3));
    }));
  }

  TEST_CASE("t-test approaches the normal test for large n") {
    std::mt19937 g(25);
    const Eigen::ArrayXd resid = std_normal_residuals(g, 10000, 0.01);
    const WeightVector w = WeightVector::equal(10000);
    const PValuePair t = t_test(resid, w);
    const PValuePair nrm = basic_normal(resid, w);
    CHECK(std::fabs(t.p_prudent - nrm.p_prudent) <= 0.01);
    CHECK(std::fabs(t.p_aggressive - nrm.p_aggressive) <= 0.01);
  }
}
