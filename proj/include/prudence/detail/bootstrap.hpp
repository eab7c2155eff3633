#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <functional>
#include <string>

#include "prudence/basic_tests.hpp"
#include "prudence/rng.hpp"
#include "prudence/sample.hpp"

namespace prudence::detail {

/// Inverse-CDF sampler over {0, ..., n-1} with probabilities w_i.
class CategoricalSampler {
 public:
  explicit CategoricalSampler(const WeightVector& w) : cum_(w.size()) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      acc += w[i];
      cum_[i] = acc;
    }
    cum_[w.size() - 1] = 1.0;  // guard the top edge against round-off
  }

  Eigen::Index draw(RngStream& rng) const {
    const double u = rng.uniform01();
    const double* b = cum_.data();
    return std::upper_bound(b, b + cum_.size(), u) - b;
  }

 private:
  Eigen::ArrayXd cum_;
};

/// Means of R replicates of n draws each. Replicate j draws from
/// RngStream(seed, j), so the result does not depend on execution order;
/// per-replicate sums are Kahan-compensated.
Eigen::ArrayXd replicate_means(Eigen::Index n, int iterations, std::uint64_t seed, int threads,
                               const std::function<double(RngStream&)>& draw_one);

/// (1 + #{mean <= threshold}) / (R+1) and the same with >=; ties count on
/// both sides.
PValuePair pvalues_from_means(const Eigen::ArrayXd& means, double threshold, std::string method);

}  // namespace prudence::detail
