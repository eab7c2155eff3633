#pragma once

#include <Eigen/Core>

namespace prudence {

/// Distribution of a single three-point step on {-1, 0, +1}.
struct LatticeAtom {
  double p_minus = 0.0;
  double p_zero = 1.0;
  double p_plus = 0.0;
};

/// Exact pmf of the sum of n i.i.d. three-point steps, supported on the
/// integer grid {-n, ..., n}. Index k + n stores the mass at k; the mean
/// statistic takes the value k / n there.
struct LatticeDistribution {
  Eigen::Index n = 0;
  Eigen::ArrayXd pmf;

  double mass_at(Eigen::Index k) const { return pmf[k + n]; }
};

/// n-fold convolution of the atom. Evaluated by iterated direct convolution
/// and cross-checked against a DFT over the 2n+1-point characteristic
/// function; the two paths must agree to 1e-10 elementwise. The direct
/// result is returned.
LatticeDistribution lattice_convolve_n(const LatticeAtom& atom, Eigen::Index n);

}  // namespace prudence
