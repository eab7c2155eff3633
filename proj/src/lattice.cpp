#include "prudence/lattice.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "prudence/errors.hpp"

namespace prudence {

namespace {

void validate_atom(const LatticeAtom& atom) {
  if (!(atom.p_minus >= 0.0) || !(atom.p_zero >= 0.0) || !(atom.p_plus >= 0.0))
    fail(errc::domain_error, "lattice_convolve_n: negative atom probability");
  const double mass = atom.p_minus + atom.p_zero + atom.p_plus;
  if (std::fabs(mass - 1.0) > 1e-12)
    fail(errc::domain_error, "lattice_convolve_n: atom probabilities must sum to 1");
}

Eigen::ArrayXd convolve_direct(const LatticeAtom& atom, Eigen::Index n) {
  Eigen::ArrayXd cur = Eigen::ArrayXd::Zero(2 * n + 1);
  Eigen::ArrayXd next = Eigen::ArrayXd::Zero(2 * n + 1);
  cur[n - 1] = atom.p_minus;
  cur[n] = atom.p_zero;
  cur[n + 1] = atom.p_plus;
  for (Eigen::Index k = 2; k <= n; ++k) {
    next.setZero();
    for (Eigen::Index j = n - (k - 1); j <= n + (k - 1); ++j) {
      const double m = cur[j];
      if (m == 0.0) continue;
      next[j - 1] += atom.p_minus * m;
      next[j] += atom.p_zero * m;
      next[j + 1] += atom.p_plus * m;
    }
    cur.swap(next);
  }
  return cur;
}

// pmf through the discrete characteristic function: phi_X evaluated on the
// 2n+1 roots of unity, raised to the n-th power in polar form, inverted by
// an explicit DFT sum. The support fills exactly one period, so there is no
// aliasing and the result is exact up to round-off.
Eigen::ArrayXd convolve_dft(const LatticeAtom& atom, Eigen::Index n) {
  const Eigen::Index m = 2 * n + 1;
  std::vector<std::complex<double>> phi_pow(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double omega = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
    const std::complex<double> phi =
        atom.p_zero + atom.p_plus * std::polar(1.0, omega) + atom.p_minus * std::polar(1.0, -omega);
    const double r = std::abs(phi);
    const double psi = std::arg(phi);
    phi_pow[j] = r > 0.0 ? std::polar(std::pow(r, static_cast<double>(n)),
                                      static_cast<double>(n) * psi)
                         : std::complex<double>(0.0, 0.0);
  }
  std::vector<std::complex<double>> roots(m);
  for (Eigen::Index t = 0; t < m; ++t)
    roots[t] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(m));

  Eigen::ArrayXd pmf(m);
  for (Eigen::Index s = -n; s <= n; ++s) {
    std::complex<double> acc(0.0, 0.0);
    for (Eigen::Index j = 0; j < m; ++j) {
      const Eigen::Index t = ((j * s) % m + m) % m;
      acc += phi_pow[j] * roots[t];
    }
    pmf[s + n] = acc.real() / static_cast<double>(m);
  }
  return pmf;
}

}  // namespace

LatticeDistribution lattice_convolve_n(const LatticeAtom& atom, Eigen::Index n) {
  if (n < 1) fail(errc::domain_error, "lattice_convolve_n: n must be >= 1");
  validate_atom(atom);

  Eigen::ArrayXd direct = convolve_direct(atom, n);
  const Eigen::ArrayXd dft = convolve_dft(atom, n);
  if (((direct - dft).abs() > 1e-10).any())
    fail(errc::internal_fault, "lattice_convolve_n: direct and DFT paths disagree");

  // Round-off can leave tiny negative mass in either path.
  direct = direct.max(0.0);
  return LatticeDistribution{n, std::move(direct)};
}

}  // namespace prudence
