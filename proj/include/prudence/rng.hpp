#pragma once

#include <cstdint>

namespace prudence {

/// Counter-seeded pseudo-random stream (splitmix64 core).
///
/// Two streams built from the same (seed, stream_id) produce identical draw
/// sequences no matter how many other streams exist or in which order they
/// are consumed. Bootstrap code gives replicate j the stream id j, which
/// makes results independent of execution order and parallelism.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept;

  std::uint64_t next_u64() noexcept;
  double uniform01() noexcept;     // [0, 1)
  double uniform_open() noexcept;  // (0, 1)
  double normal() noexcept;        // standard normal, Box-Muller

 private:
  std::uint64_t state_;
};

/// One gamma(shape, scale) draw, Marsaglia-Tsang squeeze for shape >= 1 and
/// the u^(1/shape) boost below 1.
double sample_gamma(double shape, double scale, RngStream& rng);

/// Log of a gamma(shape, 1) draw. Stable for small shapes, where the plain
/// draw underflows to zero.
double sample_gamma_log(double shape, RngStream& rng);

/// One beta(a, b) draw via two gamma draws combined in log space.
double sample_beta(double a, double b, RngStream& rng);

}  // namespace prudence
