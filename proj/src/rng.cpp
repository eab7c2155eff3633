#include "prudence/rng.hpp"

#include <cmath>
#include <numbers>

#include "prudence/errors.hpp"

namespace prudence {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : state_(mix64((seed + kGolden) ^ mix64(stream_id + kGolden))) {}

std::uint64_t RngStream::next_u64() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

double RngStream::uniform01() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() noexcept {
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_gamma_log(double shape, RngStream& rng) {
  if (!(shape > 0.0)) fail(errc::domain_error, "sample_gamma: shape must be positive");
  if (shape < 1.0) {
    const double u = rng.uniform_open();
    return sample_gamma_log(shape + 1.0, rng) + std::log(u) / shape;
  }
  // Marsaglia & Tsang (2000), ACM TOMS 26(3).
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d) + std::log(v);
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return std::log(d) + std::log(v);
  }
}

double sample_gamma(double shape, double scale, RngStream& rng) {
  if (!(scale > 0.0)) fail(errc::domain_error, "sample_gamma: scale must be positive");
  return scale * std::exp(sample_gamma_log(shape, rng));
}

double sample_beta(double a, double b, RngStream& rng) {
  if (!(a > 0.0) || !(b > 0.0)) fail(errc::domain_error, "sample_beta: parameters must be positive");
  const double lg_a = sample_gamma_log(a, rng);
  const double lg_b = sample_gamma_log(b, rng);
  return 1.0 / (1.0 + std::exp(lg_b - lg_a));
}

}  // namespace prudence
