#pragma once

// Counter-based random streams (Philox4x32-10, Salmon et al. 2011).
//
// A stream is keyed by (seed, index); every draw is a pure function of
// (seed, index, draw counter), so Monte Carlo samples can be sharded across
// any number of workers without changing a single bit of the result.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace cartan {

using PhiloxBlock = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

constexpr PhiloxBlock philox4x32_10(PhiloxBlock ctr, PhiloxKey key) {
  constexpr std::uint32_t kMul0 = 0xD2511F53u, kMul1 = 0xCD9E8D57u;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u, kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t index)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        index_lo_(static_cast<std::uint32_t>(index)),
        index_hi_(static_cast<std::uint32_t>(index >> 32)) {}

  PhiloxBlock next_block() {
    const PhiloxBlock ctr{static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
                          index_lo_, index_hi_};
    ++counter_;
    return philox4x32_10(ctr, key_);
  }

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  static double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = (std::uint64_t{hi >> 5} << 26) | (lo >> 6);
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  double uniform() {
    const auto b = next_block();
    return to_unit(b[0], b[1]);
  }

  /// Standard complex Gaussian (E|z|^2 = 1) by Box-Muller, one block per draw.
  std::complex<double> complex_gaussian() {
    const auto b = next_block();
    const double u1 = to_unit(b[0], b[1]);
    const double u2 = to_unit(b[2], b[3]);
    const double r = std::sqrt(-std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

  /// Standard real Gaussian.
  double gaussian() { return std::sqrt(2.0) * complex_gaussian().real(); }

  std::uint64_t draws() const { return counter_; }

 private:
  PhiloxKey key_;
  std::uint32_t index_lo_, index_hi_;
  std::uint64_t counter_ = 0;
};

}  // namespace cartan
