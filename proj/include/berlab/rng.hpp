#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace berlab {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Constants are the
/// published ones: golden-ratio increment 0x9e3779b97f4a7c15 and the two
/// multipliers 0xbf58476d1ce4e5b9, 0x94d049bb133111eb.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based stream: the k-th draw is splitmix64(key + k), so any
/// substream can be derived without touching another.
class Rng {
 public:
  explicit Rng(std::uint64_t key) noexcept : key_(splitmix64(key)) {}

  std::uint64_t next_u64() noexcept { return splitmix64(key_ + counter_++); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) noexcept { return n == 0 ? 0 : next_u64() % n; }

  /// Standard normal by Box-Muller (one value per two uniforms).
  double normal() noexcept {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Independent child stream.
  Rng derive(std::uint64_t tag) const noexcept { return Rng(key_ ^ splitmix64(tag + 0x51ed)); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace berlab
