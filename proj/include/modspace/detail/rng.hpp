#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace modspace::detail {

// splitmix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

// Counter-based stream: word n of draw t under seed.  Independent of the order
// in which (t, n) pairs are requested.
constexpr std::uint64_t counter_word(std::uint64_t seed, std::uint64_t t, std::uint64_t n) noexcept {
  return splitmix64(mix_seed(seed, t) ^ splitmix64(n ^ 0xd1b54a32d192ed03ULL));
}

// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t w) noexcept { return static_cast<double>(w >> 11) * 0x1.0p-53; }

}  // namespace modspace::detail

namespace modspace::detail {

// Sequential reader over counter_word(seed, t, 0), (seed, t, 1), ...
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t t) : seed_(seed), t_(t) {}

  std::uint64_t next_word() noexcept { return counter_word(seed_, t_, n_++); }
  double uniform() noexcept { return to_unit(next_word()); }
  // Box-Muller, one deviate per call.
  double normal() noexcept {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t t_;
  std::uint64_t n_ = 0;
};

}  // namespace modspace::detail
