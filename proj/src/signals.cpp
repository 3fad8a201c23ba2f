#include "modspace/signals.hpp"

#include <cmath>
#include <numbers>

#include "modspace/detail/fft.hpp"
#include "modspace/detail/rng.hpp"

namespace modspace {

namespace {

constexpr std::uint64_t kNoiseStream = 0x6e6f697365ULL;

Signal normalized(const Grid& grid, std::vector<Complex> v) {
  Signal s(grid, std::move(v));
  const double n = l2_norm(s);
  require(n > 0.0, ErrorCode::InvalidArgument, "generated signal vanishes on this grid");
  return (1.0 / n) * s;
}

double period(const Grid& g) { return static_cast<double>(g.size()) * g.dx(); }

}  // namespace

Signal make_gaussian(const Grid& grid, double center, std::optional<double> width, std::ptrdiff_t k) {
  const double s = width.value_or(period(grid) / 8.0);
  require(s > 0.0 && std::isfinite(center), ErrorCode::InvalidArgument, "gaussian needs width > 0 and a finite center");
  std::vector<Complex> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double acc = 0.0;
    for (int m = -2; m <= 2; ++m) {
      const double x = grid.position(i) - center + m * period(grid);
      acc += std::exp(-std::numbers::pi * x * x / (s * s));
    }
    v[i] = acc * root_of_unity(k * static_cast<std::int64_t>(i), grid.size());
  }
  return normalized(grid, std::move(v));
}

Signal make_character(const Grid& grid, std::ptrdiff_t k) {
  return (1.0 / std::sqrt(static_cast<double>(grid.size()))) * Signal::character(grid, k);
}

Signal make_bump(const Grid& grid, double center, std::optional<double> radius) {
  const double r = radius.value_or(period(grid) / 8.0);
  require(r > 0.0 && std::isfinite(center), ErrorCode::InvalidArgument, "bump needs radius > 0 and a finite center");
  std::vector<Complex> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double x = std::remainder(grid.position(i) - center, period(grid));
    const double u = x / r;
    v[i] = std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
  }
  return normalized(grid, std::move(v));
}

Signal make_noise(const Grid& grid, std::uint64_t seed, std::optional<std::size_t> band_bins) {
  return make_noise(grid, seed, 0, band_bins);
}

Signal make_noise(const Grid& grid, std::uint64_t seed, std::uint64_t t, std::optional<std::size_t> band_bins) {
  detail::CounterStream rng(detail::mix_seed(seed, kNoiseStream), t);
  std::vector<Complex> v(grid.size());
  if (!band_bins) {
    for (auto& z : v) {
      const double re = rng.normal();
      z = {re, rng.normal()};
    }
    return normalized(grid, std::move(v));
  }
  const auto half = static_cast<std::ptrdiff_t>(grid.size() / 2);
  const auto reach = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(*band_bins), half);
  for (std::ptrdiff_t k = -reach; k <= reach; ++k) {
    if (k == half) continue;
    const double re = rng.normal();
    v[grid.bin_of_signed(k)] = {re, rng.normal()};
  }
  detail::fft_inplace(v, detail::FftDirection::backward);
  return normalized(grid, std::move(v));
}

}  // namespace modspace
