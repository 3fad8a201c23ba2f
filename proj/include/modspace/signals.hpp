#pragma once

// Test-signal generators.  All outputs have unit l2 norm (counting measure)
// and depend only on their arguments.

#include <cstdint>
#include <optional>

#include "modspace/core.hpp"

namespace modspace {

// Periodized exp(-pi (x - center)^2 / width^2) modulated to bin k.  Width
// defaults to N dx / 8.
Signal make_gaussian(const Grid& grid, double center = 0.0, std::optional<double> width = std::nullopt,
                     std::ptrdiff_t k = 0);

// e^{2 pi i k t / N} / sqrt(N)
Signal make_character(const Grid& grid, std::ptrdiff_t k);

// exp(-1 / (1 - u^2)) with u = (x - center) / radius, periodized.  Radius
// defaults to N dx / 8.
Signal make_bump(const Grid& grid, double center = 0.0, std::optional<double> radius = std::nullopt);

// Complex Gaussian noise.  With `band_bins` set, only the signed bins
// |k| <= band_bins are populated.
Signal make_noise(const Grid& grid, std::uint64_t seed, std::optional<std::size_t> band_bins = std::nullopt);

// Same as make_noise but drawn from stream t of the seed, for families of
// independent signals.
Signal make_noise(const Grid& grid, std::uint64_t seed, std::uint64_t t, std::optional<std::size_t> band_bins);

}  // namespace modspace
