#pragma once

// Direct O(N^2) and O(N^3) reference implementations.  They share no code
// with the library beyond the Signal container.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "modspace/core.hpp"
#include "modspace/signals.hpp"

namespace oracle {

using modspace::Complex;
using modspace::Grid;
using modspace::Signal;

inline Complex expi(std::int64_t k, std::size_t n) {
  const auto m = static_cast<std::int64_t>(n);
  const std::int64_t r = ((k % m) + m) % m;
  const double a = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
  return {std::cos(a), std::sin(a)};
}

inline std::vector<Complex> values(const Signal& f) { return {f.samples().begin(), f.samples().end()}; }

inline std::vector<Complex> dft(const std::vector<Complex>& f) {
  const std::size_t n = f.size();
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t t = 0; t < n; ++t) out[j] += f[t] * expi(-static_cast<std::int64_t>(j * t), n);
  }
  return out;
}

inline std::vector<Complex> idft(const std::vector<Complex>& fh) {
  const std::size_t n = fh.size();
  std::vector<Complex> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t j = 0; j < n; ++j) out[t] += fh[j] * expi(static_cast<std::int64_t>(j * t), n);
    out[t] /= static_cast<double>(n);
  }
  return out;
}

// V(x, xi) = sum_t f(t) conj g(t - x) e^{-2 pi i xi t / N}, row-major in x.
inline std::vector<Complex> stft(const std::vector<Complex>& f, const std::vector<Complex>& g) {
  const std::size_t n = f.size();
  std::vector<Complex> v(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t xi = 0; xi < n; ++xi) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        acc += f[t] * std::conj(g[(t + n - x) % n]) * expi(-static_cast<std::int64_t>(xi * t), n);
      }
      v[x * n + xi] = acc;
    }
  }
  return v;
}

inline std::vector<Complex> multiplier(const std::vector<Complex>& m, const std::vector<Complex>& f) {
  auto fh = dft(f);
  for (std::size_t j = 0; j < fh.size(); ++j) fh[j] *= m[j];
  return idft(fh);
}

inline double lp(const std::vector<double>& mags, double p, double w = 1.0) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : mags) m = std::max(m, v);
    return m;
  }
  double s = 0.0;
  for (double v : mags) s += w * std::pow(v, p);
  return std::pow(s, 1.0 / p);
}

inline double lp(const std::vector<Complex>& v, double p, double w = 1.0) {
  std::vector<double> mags;
  for (const auto& z : v) mags.push_back(std::abs(z));
  return lp(mags, p, w);
}

inline double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_diff(const Signal& a, const std::vector<Complex>& b) { return max_diff(values(a), b); }

inline Signal random_signal(const Grid& grid, std::uint64_t seed, std::uint64_t t = 0) {
  return modspace::make_noise(grid, seed, t, std::nullopt);
}

}  // namespace oracle
