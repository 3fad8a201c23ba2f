#pragma once

// Finite discrete model on the cyclic group Z_N: grids, signals, the
// unnormalized DFT, time-frequency shifts, dilation, inner products and mixed
// l^{p,q} norms.  Everything else in the toolkit is built on these pieces.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "modspace/error.hpp"

namespace modspace {

using Complex = std::complex<double>;

// e^{2 pi i k / n} with k reduced mod n before the angle is formed.
Complex root_of_unity(std::int64_t k, std::size_t n);

// Sampling lattice with physical spacing.  Index i sits at physical
// coordinate (i - origin) * dx; frequency bin j carries the signed index
// ((j + N/2) mod N) - N/2 and physical frequency signed_index / (N * dx).
class Grid {
 public:
  Grid(std::size_t n_samples, double spacing,
       std::optional<std::ptrdiff_t> origin_index = std::nullopt);

  std::size_t size() const noexcept { return n_; }
  double dx() const noexcept { return dx_; }
  std::ptrdiff_t origin() const noexcept { return origin_; }
  // Frequency spacing 1 / (N dx).
  double dxi() const noexcept { return 1.0 / (static_cast<double>(n_) * dx_); }

  double position(std::size_t i) const noexcept;
  std::ptrdiff_t signed_bin(std::size_t j) const noexcept;
  double frequency(std::size_t j) const noexcept;
  // Storage bin holding the given signed frequency index (reduced mod N).
  std::size_t bin_of_signed(std::ptrdiff_t k) const noexcept;

  // Physical band [band_min, band_max) covered by the frequency lattice.
  double band_min() const noexcept;
  double band_max() const noexcept;
  // Bins per unit of physical frequency, N dx.
  double bins_per_unit() const noexcept { return static_cast<double>(n_) * dx_; }

  bool operator==(const Grid& other) const noexcept = default;

 private:
  std::size_t n_;
  double dx_;
  std::ptrdiff_t origin_;
};

// Sampled complex function on a grid. Values are validated finite once, at
// construction, and are immutable afterwards.
class Signal {
 public:
  Signal(Grid grid, std::vector<Complex> samples);

  static Signal zeros(const Grid& grid);
  static Signal delta(const Grid& grid, std::size_t index);
  static Signal ones(const Grid& grid);
  // e^{2 pi i k t / N}
  static Signal character(const Grid& grid, std::ptrdiff_t k);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return samples_.size(); }
  std::span<const Complex> samples() const noexcept { return samples_; }
  const Complex& operator[](std::size_t i) const noexcept { return samples_[i]; }

  // Moves the sample buffer out; used to recycle storage in hot loops.
  std::vector<Complex> release() && { return std::move(samples_); }

 private:
  Grid grid_;
  std::vector<Complex> samples_;
};

Signal operator+(const Signal& a, const Signal& b);
Signal operator-(const Signal& a, const Signal& b);
Signal operator*(Complex c, const Signal& a);

// Largest absolute sample difference.
double max_abs_diff(const Signal& a, const Signal& b);

void require_same_grid(const Grid& a, const Grid& b);

// Exponent in [1, inf].  Infinity is a distinguished state rather than a large
// finite number.
class Exponent {
 public:
  constexpr Exponent(double value) : value_(value) {  // NOLINT(google-explicit-constructor)
    if (!(value >= 1.0)) raise(ErrorCode::InvalidArgument, "exponent must lie in [1, inf]");
  }
  static constexpr Exponent infinity() { return Exponent(std::numeric_limits<double>::infinity()); }

  constexpr bool is_infinite() const noexcept { return value_ == std::numeric_limits<double>::infinity(); }
  constexpr double value() const noexcept { return value_; }

  bool operator==(const Exponent&) const noexcept = default;

 private:
  double value_;
};

enum class NormMode { discrete, continuum };

struct MixedNormParams {
  Exponent p{2.0};
  Exponent q{2.0};
  NormMode mode = NormMode::discrete;
};

struct NormWeights {
  double inner = 1.0;
  double outer = 1.0;
};

// N x N coefficients of a short-time Fourier transform, entry (x, xi) with x
// the time-shift index and xi the frequency index.  Row-major in x.
class TFMatrix {
 public:
  TFMatrix(Grid grid, std::vector<Complex> entries);
  static TFMatrix zeros(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return grid_.size(); }
  const Complex& at(std::size_t x, std::size_t xi) const noexcept { return entries_[x * size() + xi]; }
  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<const Complex> row(std::size_t x) const noexcept { return {entries_.data() + x * size(), size()}; }

  double max_abs_diff(const TFMatrix& other) const;
  double max_abs() const noexcept;

 private:
  Grid grid_;
  std::vector<Complex> entries_;
};

// Dense rectangular complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
  ComplexMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  std::span<const Complex> data() const noexcept { return data_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

// ---- transforms -----------------------------------------------------------

// Unnormalized forward DFT, F f(j) = sum_t f(t) e^{-2 pi i j t / N}.
Signal dft(const Signal& f);
// Inverse of dft, including the 1/N factor.
Signal idft(const Signal& f);

// tau_y f(t) = f(t - y), indices mod N.
Signal translate(const Signal& f, std::ptrdiff_t y);
// M_j f(t) = e^{2 pi i j t / N} f(t).
Signal modulate(const Signal& f, std::ptrdiff_t j);

struct Rational {
  std::int64_t num;
  std::int64_t den;
};

// Band-limited resampling realizing f(lambda x) about the grid origin, with
// lambda = num/den.  The trigonometric interpolant of f is evaluated on the
// lattice origin + lambda (i - origin) by zero padding to den * N bins and
// decimating by num; num must divide N once the fraction is reduced.
Signal dilate(const Signal& f, Rational lambda);

// ---- inner products and norms ----------------------------------------------

// sum_t f(t) conj(h(t)), counting measure.
Complex inner(const Signal& f, const Signal& h);
double l2_norm(const Signal& f);

// l^p norm of a sequence with a uniform weight per sample, sup at infinity.
double lp_norm(std::span<const Complex> values, Exponent p, double weight = 1.0);
double lp_norm_abs(std::span<const double> magnitudes, Exponent p, double weight = 1.0);

// Lebesgue norm of a signal:  weight dx in continuum mode, 1 in discrete mode.
double lp_norm(const Signal& f, Exponent p, NormMode mode);

// ( sum_xi w_xi ( sum_x w_x |M(x,xi)|^p )^{q/p} )^{1/q}; inner index x.
double mixed_norm(const TFMatrix& m, const MixedNormParams& params);

enum class InnerAxis { columns, rows };

// Generic mixed norm.  With InnerAxis::columns every row is an inner sequence
// (rows index the outer reduction); InnerAxis::rows swaps the roles.
double mixed_norm(const ComplexMatrix& m, const MixedNormParams& params,
                  InnerAxis inner = InnerAxis::columns, NormWeights weights = {});

// Magnitude-only variant used by vector-valued norms: `magnitudes` is laid out
// outer-major, outer_count blocks of inner_count values each.
double mixed_norm_abs(std::span<const double> magnitudes, std::size_t outer_count,
                      std::size_t inner_count, const MixedNormParams& params, NormWeights weights);

NormWeights stft_weights(const Grid& grid, NormMode mode);

}  // namespace modspace
