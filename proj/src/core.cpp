#include "modspace/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "modspace/detail/fft.hpp"
#include "modspace/detail/summation.hpp"

namespace modspace {

namespace {

std::size_t wrap(std::int64_t k, std::size_t n) {
  const auto m = static_cast<std::int64_t>(n);
  const std::int64_t r = k % m;
  return static_cast<std::size_t>(r < 0 ? r + m : r);
}

}  // namespace

Complex root_of_unity(std::int64_t k, std::size_t n) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(wrap(k, n)) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

// ---- Grid -------------------------------------------------------------------

Grid::Grid(std::size_t n_samples, double spacing, std::optional<std::ptrdiff_t> origin_index)
    : n_(n_samples),
      dx_(spacing),
      origin_(origin_index.value_or(static_cast<std::ptrdiff_t>(n_samples / 2))) {
  require(n_ >= 2, ErrorCode::InvalidArgument, "grid needs at least 2 samples");
  require(std::isfinite(dx_) && dx_ > 0.0, ErrorCode::InvalidArgument, "grid spacing must be positive");
}

double Grid::position(std::size_t i) const noexcept {
  return static_cast<double>(static_cast<std::ptrdiff_t>(i) - origin_) * dx_;
}

std::ptrdiff_t Grid::signed_bin(std::size_t j) const noexcept {
  const auto n = static_cast<std::ptrdiff_t>(n_);
  const auto half = n / 2;
  return (static_cast<std::ptrdiff_t>(j) + half) % n - half;
}

double Grid::frequency(std::size_t j) const noexcept {
  return static_cast<double>(signed_bin(j)) * dxi();
}

std::size_t Grid::bin_of_signed(std::ptrdiff_t k) const noexcept { return wrap(k, n_); }

double Grid::band_min() const noexcept { return static_cast<double>(-static_cast<std::ptrdiff_t>(n_ / 2)) * dxi(); }

double Grid::band_max() const noexcept {
  return static_cast<double>(static_cast<std::ptrdiff_t>(n_) - static_cast<std::ptrdiff_t>(n_ / 2)) * dxi();
}

void require_same_grid(const Grid& a, const Grid& b) {
  require(a == b, ErrorCode::GridMismatch, "operands live on different grids");
}

// ---- Signal -----------------------------------------------------------------

Signal::Signal(Grid grid, std::vector<Complex> samples) : grid_(grid), samples_(std::move(samples)) {
  require(samples_.size() == grid_.size(), ErrorCode::InvalidArgument, "sample count does not match grid");
  for (const auto& z : samples_) {
    require(std::isfinite(z.real()) && std::isfinite(z.imag()), ErrorCode::InvalidArgument,
            "signal samples must be finite");
  }
}

Signal Signal::zeros(const Grid& grid) { return {grid, std::vector<Complex>(grid.size())}; }

Signal Signal::delta(const Grid& grid, std::size_t index) {
  std::vector<Complex> s(grid.size());
  s[index % grid.size()] = 1.0;
  return {grid, std::move(s)};
}

Signal Signal::ones(const Grid& grid) { return {grid, std::vector<Complex>(grid.size(), 1.0)}; }

Signal Signal::character(const Grid& grid, std::ptrdiff_t k) {
  std::vector<Complex> s(grid.size());
  for (std::size_t t = 0; t < s.size(); ++t) s[t] = root_of_unity(k * static_cast<std::int64_t>(t), s.size());
  return {grid, std::move(s)};
}

Signal operator+(const Signal& a, const Signal& b) {
  require_same_grid(a.grid(), b.grid());
  std::vector<Complex> s(a.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = a[i] + b[i];
  return {a.grid(), std::move(s)};
}

Signal operator-(const Signal& a, const Signal& b) {
  require_same_grid(a.grid(), b.grid());
  std::vector<Complex> s(a.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = a[i] - b[i];
  return {a.grid(), std::move(s)};
}

Signal operator*(Complex c, const Signal& a) {
  std::vector<Complex> s(a.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = c * a[i];
  return {a.grid(), std::move(s)};
}

double max_abs_diff(const Signal& a, const Signal& b) {
  require_same_grid(a.grid(), b.grid());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ---- matrices ---------------------------------------------------------------

TFMatrix::TFMatrix(Grid grid, std::vector<Complex> entries) : grid_(grid), entries_(std::move(entries)) {
  require(entries_.size() == grid_.size() * grid_.size(), ErrorCode::InvalidArgument,
          "TF matrix must be N x N");
}

TFMatrix TFMatrix::zeros(const Grid& grid) { return {grid, std::vector<Complex>(grid.size() * grid.size())}; }

double TFMatrix::max_abs_diff(const TFMatrix& other) const {
  require_same_grid(grid_, other.grid_);
  double m = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) m = std::max(m, std::abs(entries_[i] - other.entries_[i]));
  return m;
}

double TFMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  require(data_.size() == rows_ * cols_, ErrorCode::InvalidArgument, "matrix data size mismatch");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

// ---- transforms -------------------------------------------------------------

Signal dft(const Signal& f) {
  std::vector<Complex> s(f.samples().begin(), f.samples().end());
  detail::fft_inplace(s, detail::FftDirection::forward);
  return {f.grid(), std::move(s)};
}

Signal idft(const Signal& f) {
  std::vector<Complex> s(f.samples().begin(), f.samples().end());
  detail::fft_inplace(s, detail::FftDirection::backward);
  const double scale = 1.0 / static_cast<double>(s.size());
  for (auto& z : s) z *= scale;
  return {f.grid(), std::move(s)};
}

Signal translate(const Signal& f, std::ptrdiff_t y) {
  const std::size_t n = f.size();
  std::vector<Complex> s(n);
  for (std::size_t t = 0; t < n; ++t) s[t] = f[wrap(static_cast<std::int64_t>(t) - y, n)];
  return {f.grid(), std::move(s)};
}

Signal modulate(const Signal& f, std::ptrdiff_t j) {
  const std::size_t n = f.size();
  std::vector<Complex> s(n);
  for (std::size_t t = 0; t < n; ++t) s[t] = root_of_unity(j * static_cast<std::int64_t>(t), n) * f[t];
  return {f.grid(), std::move(s)};
}

Signal dilate(const Signal& f, Rational lambda) {
  require(lambda.num > 0 && lambda.den > 0, ErrorCode::IncompatibleDilation, "dilation factor must be positive");
  const std::int64_t g = std::gcd(lambda.num, lambda.den);
  const std::int64_t num = lambda.num / g;
  const std::int64_t den = lambda.den / g;
  const std::size_t n = f.size();
  require(static_cast<std::int64_t>(n) % num == 0, ErrorCode::IncompatibleDilation,
          "reduced numerator of the dilation factor must divide N");
  if (num == 1 && den == 1) return f;

  const Signal spectrum = dft(f);
  const std::size_t len = static_cast<std::size_t>(den) * n;
  std::vector<Complex> padded(len);
  const auto sn = static_cast<std::ptrdiff_t>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::ptrdiff_t k = f.grid().signed_bin(j);
    const Complex c = spectrum[j] * static_cast<double>(den);
    if (den > 1 && n % 2 == 0 && k == -sn / 2) {
      // The Nyquist bin stands for cos at the band edge; split it evenly.
      padded[wrap(k, len)] += 0.5 * c;
      padded[wrap(-k, len)] += 0.5 * c;
    } else {
      padded[wrap(k, len)] += c;
    }
  }
  detail::fft_inplace(padded, detail::FftDirection::backward);
  const double scale = 1.0 / static_cast<double>(len);

  std::vector<Complex> out(n);
  const std::int64_t origin = f.grid().origin();
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t idx = den * origin + num * (static_cast<std::int64_t>(i) - origin);
    out[i] = padded[wrap(idx, len)] * scale;
  }
  return {f.grid(), std::move(out)};
}

// ---- inner products and norms -----------------------------------------------

Complex inner(const Signal& f, const Signal& h) {
  require_same_grid(f.grid(), h.grid());
  detail::CompensatedSum re;
  detail::CompensatedSum im;
  for (std::size_t t = 0; t < f.size(); ++t) {
    const Complex z = f[t] * std::conj(h[t]);
    re.add(z.real());
    im.add(z.imag());
  }
  return {re.value(), im.value()};
}

double l2_norm(const Signal& f) { return lp_norm(f.samples(), Exponent(2.0)); }

double lp_norm_abs(std::span<const double> magnitudes, Exponent p, double weight) {
  double peak = 0.0;
  for (double a : magnitudes) peak = std::max(peak, a);
  if (p.is_infinite() || peak == 0.0) return peak;
  const double pv = p.value();
  detail::CompensatedSum acc;
  if (pv == 2.0) {
    for (double a : magnitudes) {
      const double r = a / peak;
      acc.add(r * r);
    }
    return peak * std::sqrt(weight * acc.value());
  }
  for (double a : magnitudes) acc.add(std::pow(a / peak, pv));
  return peak * std::pow(weight * acc.value(), 1.0 / pv);
}

double lp_norm(std::span<const Complex> values, Exponent p, double weight) {
  std::vector<double> mags(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) mags[i] = std::abs(values[i]);
  return lp_norm_abs(mags, p, weight);
}

double lp_norm(const Signal& f, Exponent p, NormMode mode) {
  return lp_norm(f.samples(), p, mode == NormMode::continuum ? f.grid().dx() : 1.0);
}

double mixed_norm_abs(std::span<const double> magnitudes, std::size_t outer_count, std::size_t inner_count,
                      const MixedNormParams& params, NormWeights weights) {
  require(magnitudes.size() == outer_count * inner_count, ErrorCode::InvalidArgument,
          "mixed norm layout mismatch");
  std::vector<double> inner_norms(outer_count);
  for (std::size_t o = 0; o < outer_count; ++o) {
    inner_norms[o] = lp_norm_abs(magnitudes.subspan(o * inner_count, inner_count), params.p, weights.inner);
  }
  return lp_norm_abs(inner_norms, params.q, weights.outer);
}

namespace {

double strided_mixed_norm(std::span<const Complex> data, std::size_t outer_count, std::size_t inner_count,
                          std::size_t outer_stride, std::size_t inner_stride, const MixedNormParams& params,
                          NormWeights weights) {
  std::vector<double> mags(outer_count * inner_count);
  for (std::size_t o = 0; o < outer_count; ++o) {
    for (std::size_t i = 0; i < inner_count; ++i) {
      mags[o * inner_count + i] = std::abs(data[o * outer_stride + i * inner_stride]);
    }
  }
  return mixed_norm_abs(mags, outer_count, inner_count, params, weights);
}

}  // namespace

NormWeights stft_weights(const Grid& grid, NormMode mode) {
  if (mode == NormMode::discrete) return {};
  return {grid.dx(), grid.dxi()};
}

double mixed_norm(const TFMatrix& m, const MixedNormParams& params) {
  const std::size_t n = m.size();
  // entries are x-major: inner index x has stride n, outer index xi stride 1
  return strided_mixed_norm(m.entries(), n, n, 1, n, params, stft_weights(m.grid(), params.mode));
}

double mixed_norm(const ComplexMatrix& m, const MixedNormParams& params, InnerAxis inner, NormWeights weights) {
  if (inner == InnerAxis::columns) {
    return strided_mixed_norm(m.data(), m.rows(), m.cols(), m.cols(), 1, params, weights);
  }
  return strided_mixed_norm(m.data(), m.cols(), m.rows(), 1, m.cols(), params, weights);
}

}  // namespace modspace
