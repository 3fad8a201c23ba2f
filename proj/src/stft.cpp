#include "modspace/stft.hpp"

#include <cmath>
#include <numbers>

#include "modspace/detail/fft.hpp"
#include "modspace/detail/parallel.hpp"
#include "modspace/detail/summation.hpp"

namespace modspace {

using detail::FftDirection;
using detail::fft_inplace;

namespace {

std::size_t wrap(std::int64_t k, std::size_t n) {
  const auto m = static_cast<std::int64_t>(n);
  const std::int64_t r = k % m;
  return static_cast<std::size_t>(r < 0 ? r + m : r);
}

std::vector<Complex> roots_table(std::size_t n) {
  std::vector<Complex> w(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = root_of_unity(static_cast<std::int64_t>(k), n);
  return w;
}

using Spectrum = std::vector<Complex>;

Spectrum spectrum_of(const Signal& f) {
  Spectrum s(f.samples().begin(), f.samples().end());
  fft_inplace(s, FftDirection::forward);
  return s;
}

// Cyclic convolution (a * b)(k) = sum_j a(j) b(k - j) via the FFT.
Spectrum cyclic_convolve(const Spectrum& a, Spectrum b) {
  Spectrum fa = a;
  fft_inplace(fa, FftDirection::forward);
  fft_inplace(b, FftDirection::forward);
  for (std::size_t j = 0; j < fa.size(); ++j) fa[j] *= b[j];
  fft_inplace(fa, FftDirection::backward);
  const double scale = 1.0 / static_cast<double>(fa.size());
  for (auto& z : fa) z *= scale;
  return fa;
}

TFMatrix frequency_inner_form(const Signal& f, const Window& g) {
  const std::size_t n = f.size();
  const Spectrum fh = spectrum_of(f);
  const Spectrum gh = spectrum_of(g.signal());
  const auto w = roots_table(n);
  std::vector<Complex> out(n * n);
  const double inv_n = 1.0 / static_cast<double>(n);
  detail::parallel_for(n, [&](std::size_t x) {
    for (std::size_t xi = 0; xi < n; ++xi) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t d = wrap(static_cast<std::int64_t>(j) - static_cast<std::int64_t>(xi), n);
        // (tau_xi M_{-x} g^)(j) = e^{-2 pi i x (j - xi) / N} g^(j - xi)
        const Complex atom = std::conj(w[(x * d) % n]) * gh[d];
        acc += fh[j] * std::conj(atom);
      }
      out[x * n + xi] = acc * inv_n;
    }
  });
  return {f.grid(), std::move(out)};
}

TFMatrix windowed_fourier_form(const Signal& f, const Window& g) {
  const std::size_t n = f.size();
  const auto& gs = g.signal();
  std::vector<Complex> out(n * n);
  detail::parallel_for(n, [&](std::size_t x) {
    std::span<Complex> row(out.data() + x * n, n);
    for (std::size_t t = 0; t < n; ++t) {
      row[t] = f[t] * std::conj(gs[wrap(static_cast<std::int64_t>(t) - static_cast<std::int64_t>(x), n)]);
    }
    fft_inplace(row, FftDirection::forward);
  });
  return {f.grid(), std::move(out)};
}

TFMatrix fourier_swap_form(const Signal& f, const Window& g) {
  const std::size_t n = f.size();
  const Signal fh(f.grid(), spectrum_of(f));
  const Window gh(Signal(g.grid(), spectrum_of(g.signal())));
  const TFMatrix swapped = windowed_fourier_form(fh, gh);
  const auto w = roots_table(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<Complex> out(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t minus_x = wrap(-static_cast<std::int64_t>(x), n);
    for (std::size_t xi = 0; xi < n; ++xi) {
      out[x * n + xi] = inv_n * std::conj(w[(x * xi) % n]) * swapped.at(xi, minus_x);
    }
  }
  return {f.grid(), std::move(out)};
}

TFMatrix time_convolution_form(const Signal& f, const Window& g) {
  const std::size_t n = f.size();
  const auto& gs = g.signal();
  const auto w = roots_table(n);
  const Spectrum fs(f.samples().begin(), f.samples().end());
  std::vector<Complex> out(n * n);
  detail::parallel_for(n, [&](std::size_t xi) {
    // M_xi g*(t) = e^{2 pi i xi t / N} conj g(-t)
    Spectrum h(n);
    for (std::size_t t = 0; t < n; ++t) {
      h[t] = w[(xi * t) % n] * std::conj(gs[wrap(-static_cast<std::int64_t>(t), n)]);
    }
    const Spectrum c = cyclic_convolve(fs, std::move(h));
    for (std::size_t x = 0; x < n; ++x) out[x * n + xi] = std::conj(w[(x * xi) % n]) * c[x];
  });
  return {f.grid(), std::move(out)};
}

TFMatrix frequency_convolution_form(const Signal& f, const Window& g) {
  const std::size_t n = f.size();
  const Spectrum fh = spectrum_of(f);
  const Spectrum gh = spectrum_of(g.signal());
  const auto w = roots_table(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<Complex> out(n * n);
  detail::parallel_for(n, [&](std::size_t x) {
    // M_{-x} g^*(j) = e^{-2 pi i x j / N} conj g^(-j)
    Spectrum k(n);
    for (std::size_t j = 0; j < n; ++j) {
      k[j] = std::conj(w[(x * j) % n]) * std::conj(gh[wrap(-static_cast<std::int64_t>(j), n)]);
    }
    const Spectrum c = cyclic_convolve(fh, std::move(k));
    for (std::size_t xi = 0; xi < n; ++xi) out[x * n + xi] = inv_n * c[xi];
  });
  return {f.grid(), std::move(out)};
}

TFMatrix cross_ambiguity_form(const Signal& f, const Window& g) {
  const std::size_t n = f.size();
  require(n % 2 == 0, ErrorCode::OddLengthAmbiguity, "half-shift form needs even N");
  const auto& gs = g.signal();
  const auto w = roots_table(n);
  std::vector<Complex> out(n * n);
  detail::parallel_for(n, [&](std::size_t x) {
    const auto hi = static_cast<std::int64_t>((x + 1) / 2);
    const auto lo = static_cast<std::int64_t>(x / 2);
    std::span<Complex> row(out.data() + x * n, n);
    for (std::size_t s = 0; s < n; ++s) {
      const auto si = static_cast<std::int64_t>(s);
      row[s] = f[wrap(si + hi, n)] * std::conj(gs[wrap(si - lo, n)]);
    }
    fft_inplace(row, FftDirection::forward);
    for (std::size_t xi = 0; xi < n; ++xi) row[xi] *= std::conj(w[(xi * static_cast<std::size_t>(hi)) % n]);
  });
  return {f.grid(), std::move(out)};
}

}  // namespace

Window::Window(Signal signal) : signal_(std::move(signal)), norm_(modspace::l2_norm(signal_)) {
  require(norm_ > 0.0, ErrorCode::InvalidArgument, "window must be non-zero");
}

Window gaussian_window(const Grid& grid, std::optional<double> width) {
  const double s = width.value_or(grid.bins_per_unit() / 8.0);
  require(s > 0.0, ErrorCode::InvalidArgument, "window width must be positive");
  const std::size_t n = grid.size();
  const double period = static_cast<double>(n) * grid.dx();
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int m = -2; m <= 2; ++m) {
      const double x = grid.position(i) + m * period;
      acc += std::exp(-std::numbers::pi * x * x / (s * s));
    }
    v[i] = acc;
  }
  Signal raw(grid, std::move(v));
  const double norm = l2_norm(raw);
  return Window((1.0 / norm) * raw);
}

const char* to_string(StftForm form) {
  switch (form) {
    case StftForm::frequency_inner: return "frequency_inner";
    case StftForm::windowed_fourier: return "windowed_fourier";
    case StftForm::fourier_swap: return "fourier_swap";
    case StftForm::time_convolution: return "time_convolution";
    case StftForm::frequency_convolution: return "frequency_convolution";
    case StftForm::cross_ambiguity: return "cross_ambiguity";
  }
  return "unknown";
}

TFMatrix stft(const Signal& f, const Window& g) {
  require_same_grid(f.grid(), g.grid());
  return windowed_fourier_form(f, g);
}

TFMatrix stft_alternate(const Signal& f, const Window& g, StftForm form) {
  require_same_grid(f.grid(), g.grid());
  switch (form) {
    case StftForm::frequency_inner: return frequency_inner_form(f, g);
    case StftForm::windowed_fourier: return windowed_fourier_form(f, g);
    case StftForm::fourier_swap: return fourier_swap_form(f, g);
    case StftForm::time_convolution: return time_convolution_form(f, g);
    case StftForm::frequency_convolution: return frequency_convolution_form(f, g);
    case StftForm::cross_ambiguity: return cross_ambiguity_form(f, g);
  }
  raise(ErrorCode::InvalidArgument, "unknown STFT form");
}

Signal stft_adjoint(const TFMatrix& v, const Window& g2) {
  require_same_grid(v.grid(), g2.grid());
  const std::size_t n = v.size();
  const auto& gs = g2.signal();
  // sum_x g2(t - x) sum_xi V(x, xi) e^{2 pi i xi t / N}
  std::vector<Complex> rows(v.entries().begin(), v.entries().end());
  detail::parallel_for(n, [&](std::size_t x) { fft_inplace({rows.data() + x * n, n}, FftDirection::backward); });
  std::vector<Complex> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    Complex acc = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      acc += gs[wrap(static_cast<std::int64_t>(t) - static_cast<std::int64_t>(x), n)] * rows[x * n + t];
    }
    out[t] = acc;
  }
  return {v.grid(), std::move(out)};
}

Signal stft_invert(const TFMatrix& v, const Window& g1, const Window& g2) {
  const Complex c = inner(g2.signal(), g1.signal());
  require(std::abs(c) > 0.0, ErrorCode::InvalidArgument, "windows must not be orthogonal");
  const Signal s = stft_adjoint(v, g2);
  return (1.0 / (static_cast<double>(v.size()) * c)) * s;
}

Complex tf_inner(const TFMatrix& a, const TFMatrix& b) {
  require_same_grid(a.grid(), b.grid());
  detail::CompensatedSum re;
  detail::CompensatedSum im;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    const Complex z = a.entries()[i] * std::conj(b.entries()[i]);
    re.add(z.real());
    im.add(z.imag());
  }
  return {re.value(), im.value()};
}

double check_orthogonality(const Signal& f1, const Signal& f2, const Window& g1, const Window& g2) {
  require_same_grid(f1.grid(), f2.grid());
  require_same_grid(f1.grid(), g1.grid());
  require_same_grid(f1.grid(), g2.grid());
  const Complex lhs = tf_inner(stft(f1, g1), stft(f2, g2));
  const Complex rhs =
      static_cast<double>(f1.size()) * inner(f1, f2) * std::conj(inner(g1.signal(), g2.signal()));
  return std::abs(lhs - rhs);
}

}  // namespace modspace
