#include "modspace/gabor.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <mutex>

#include "modspace/detail/fft.hpp"
#include "modspace/detail/parallel.hpp"
#include "modspace/detail/rng.hpp"

namespace modspace {

using detail::FftDirection;
using detail::fft_inplace;

namespace {

constexpr std::size_t kDenseLimit = 512;
constexpr double kPowerTolerance = 1e-8;
constexpr std::size_t kPowerCap = 20000;

std::size_t wrap(std::int64_t k, std::size_t n) {
  const auto m = static_cast<std::int64_t>(n);
  const std::int64_t r = k % m;
  return static_cast<std::size_t>(r < 0 ? r + m : r);
}

// Walnut representation: S f(t) = (N/b) sum_r G_r(t) f(t + r N/b) with
// G_r(t) = sum_k g(t - a k) conj g(t + r N/b - a k), r = 0..b-1.
struct Walnut {
  std::size_t n;
  std::size_t period;  // N / b
  std::size_t b;
  std::vector<Complex> g;  // b rows of length N

  Walnut(const GaborSystem& sys) : n(sys.grid().size()), period(n / sys.freq_step()), b(sys.freq_step()) {
    const auto& w = sys.window().signal();
    g.assign(b * n, 0.0);
    const std::size_t a = sys.time_step();
    const double scale = static_cast<double>(period);
    for (std::size_t r = 0; r < b; ++r) {
      for (std::size_t t = 0; t < n; ++t) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k < sys.time_count(); ++k) {
          const auto shift = static_cast<std::int64_t>(a * k);
          const auto ti = static_cast<std::int64_t>(t);
          acc += w[wrap(ti - shift, n)] * std::conj(w[wrap(ti + static_cast<std::int64_t>(r * period) - shift, n)]);
        }
        g[r * n + t] = scale * acc;
      }
    }
  }

  void apply(std::span<const Complex> f, std::span<Complex> out) const {
    for (std::size_t t = 0; t < n; ++t) {
      Complex acc = 0.0;
      for (std::size_t r = 0; r < b; ++r) acc += g[r * n + t] * f[(t + r * period) % n];
      out[t] = acc;
    }
  }
};

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

std::vector<Complex> start_vector(std::size_t n) {
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = {detail::to_unit(detail::counter_word(0x67616272ULL, 0, 2 * i)) - 0.5,
            detail::to_unit(detail::counter_word(0x67616272ULL, 0, 2 * i + 1)) - 0.5};
  }
  return v;
}

// Largest eigenvalue of the positive semidefinite map x -> shift x - S x
// (shift = 0 means S itself).
double power_top(const Walnut& s, double shift) {
  std::vector<Complex> x = start_vector(s.n);
  std::vector<Complex> y(s.n);
  double nx = norm2(x);
  for (auto& z : x) z /= nx;
  double lambda = 0.0;
  for (std::size_t it = 0; it < kPowerCap; ++it) {
    s.apply(x, y);
    if (shift != 0.0) {
      for (std::size_t i = 0; i < s.n; ++i) y[i] = shift * x[i] - y[i];
    }
    const double next = dot(y, x).real();
    const double ny = norm2(y);
    if (ny == 0.0) return 0.0;
    for (std::size_t i = 0; i < s.n; ++i) x[i] = y[i] / ny;
    if (it > 0 && std::abs(next - lambda) <= kPowerTolerance * std::max(std::abs(next), 1e-300)) return next;
    lambda = next;
  }
  return lambda;
}

}  // namespace

const char* to_string(BoundsMethod method) {
  return method == BoundsMethod::exact_spectrum ? "exact_spectrum" : "power_iteration";
}

struct GaborSystem::Cache {
  std::once_flag bounds_once;
  FrameBounds bounds;
  std::once_flag dual_once;
  std::optional<Window> dual;
};

GaborSystem::GaborSystem(Window window, std::size_t time_step, std::size_t freq_step)
    : window_(std::move(window)), a_(time_step), b_(freq_step), cache_(std::make_shared<Cache>()) {
  const std::size_t n = window_.grid().size();
  require(a_ > 0 && b_ > 0, ErrorCode::InvalidArgument, "lattice steps must be positive");
  require(n % a_ == 0 && n % b_ == 0, ErrorCode::InvalidArgument, "lattice steps must divide N");
}

double GaborSystem::redundancy() const noexcept {
  return static_cast<double>(grid().size()) / static_cast<double>(a_ * b_);
}

const FrameBounds& GaborSystem::frame_bounds() const {
  std::call_once(cache_->bounds_once, [this] { cache_->bounds = modspace::frame_bounds(*this); });
  return cache_->bounds;
}

const Window& GaborSystem::dual() const {
  std::call_once(cache_->dual_once, [this] { cache_->dual.emplace(dual_window(*this)); });
  return *cache_->dual;
}

GaborSystem GaborSystem::with_window(Window w) const { return {std::move(w), a_, b_}; }

ComplexMatrix gabor_coeffs(const Signal& f, const GaborSystem& sys) {
  require_same_grid(f.grid(), sys.grid());
  const std::size_t n = f.size();
  const std::size_t kc = sys.time_count();
  const std::size_t lc = sys.freq_count();
  const auto& g = sys.window().signal();
  ComplexMatrix c(kc, lc);
  detail::parallel_for(kc, [&](std::size_t k) {
    // Fold f(t) conj g(t - a k) onto Z_{N/b}, then one short DFT.
    std::vector<Complex> fold(lc);
    const auto shift = static_cast<std::int64_t>(sys.time_step() * k);
    for (std::size_t t = 0; t < n; ++t) fold[t % lc] += f[t] * std::conj(g[wrap(static_cast<std::int64_t>(t) - shift, n)]);
    fft_inplace(fold, FftDirection::forward);
    for (std::size_t l = 0; l < lc; ++l) c(k, l) = fold[l];
  });
  return c;
}

Signal gabor_synthesize(const ComplexMatrix& c, const GaborSystem& sys) {
  const std::size_t n = sys.grid().size();
  const std::size_t kc = sys.time_count();
  const std::size_t lc = sys.freq_count();
  require(c.rows() == kc && c.cols() == lc, ErrorCode::LengthMismatch, "coefficient shape does not match lattice");
  const auto& g = sys.window().signal();
  std::vector<std::vector<Complex>> parts(kc);
  detail::parallel_for(kc, [&](std::size_t k) {
    std::vector<Complex> h(lc);
    for (std::size_t l = 0; l < lc; ++l) h[l] = c(k, l);
    fft_inplace(h, FftDirection::backward);
    parts[k] = std::move(h);
  });
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < kc; ++k) {
    const auto shift = static_cast<std::int64_t>(sys.time_step() * k);
    for (std::size_t t = 0; t < n; ++t) out[t] += parts[k][t % lc] * g[wrap(static_cast<std::int64_t>(t) - shift, n)];
  }
  return {sys.grid(), std::move(out)};
}

Signal frame_apply(const GaborSystem& sys, const Signal& f) {
  require_same_grid(f.grid(), sys.grid());
  const Walnut w(sys);
  std::vector<Complex> out(f.size());
  w.apply(f.samples(), out);
  return {f.grid(), std::move(out)};
}

ComplexMatrix frame_matrix(const GaborSystem& sys) {
  const Walnut w(sys);
  ComplexMatrix s(w.n, w.n);
  for (std::size_t t = 0; t < w.n; ++t) {
    for (std::size_t r = 0; r < w.b; ++r) s(t, (t + r * w.period) % w.n) += w.g[r * w.n + t];
  }
  return s;
}

FrameBounds frame_bounds(const GaborSystem& sys) {
  const std::size_t n = sys.grid().size();
  FrameBounds fb;
  if (n <= kDenseLimit) {
    const ComplexMatrix s = frame_matrix(sys);
    Eigen::MatrixXcd m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s(i, j);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    fb.lower = std::max(0.0, ev(0));
    fb.upper = std::max(0.0, ev(ev.size() - 1));
    fb.method = BoundsMethod::exact_spectrum;
  } else {
    const Walnut w(sys);
    fb.upper = power_top(w, 0.0);
    fb.lower = std::max(0.0, fb.upper - power_top(w, fb.upper));
    fb.method = BoundsMethod::power_iteration;
  }
  if (fb.lower <= 1e-10 * fb.upper) fb.lower = 0.0;
  return fb;
}

Window dual_window(const GaborSystem& sys) {
  require(sys.frame_bounds().is_frame(), ErrorCode::NotAFrame, "system is not a frame");
  const Walnut s(sys);
  const std::size_t n = s.n;
  const auto rhs = sys.window().signal().samples();
  const double rhs_norm = norm2(rhs);
  std::vector<Complex> x(n, 0.0);
  std::vector<Complex> r(rhs.begin(), rhs.end());
  std::vector<Complex> p = r;
  std::vector<Complex> sp(n);
  double rr = dot(r, r).real();
  const std::size_t cap = 10 * n;
  for (std::size_t it = 0; it < cap; ++it) {
    if (std::sqrt(rr) <= 1e-10 * rhs_norm) return Window(Signal(sys.grid(), std::move(x)));
    s.apply(p, sp);
    const double alpha = rr / dot(sp, p).real();
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * sp[i];
    }
    const double next = dot(r, r).real();
    const double beta = next / rr;
    rr = next;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  if (std::sqrt(rr) <= 1e-10 * rhs_norm) return Window(Signal(sys.grid(), std::move(x)));
  raise(ErrorCode::NoConvergence, "conjugate gradient did not reach the residual target");
}

Signal gabor_reconstruct(const Signal& f, const GaborSystem& sys, bool swapped) {
  require(sys.frame_bounds().is_frame(), ErrorCode::NotAFrame, "system is not a frame");
  const GaborSystem dual = sys.with_window(sys.dual());
  if (swapped) return gabor_synthesize(gabor_coeffs(f, sys), dual);
  return gabor_synthesize(gabor_coeffs(f, dual), sys);
}

}  // namespace modspace
