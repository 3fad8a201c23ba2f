#pragma once

// Gabor systems {M_{b l} tau_{a k} g} on Z_N: analysis, synthesis, the frame
// operator, frame bounds and the canonical dual window.

#include <memory>

#include "modspace/core.hpp"
#include "modspace/stft.hpp"

namespace modspace {

enum class BoundsMethod { exact_spectrum, power_iteration };

const char* to_string(BoundsMethod method);

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  BoundsMethod method = BoundsMethod::exact_spectrum;

  bool is_frame() const noexcept { return lower > 0.0; }
};

class GaborSystem {
 public:
  // a and b must divide N.
  GaborSystem(Window window, std::size_t time_step, std::size_t freq_step);

  const Window& window() const noexcept { return window_; }
  const Grid& grid() const noexcept { return window_.grid(); }
  std::size_t time_step() const noexcept { return a_; }
  std::size_t freq_step() const noexcept { return b_; }
  // N / a time positions and N / b frequency positions.
  std::size_t time_count() const noexcept { return grid().size() / a_; }
  std::size_t freq_count() const noexcept { return grid().size() / b_; }
  double redundancy() const noexcept;

  // Computed on first use and shared between copies.
  const FrameBounds& frame_bounds() const;
  const Window& dual() const;

  // Same lattice, different window.
  GaborSystem with_window(Window w) const;

 private:
  struct Cache;

  Window window_;
  std::size_t a_;
  std::size_t b_;
  std::shared_ptr<Cache> cache_;
};

// Entry (k, l) = <f, M_{b l} tau_{a k} g>; rows k, columns l.
ComplexMatrix gabor_coeffs(const Signal& f, const GaborSystem& sys);

// sum_{k,l} c(k, l) M_{b l} tau_{a k} g
Signal gabor_synthesize(const ComplexMatrix& c, const GaborSystem& sys);

// S f.  Uses S(t, s) = (N/b) sum_k g(t - a k) conj g(s - a k) for
// t = s mod N/b and 0 otherwise.
Signal frame_apply(const GaborSystem& sys, const Signal& f);

// Dense S as an N x N matrix.
ComplexMatrix frame_matrix(const GaborSystem& sys);

// Extreme eigenvalues of S.  Dense spectrum for N <= 512, power iteration
// (with a shift for the lower end) above.  A is reported as 0 when it falls
// below 1e-10 B.
FrameBounds frame_bounds(const GaborSystem& sys);

// S^{-1} g by conjugate gradients.
Window dual_window(const GaborSystem& sys);

// Analysis with the dual window and synthesis with g, or the other way round
// when `swapped` is set.
Signal gabor_reconstruct(const Signal& f, const GaborSystem& sys, bool swapped = false);

}  // namespace modspace
