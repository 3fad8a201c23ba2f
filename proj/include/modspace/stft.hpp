#pragma once

#include "modspace/core.hpp"

namespace modspace {

// Non-zero analysis window with its cached l2 norm.
class Window {
 public:
  explicit Window(Signal signal);

  const Signal& signal() const noexcept { return signal_; }
  const Grid& grid() const noexcept { return signal_.grid(); }
  double l2_norm() const noexcept { return norm_; }

 private:
  Signal signal_;
  double norm_;
};

// Periodized Gaussian exp(-pi x^2 / s^2) about the physical origin, unit l2
// norm.  `width` defaults to N dx / 8.
Window gaussian_window(const Grid& grid, std::optional<double> width = std::nullopt);

// V_g f(x, xi) = sum_t f(t) conj(g(t - x)) e^{-2 pi i xi t / N}; one FFT per
// time shift.
TFMatrix stft(const Signal& f, const Window& g);

// The equivalent expressions of V_g f.  On Z_N the frequency-side forms carry
// an explicit 1/N from Parseval:
//   frequency_inner        (1/N) <f^, tau_xi M_{-x} g^>
//   windowed_fourier       (f . tau_x conj g)^(xi)
//   fourier_swap           (1/N) e^{-2 pi i x xi / N} V_{g^} f^ (xi, -x)
//   time_convolution       e^{-2 pi i x xi / N} (f * M_xi g*)(x),   g*(t) = conj g(-t)
//   frequency_convolution  (1/N) (f^ * M_{-x} g^*)(xi)
//   cross_ambiguity        e^{-2 pi i xi ceil(x/2) / N} sum_s f(s + ceil(x/2)) conj g(s - floor(x/2)) e^{-2 pi i xi s / N}
// The half-shift form needs even N (OddLengthAmbiguity otherwise): on odd N
// the symbol x/2 already has an integer meaning mod N that disagrees with it.
enum class StftForm {
  frequency_inner,
  windowed_fourier,
  fourier_swap,
  time_convolution,
  frequency_convolution,
  cross_ambiguity,
};

inline constexpr StftForm kAllStftForms[] = {
    StftForm::frequency_inner,  StftForm::windowed_fourier,      StftForm::fourier_swap,
    StftForm::time_convolution, StftForm::frequency_convolution, StftForm::cross_ambiguity,
};

const char* to_string(StftForm form);

TFMatrix stft_alternate(const Signal& f, const Window& g, StftForm form);

// Synthesis sum_{x,xi} V(x, xi) M_xi tau_x g2 over the full lattice.
Signal stft_adjoint(const TFMatrix& v, const Window& g2);

// f = stft_adjoint(stft(f, g1), g2) / (N <g2, g1>).
Signal stft_invert(const TFMatrix& v, const Window& g1, const Window& g2);

// Frobenius inner product sum_{x,xi} a(x,xi) conj b(x,xi).
Complex tf_inner(const TFMatrix& a, const TFMatrix& b);

// | <V_{g1} f1, V_{g2} f2> - N <f1, f2> conj<g1, g2> |
double check_orthogonality(const Signal& f1, const Signal& f2, const Window& g1, const Window& g2);

}  // namespace modspace
