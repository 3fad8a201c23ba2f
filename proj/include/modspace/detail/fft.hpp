#pragma once

#include <complex>
#include <span>

namespace modspace::detail {

enum class FftDirection { forward, backward };

// Unnormalized in-place transform of arbitrary length backed by FFTW.
// forward uses e^{-2 pi i j t / N}; backward uses e^{+2 pi i j t / N}.
// Plans are cached per (length, direction) behind a mutex; execution is
// reentrant.
void fft_inplace(std::span<std::complex<double>> data, FftDirection dir);

}  // namespace modspace::detail
