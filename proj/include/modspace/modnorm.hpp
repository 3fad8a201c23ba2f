#pragma once

// The three modulation-norm computations and their l2-valued versions.
//
//   stft    mixed norm of V_g f, inner index x, outer xi
//   blocks  ( sum_k ||T_{phi_k} f||_p^q )^{1/q}
//   gabor   mixed norm of the Gabor coefficients, inner k (time), outer l
//
// In continuum mode with p = q = 2 the stft definition returns
// ||f||_2 ||g||_2 / dx when the right-hand norms are the L^2 norms with weight
// dx, i.e. exactly the counting-measure product ||f|| ||g||.

#include <span>

#include "modspace/core.hpp"
#include "modspace/gabor.hpp"
#include "modspace/stft.hpp"
#include "modspace/symbols.hpp"

namespace modspace {

double mod_norm_stft(const Signal& f, const Window& g, const MixedNormParams& params);

// PartitionGap unless the partition sums to 1 within 1e-9 on every bin.
double mod_norm_blocks(const Signal& f, const BlockPartition& part, const MixedNormParams& params);

// NotAFrame when the lattice has lower frame bound 0.  Continuum weights are
// a dx (inner) and b dxi (outer).
double mod_norm_gabor(const Signal& f, const GaborSystem& sys, const MixedNormParams& params);

// Mixed norm of (sum_n |V_g f_n|^2)^{1/2}.
double mod_norm_vector(std::span<const Signal> fs, const Window& g, const MixedNormParams& params);
// ( sum_k || (sum_n |T_{phi_k} f_n|^2)^{1/2} ||_p^q )^{1/q}
double mod_norm_vector(std::span<const Signal> fs, const BlockPartition& part, const MixedNormParams& params);

// ||(sum_n |f_n|^2)^{1/2}||_p
double lp_norm_vector(std::span<const Signal> fs, Exponent p, NormMode mode);

// T_{phi_k} f for every block, as spectra restricted to the block support and
// transformed back; exposed for the engine and tests.
std::vector<Signal> block_pieces(const Signal& f, const BlockPartition& part);

}  // namespace modspace
