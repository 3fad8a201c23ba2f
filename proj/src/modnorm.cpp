#include "modspace/modnorm.hpp"

#include <cmath>

#include "modspace/detail/fft.hpp"
#include "modspace/detail/parallel.hpp"

namespace modspace {

using detail::FftDirection;
using detail::fft_inplace;

namespace {

constexpr double kPartitionSlack = 1e-9;

void require_partition(const BlockPartition& part) {
  require(part.partition_error() <= kPartitionSlack, ErrorCode::PartitionGap,
          "partition does not sum to one on the band");
}

// Time-domain samples of T_{phi_k} f given the spectrum of f.
std::vector<Complex> block_samples(std::span<const Complex> spectrum, const BlockPartition::Block& blk) {
  std::vector<Complex> v(spectrum.size());
  for (std::size_t s = 0; s < blk.bins.size(); ++s) v[blk.bins[s]] = blk.weights[s] * spectrum[blk.bins[s]];
  fft_inplace(v, FftDirection::backward);
  const double scale = 1.0 / static_cast<double>(v.size());
  for (auto& z : v) z *= scale;
  return v;
}

double sample_weight(const Grid& grid, NormMode mode) { return mode == NormMode::continuum ? grid.dx() : 1.0; }

std::vector<std::vector<Complex>> spectra_of(std::span<const Signal> fs) {
  std::vector<std::vector<Complex>> out(fs.size());
  detail::parallel_for(fs.size(), [&](std::size_t i) {
    out[i].assign(fs[i].samples().begin(), fs[i].samples().end());
    fft_inplace(out[i], FftDirection::forward);
  });
  return out;
}

void require_list(std::span<const Signal> fs) {
  require(!fs.empty(), ErrorCode::EmptyList, "signal list is empty");
  for (const auto& f : fs) require_same_grid(fs.front().grid(), f.grid());
}

}  // namespace

double mod_norm_stft(const Signal& f, const Window& g, const MixedNormParams& params) {
  return mixed_norm(stft(f, g), params);
}

std::vector<Signal> block_pieces(const Signal& f, const BlockPartition& part) {
  require_same_grid(f.grid(), part.grid());
  const Signal fh = dft(f);
  std::vector<Signal> out;
  out.reserve(part.size());
  for (const auto& blk : part.blocks()) out.emplace_back(f.grid(), block_samples(fh.samples(), blk));
  return out;
}

double mod_norm_blocks(const Signal& f, const BlockPartition& part, const MixedNormParams& params) {
  require_same_grid(f.grid(), part.grid());
  require_partition(part);
  const Signal fh = dft(f);
  const double w = sample_weight(f.grid(), params.mode);
  std::vector<double> norms(part.size());
  detail::parallel_for(part.size(), [&](std::size_t k) {
    norms[k] = lp_norm(block_samples(fh.samples(), part.block(k)), params.p, w);
  });
  return lp_norm_abs(norms, params.q, 1.0);
}

double mod_norm_gabor(const Signal& f, const GaborSystem& sys, const MixedNormParams& params) {
  require_same_grid(f.grid(), sys.grid());
  require(sys.frame_bounds().is_frame(), ErrorCode::NotAFrame, "system is not a frame");
  const ComplexMatrix c = gabor_coeffs(f, sys);
  NormWeights w;
  if (params.mode == NormMode::continuum) {
    w.inner = static_cast<double>(sys.time_step()) * f.grid().dx();
    w.outer = static_cast<double>(sys.freq_step()) * f.grid().dxi();
  }
  return mixed_norm(c, params, InnerAxis::rows, w);
}

double mod_norm_vector(std::span<const Signal> fs, const Window& g, const MixedNormParams& params) {
  require_list(fs);
  require_same_grid(fs.front().grid(), g.grid());
  const std::size_t n = g.grid().size();
  // Accumulate sum_n |V f_n|^2 laid out xi-major for the mixed reduction.
  std::vector<double> acc(n * n, 0.0);
  for (const auto& f : fs) {
    const TFMatrix v = stft(f, g);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t xi = 0; xi < n; ++xi) acc[xi * n + x] += std::norm(v.at(x, xi));
    }
  }
  for (auto& a : acc) a = std::sqrt(a);
  return mixed_norm_abs(acc, n, n, params, stft_weights(g.grid(), params.mode));
}

double mod_norm_vector(std::span<const Signal> fs, const BlockPartition& part, const MixedNormParams& params) {
  require_list(fs);
  require_same_grid(fs.front().grid(), part.grid());
  require_partition(part);
  const auto spectra = spectra_of(fs);
  const std::size_t n = part.grid().size();
  const double w = sample_weight(part.grid(), params.mode);
  std::vector<double> norms(part.size());
  detail::parallel_for(part.size(), [&](std::size_t k) {
    std::vector<double> agg(n, 0.0);
    for (const auto& s : spectra) {
      const auto piece = block_samples(s, part.block(k));
      for (std::size_t t = 0; t < n; ++t) agg[t] += std::norm(piece[t]);
    }
    for (auto& a : agg) a = std::sqrt(a);
    norms[k] = lp_norm_abs(agg, params.p, w);
  });
  return lp_norm_abs(norms, params.q, 1.0);
}

double lp_norm_vector(std::span<const Signal> fs, Exponent p, NormMode mode) {
  require_list(fs);
  const std::size_t n = fs.front().size();
  std::vector<double> agg(n, 0.0);
  for (const auto& f : fs) {
    for (std::size_t t = 0; t < n; ++t) agg[t] += std::norm(f[t]);
  }
  for (auto& a : agg) a = std::sqrt(a);
  return lp_norm_abs(agg, p, sample_weight(fs.front().grid(), mode));
}

}  // namespace modspace
