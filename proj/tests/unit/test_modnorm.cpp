#include <gtest/gtest.h>

#include "helpers.hpp"
#include "modspace/modnorm.hpp"
#include "oracles.hpp"

using namespace modspace;

namespace {

const double kInf = INFINITY;

Exponent ex(double v) { return std::isinf(v) ? Exponent::infinity() : Exponent(v); }

// Block norm from the partition weights with the naive transforms.
double blocks_oracle(const Signal& f, const BlockPartition& part, double p, double q, double w) {
  const auto fh = oracle::dft(oracle::values(f));
  std::vector<double> norms;
  for (const auto& blk : part.blocks()) {
    std::vector<Complex> spec(fh.size());
    for (std::size_t s = 0; s < blk.bins.size(); ++s) spec[blk.bins[s]] = blk.weights[s] * fh[blk.bins[s]];
    norms.push_back(oracle::lp(oracle::idft(spec), p, w));
  }
  return oracle::lp(norms, q);
}

}  // namespace

TEST(ModNorm, BlocksMatchOracle) {
  const Grid g(64, 0.125);
  const auto part = partition_bumps(g);
  const Signal f = oracle::random_signal(g, 41);
  for (double p : {1.0, 2.0, 4.0, kInf}) {
    for (double q : {1.0, 2.0, kInf}) {
      const double d = mod_norm_blocks(f, part, {ex(p), ex(q), NormMode::discrete});
      EXPECT_NEAR(d, blocks_oracle(f, part, p, q, 1.0), 1e-12 * d);
      const double c = mod_norm_blocks(f, part, {ex(p), ex(q), NormMode::continuum});
      EXPECT_NEAR(c, blocks_oracle(f, part, p, q, 0.125), 1e-12 * c);
    }
  }
}

TEST(ModNorm, StftMatchesOracle) {
  const Grid g(16, 0.25);
  const Window w = gaussian_window(g);
  const Signal f = oracle::random_signal(g, 42);
  const auto v = oracle::stft(oracle::values(f), oracle::values(w.signal()));
  for (double p : {1.0, 3.0}) {
    for (double q : {2.0, kInf}) {
      std::vector<double> cols;
      for (std::size_t xi = 0; xi < 16; ++xi) {
        std::vector<Complex> col;
        for (std::size_t x = 0; x < 16; ++x) col.push_back(v[x * 16 + xi]);
        cols.push_back(oracle::lp(col, p, g.dx()));
      }
      const double ref = std::isinf(q) ? oracle::lp(cols, q) : oracle::lp(cols, q, g.dxi());
      const double got = mod_norm_stft(f, w, {ex(p), ex(q), NormMode::continuum});
      EXPECT_NEAR(got, ref, 1e-12 * ref);
    }
  }
}

TEST(ModNorm, StftL2Identity) {
  const Grid g(64, 0.125);
  const Window w(oracle::random_signal(g, 43));
  const Signal f = oracle::random_signal(g, 44);
  const double lhs = mod_norm_stft(f, w, {2.0, 2.0, NormMode::continuum});
  const double rhs = lp_norm(f, 2.0, NormMode::continuum) * lp_norm(w.signal(), 2.0, NormMode::continuum) / g.dx();
  EXPECT_NEAR(lhs, rhs, 1e-12 * rhs);
  EXPECT_NEAR(mod_norm_stft(f, w, {2.0, 2.0, NormMode::discrete}), std::sqrt(64.0) * l2_norm(f) * w.l2_norm(),
              1e-10);
}

TEST(ModNorm, GaborMatchesOracle) {
  const Grid g(32, 0.25);
  const GaborSystem sys(gaussian_window(g), 4, 4);
  const Signal f = oracle::random_signal(g, 45);
  const auto fv = oracle::values(f);
  const auto gv = oracle::values(sys.window().signal());
  // Rows k (time), columns l; inner reduction over k.
  std::vector<double> outer;
  for (std::size_t l = 0; l < 8; ++l) {
    std::vector<double> col;
    for (std::size_t k = 0; k < 8; ++k) {
      Complex c = 0.0;
      for (std::size_t t = 0; t < 32; ++t) {
        c += fv[t] * std::conj(oracle::expi(static_cast<std::int64_t>(4 * l * t), 32) * gv[(t + 32 - 4 * k) % 32]);
      }
      col.push_back(std::abs(c));
    }
    outer.push_back(oracle::lp(col, 3.0, 4 * g.dx()));
  }
  const double ref = oracle::lp(outer, 1.0, 4 * g.dxi());
  EXPECT_NEAR(mod_norm_gabor(f, sys, {3.0, 1.0, NormMode::continuum}), ref, 1e-12 * ref);
  expect_code(ErrorCode::NotAFrame, [&] { mod_norm_gabor(f, GaborSystem(gaussian_window(g), 4, 16), {}); });
}

TEST(ModNorm, VectorReducesToScalar) {
  const Grid g(64, 0.125);
  const auto part = partition_bumps(g);
  const Window w = gaussian_window(g);
  const std::vector<Signal> one{oracle::random_signal(g, 46)};
  const MixedNormParams params{4.0, 1.0, NormMode::continuum};
  EXPECT_NEAR(mod_norm_vector(one, part, params), mod_norm_blocks(one[0], part, params), 1e-12);
  EXPECT_NEAR(mod_norm_vector(one, w, params), mod_norm_stft(one[0], w, params), 1e-12);
  EXPECT_NEAR(lp_norm_vector(one, 3.0, NormMode::continuum), lp_norm(one[0], 3.0, NormMode::continuum), 1e-14);
}

TEST(ModNorm, VectorPythagoras) {
  const Grid g(32, 0.25);
  const std::vector<Signal> fs{oracle::random_signal(g, 47), oracle::random_signal(g, 48)};
  std::vector<Complex> agg;
  for (std::size_t t = 0; t < 32; ++t) agg.push_back(std::hypot(std::abs(fs[0][t]), std::abs(fs[1][t])));
  EXPECT_NEAR(lp_norm_vector(fs, 1.5, NormMode::discrete), oracle::lp(agg, 1.5), 1e-13);
}

TEST(ModNorm, Errors) {
  const Grid g(64, 0.125);
  const auto part = partition_bumps(g);
  expect_code(ErrorCode::EmptyList, [&] { mod_norm_vector(std::vector<Signal>{}, part, {}); });
  expect_code(ErrorCode::EmptyList, [&] { lp_norm_vector(std::vector<Signal>{}, 2.0, NormMode::discrete); });
  auto blocks = part.blocks();
  blocks.pop_back();
  const BlockPartition gap(g, blocks, part.profile(), part.step());
  expect_code(ErrorCode::PartitionGap, [&] { mod_norm_blocks(Signal::ones(g), gap, {}); });
  expect_code(ErrorCode::GridMismatch, [&] { mod_norm_blocks(Signal::ones(Grid(64, 0.25)), part, {}); });
}

TEST(ModNorm, BlockPiecesSumToSignal) {
  const Grid g(64, 0.125);
  const Signal f = oracle::random_signal(g, 49);
  Signal sum = Signal::zeros(g);
  for (const auto& piece : block_pieces(f, partition_bumps(g))) sum = sum + piece;
  EXPECT_LT(max_abs_diff(sum, f), 1e-12);
}
