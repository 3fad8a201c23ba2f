#include <gtest/gtest.h>

#include "helpers.hpp"
#include "modspace/stft.hpp"
#include "oracles.hpp"

using namespace modspace;

namespace {

double rel_dev(const TFMatrix& a, const std::vector<Complex>& ref) {
  double scale = 0.0;
  for (const auto& z : ref) scale = std::max(scale, std::abs(z));
  return oracle::max_diff(std::vector<Complex>(a.entries().begin(), a.entries().end()), ref) / scale;
}

}  // namespace

class StftSizes : public ::testing::TestWithParam<std::size_t> {};

TEST_P(StftSizes, MatchesTripleLoop) {
  const Grid g(GetParam(), 0.25);
  const Signal f = oracle::random_signal(g, 21);
  const Window w(oracle::random_signal(g, 22));
  const auto ref = oracle::stft(oracle::values(f), oracle::values(w.signal()));
  EXPECT_LT(rel_dev(stft(f, w), ref), 1e-12);
}

TEST_P(StftSizes, AlternateFormsAgree) {
  const Grid g(GetParam(), 0.25);
  const Signal f = oracle::random_signal(g, 23);
  const Window w(oracle::random_signal(g, 24));
  const auto ref = oracle::stft(oracle::values(f), oracle::values(w.signal()));
  for (StftForm form : kAllStftForms) {
    if (form == StftForm::cross_ambiguity && g.size() % 2 == 1) {
      expect_code(ErrorCode::OddLengthAmbiguity, [&] { stft_alternate(f, w, form); });
      continue;
    }
    EXPECT_LT(rel_dev(stft_alternate(f, w, form), ref), 1e-10) << to_string(form);
  }
}

INSTANTIATE_TEST_SUITE_P(Stft, StftSizes, ::testing::Values(8, 15, 16, 64));

TEST(Stft, OrthogonalityWithConstantN) {
  const Grid g(32, 0.5);
  const Signal f1 = oracle::random_signal(g, 1);
  const Signal f2 = oracle::random_signal(g, 2);
  const Window g1(oracle::random_signal(g, 3));
  const Window g2(oracle::random_signal(g, 4));
  const auto v1 = oracle::stft(oracle::values(f1), oracle::values(g1.signal()));
  const auto v2 = oracle::stft(oracle::values(f2), oracle::values(g2.signal()));
  Complex lhs = 0.0;
  for (std::size_t i = 0; i < v1.size(); ++i) lhs += v1[i] * std::conj(v2[i]);
  const Complex rhs = 32.0 * inner(f1, f2) * std::conj(inner(g1.signal(), g2.signal()));
  EXPECT_LT(std::abs(lhs - rhs), 1e-10 * 32.0);
  EXPECT_LT(check_orthogonality(f1, f2, g1, g2), 1e-10 * 32.0);
  EXPECT_LT(std::abs(tf_inner(stft(f1, g1), stft(f2, g2)) - lhs), 1e-10);
}

TEST(Stft, InversionWithTwoWindows) {
  const Grid g(64, 0.125);
  const Signal f = oracle::random_signal(g, 5);
  const Window g1 = gaussian_window(g);
  const Window g2(oracle::random_signal(g, 6) + g1.signal());
  const Signal back = stft_invert(stft(f, g1), g1, g2);
  EXPECT_LT(l2_norm(back - f) / l2_norm(f), 1e-12);
}

TEST(Stft, InversionRejectsOrthogonalWindows) {
  const Grid g(8, 1.0);
  const Window a(Signal::delta(g, 0));
  const Window b(Signal::delta(g, 1));
  const Signal f = oracle::random_signal(g, 7);
  expect_code(ErrorCode::InvalidArgument, [&] { stft_invert(stft(f, a), a, b); });
}

TEST(Stft, AdjointIdentity) {
  const Grid g(16, 0.5);
  const Signal f = oracle::random_signal(g, 8);
  const Window w(oracle::random_signal(g, 9));
  std::vector<Complex> e(256);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = Complex(std::sin(0.7 * i), std::cos(1.3 * i));
  const TFMatrix F(g, e);
  const Complex lhs = tf_inner(stft(f, w), F);
  const Complex rhs = inner(f, stft_adjoint(F, w));
  EXPECT_LT(std::abs(lhs - rhs), 1e-10);
}

TEST(Stft, GaussianWindow) {
  const Grid g(64, 0.125);
  const Window w = gaussian_window(g);
  EXPECT_NEAR(w.l2_norm(), 1.0, 1e-14);
  for (std::size_t k = 1; k < 32; ++k) {
    EXPECT_NEAR(std::abs(w.signal()[32 + k] - w.signal()[32 - k]), 0.0, 1e-15);
  }
  expect_code(ErrorCode::InvalidArgument, [&] { gaussian_window(g, -1.0); });
  expect_code(ErrorCode::InvalidArgument, [&] { Window{Signal::zeros(g)}; });
}

TEST(Stft, ZeroSignal) {
  const Grid g(16, 0.5);
  EXPECT_EQ(stft(Signal::zeros(g), gaussian_window(g)).max_abs(), 0.0);
}
