#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "modspace/symbols.hpp"

using namespace modspace;

TEST(Symbol, AlgebraIsPointwise) {
  const Grid g(32, 0.25);
  const Symbol c = sym_chirp(1.5, g);
  const Symbol s = sym_sgn(g);
  const Symbol prod = c * s;
  const Symbol cc = conj(c);
  for (std::size_t j = 0; j < 32; ++j) {
    EXPECT_EQ(prod[j], c[j] * s[j]);
    EXPECT_EQ(cc[j], std::conj(c[j]));
  }
  EXPECT_NEAR((c * cc).sup_norm(), 1.0, 1e-15);
}

TEST(Symbol, TranslateAndModulate) {
  const Grid g(16, 1.0);
  std::vector<Complex> v(16);
  for (std::size_t j = 0; j < 16; ++j) v[j] = Complex(j, -1.0 * j * j);
  const Symbol m(g, v);
  const Symbol t = translate_symbol(m, 3);
  const Symbol x = modulate_symbol(m, 5);
  for (std::size_t j = 0; j < 16; ++j) {
    EXPECT_EQ(t[j], v[(j + 13) % 16]);
    const double a = 2.0 * std::numbers::pi * 5.0 * static_cast<double>(j) / 16.0;
    EXPECT_LT(std::abs(x[j] - Complex(std::cos(a), std::sin(a)) * v[j]), 1e-12);
  }
}

TEST(Symbol, SgnConvention) {
  const Grid g(16, 1.0);
  const Symbol s = sym_sgn(g);
  EXPECT_EQ(s[0], Complex(0.0));
  EXPECT_EQ(s[8], Complex(0.0));
  EXPECT_EQ(s[3], Complex(1.0));
  EXPECT_EQ(s[13], Complex(-1.0));
}

TEST(Symbol, ChirpWarningOutsideRange) {
  const Grid g(16, 0.5);
  EXPECT_FALSE(sym_chirp(2.0, g).warning().has_value());
  EXPECT_FALSE(sym_chirp(0.0, g).warning().has_value());
  EXPECT_TRUE(sym_chirp(2.5, g).warning().has_value());
  EXPECT_NEAR(sym_chirp(3.0, g).sup_norm(), 1.0, 1e-15);
}

TEST(Intervals, Validation) {
  expect_code(ErrorCode::InvalidArgument, [] { IntervalCollection({{1.0, 0.5}}); });
  expect_code(ErrorCode::InvalidArgument, [] { IntervalCollection({{0.0, 1.0}, {0.5, 2.0}}); });
  expect_code(ErrorCode::InvalidArgument, [] { IntervalCollection({{2.0, 3.0}, {0.0, 1.0}}); });
  expect_code(ErrorCode::LengthMismatch, [] { IntervalCollection({{0.0, 1.0}}, {1, 2}); });
  EXPECT_NO_THROW(IntervalCollection({{0.0, 1.0}, {1.0, 2.0}}));
}

TEST(Intervals, BinMembershipHalfOpen) {
  const Grid g(64, 0.125);  // 8 bins per unit
  const auto bins = bins_in_interval(g, {0.0, 1.0});
  ASSERT_EQ(bins.size(), 8u);
  EXPECT_EQ(bins.front(), 0u);
  EXPECT_EQ(bins.back(), 7u);
  EXPECT_TRUE(bin_in_interval(g, 8, {1.0, 2.0}));
  EXPECT_FALSE(bin_in_interval(g, 8, {0.0, 1.0}));
  const auto neg = bins_in_interval(g, {-1.0, 0.0});
  ASSERT_EQ(neg.size(), 8u);
  EXPECT_EQ(g.signed_bin(neg.front()), -8);
  // Clipped to the band.
  EXPECT_EQ(bins_in_interval(g, {3.5, 10.0}).size(), 4u);
}

TEST(Intervals, PartitionCoversEveryBinOnce) {
  const Grid g(64, 0.125);
  const auto omega = IntervalCollection({{-4.0, -1.0}, {-1.0, 0.5}, {0.5, 4.0}});
  std::vector<int> hits(64, 0);
  for (const auto& w : omega.intervals()) {
    for (std::size_t j : bins_in_interval(g, w)) ++hits[j];
  }
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(Intervals, IndicatorAndBlockSum) {
  const Grid g(64, 0.125);
  const Symbol ind = sym_indicator({0.0, 1.0}, g);
  int count = 0;
  for (std::size_t j = 0; j < 64; ++j) count += ind[j] == Complex(1.0);
  EXPECT_EQ(count, 8);
  const auto omega = collection_unit(3, g);
  const std::vector<Complex> a{1.0, -1.0, Complex(0.0, 1.0)};
  const Symbol s = sym_block_sum(omega, a, g);
  EXPECT_EQ(s[g.bin_of_signed(4)], Complex(1.0));
  EXPECT_EQ(s[g.bin_of_signed(12)], Complex(-1.0));
  EXPECT_EQ(s[g.bin_of_signed(20)], Complex(0.0, 1.0));
  EXPECT_EQ(s[g.bin_of_signed(-3)], Complex(0.0));
  expect_code(ErrorCode::LengthMismatch, [&] { sym_block_sum(omega, std::vector<Complex>{1.0}, g); });
}

TEST(Intervals, AliasingGuard) {
  const Grid g(64, 0.125);
  const auto thin = IntervalCollection({{0.0, 0.125}});
  expect_code(ErrorCode::AliasedCollection, [&] { require_bin_resolvable(thin, g); });
  EXPECT_NO_THROW(require_bin_resolvable(IntervalCollection({{0.0, 0.25}}), g));
}

TEST(Collections, UnitAndDyadic) {
  const Grid g(64, 0.125);
  const auto u = collection_unit(4, g);
  ASSERT_EQ(u.size(), 4u);
  EXPECT_EQ(u[3], (Interval{3.0, 4.0}));
  expect_code(ErrorCode::BandOverflow, [&] { collection_unit(5, g); });

  const auto d = collection_dyadic(2, g, 1.0);
  ASSERT_EQ(d.size(), 4u);
  EXPECT_EQ(d[0], (Interval{-4.0, -2.0}));
  EXPECT_EQ(d[1], (Interval{-2.0, -1.0}));
  EXPECT_EQ(d[2], (Interval{1.0, 2.0}));
  EXPECT_EQ(d[3], (Interval{2.0, 4.0}));
  EXPECT_EQ(d.labels(), (std::vector<std::int64_t>{-2, -1, 1, 2}));
  expect_code(ErrorCode::BandOverflow, [&] { collection_dyadic(3, g, 1.0); });
}

TEST(Collections, Ex1Structure) {
  const auto w = collection_ex1(3);
  ASSERT_EQ(w.size(), 2u + 4u + 8u);
  // Level n: 2^n pieces of length 2^{-2n} packed from the left of [2^{-n}, 2^{-n+1}).
  std::size_t i = 0;
  for (int n = 3; n >= 1; --n) {
    const double lo = std::ldexp(1.0, -n);
    const double len = std::ldexp(1.0, -2 * n);
    for (int k = 0; k < (1 << n); ++k, ++i) {
      EXPECT_DOUBLE_EQ(w[i].left, lo + k * len);
      EXPECT_DOUBLE_EQ(w[i].right, lo + (k + 1) * len);
      EXPECT_EQ(w.labels()[i], n);
    }
  }
  expect_code(ErrorCode::InvalidArgument, [] { collection_ex1(0); });
  expect_code(ErrorCode::DepthOverflow, [] { collection_ex1(4, Grid(512, 0.25)); });
  EXPECT_NO_THROW(collection_ex1(3, Grid(512, 0.25)));
}

TEST(Collections, WithinCells) {
  const Grid g(64, 0.125);
  const auto w = collection_within_cells(CellRule::fixed(0.25, 0.75), g, 0, 3);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[2], (Interval{2.25, 2.75}));
  const auto all = collection_within_cells(CellRule::middle_third(), Grid(96, 0.125));
  EXPECT_EQ(all.size(), 8u);
  expect_code(ErrorCode::InvalidArgument, [] { CellRule::fixed(0.5, 1.5); });
}

TEST(Collections, RandomIsDeterministicAndValid) {
  const Grid g(512, 1.0 / 16.0);
  const auto a = collection_random(16, g, 0.0, 4.0, 4, 99);
  const auto b = collection_random(16, g, 0.0, 4.0, 4, 99);
  const auto c = collection_random(16, g, 0.0, 4.0, 4, 100);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  ASSERT_EQ(a.size(), 16u);
  for (const auto& w : a.intervals()) {
    EXPECT_GE(w.left, 0.0);
    EXPECT_LE(w.right, 4.0);
    EXPECT_GE(bins_in_interval(g, w).size(), 4u);
  }
  expect_code(ErrorCode::BandOverflow, [&] { collection_random(40, g, 0.0, 4.0, 4, 1); });
}

TEST(Partition, SumsToOne) {
  for (auto profile : {BumpProfile::standard, BumpProfile::flat_center}) {
    for (double step : {1.0, 0.5}) {
      const Grid g(128, 1.0 / 16.0);
      const auto part = partition_bumps(g, profile, step);
      EXPECT_LT(part.partition_error(), 1e-12);
      for (const auto& blk : part.blocks()) {
        for (double w : blk.weights) {
          EXPECT_GT(w, 0.0);
          EXPECT_LE(w, 1.0 + 1e-15);
        }
      }
    }
  }
}

TEST(Partition, ProfilesAndSupport) {
  EXPECT_EQ(bump_profile_value(BumpProfile::standard, 1.0), 0.0);
  EXPECT_EQ(bump_profile_value(BumpProfile::standard, -1.2), 0.0);
  EXPECT_NEAR(bump_profile_value(BumpProfile::flat_center, 0.2), 1.0, 1e-15);
  EXPECT_EQ(bump_profile_value(BumpProfile::flat_center, 0.8), 0.0);
  const Grid g(64, 0.125);
  const auto part = partition_bumps(g);
  for (const auto& blk : part.blocks()) {
    for (std::size_t j : blk.bins) {
      EXPECT_LT(std::abs(g.frequency(j) - static_cast<double>(blk.k)), 1.0);
    }
  }
  expect_code(ErrorCode::BandTooNarrow, [] { partition_bumps(Grid(16, 0.5)); });
}
