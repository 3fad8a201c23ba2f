#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "helpers.hpp"
#include "modspace/engine.hpp"
#include "modspace/probe.hpp"
#include "oracles.hpp"

using namespace modspace;

namespace {

// Dense matrix of T_m acting on column vectors.
Eigen::MatrixXcd multiplier_matrix(const Symbol& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const auto col = apply_multiplier(m, Signal::delta(m.grid(), static_cast<std::size_t>(c)));
    for (Eigen::Index r = 0; r < n; ++r) a(r, c) = col[static_cast<std::size_t>(r)];
  }
  return a;
}

double vec_lp(const Eigen::VectorXcd& v, double p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v(i)), p);
  return std::pow(s, 1.0 / p);
}

Eigen::VectorXcd duality_map(const Eigen::VectorXcd& v, double p) {
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    out(i) = a == 0.0 ? Complex(0.0) : v(i) * std::pow(a, p - 2.0);
  }
  return out;
}

// Boyd's fixed-point iteration for ||A||_{p->p}, best over several starts.
double boyd_lower_bound(const Eigen::MatrixXcd& a, double p) {
  const double pd = p / (p - 1.0);
  double best = 0.0;
  const Grid g(static_cast<std::size_t>(a.cols()), 1.0);
  for (std::uint64_t s = 0; s < 8; ++s) {
    const Signal start = oracle::random_signal(g, 900 + s);
    Eigen::VectorXcd x(a.cols());
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = start[static_cast<std::size_t>(i)];
    x /= vec_lp(x, p);
    for (int it = 0; it < 500; ++it) {
      Eigen::VectorXcd z = a.adjoint() * duality_map(a * x, p);
      x = duality_map(z, pd);
      x /= vec_lp(x, p);
    }
    best = std::max(best, vec_lp(a * x, p));
  }
  return best;
}

double max_abs_row_sum(const Eigen::MatrixXcd& a) { return a.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace

TEST(Probe, IdentityAndScaledIdentity) {
  const Grid g(64, 0.125);
  const auto lp = NormSpec::lp(3.0);
  EXPECT_NEAR(opnorm_probe(identity_operator(g), lp, lp, 8, 1).value, 1.0, 1e-14);
  EXPECT_NEAR(opnorm_exact_l2(identity_operator(g)), 1.0, 1e-8);
  const auto two = multiplier_operator(Symbol::constant(g, 2.0));
  EXPECT_NEAR(opnorm_probe(two, lp, lp, 8, 1).value, 2.0, 1e-13);
  const auto blocks = NormSpec::blocks({4.0, 1.0, NormMode::discrete});
  EXPECT_NEAR(opnorm_probe(two, blocks, blocks, 8, 1).value, 2.0, 1e-13);
}

TEST(Probe, ExactL2IsSupOfSymbol) {
  const Grid g(128, 0.125);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Symbol m(g, oracle::values(oracle::random_signal(g, 60 + s)));
    EXPECT_NEAR(opnorm_exact_l2(multiplier_operator(m)), m.sup_norm(), 1e-8 * m.sup_norm());
  }
  const auto proj = multiplier_operator(sym_indicator({0.0, 1.0}, g));
  EXPECT_NEAR(opnorm_exact_l2(proj), 1.0, 1e-8);
  const auto sq = square_function_operator(collection_unit(3, g), g);
  EXPECT_NEAR(opnorm_exact_l2(sq), 1.0, 1e-8);
}

TEST(Probe, L2ProbesNeverExceedExactNorm) {
  const Grid g(64, 0.125);
  const Symbol m(g, oracle::values(oracle::random_signal(g, 70)));
  const auto op = multiplier_operator(m);
  const auto l2 = NormSpec::lp(2.0);
  const double exact = opnorm_exact_l2(op);
  const auto est = opnorm_probe(op, l2, l2, 16, 3);
  EXPECT_LE(est.value, exact + 1e-8);
  EXPECT_GT(est.value, 0.5 * exact);
}

TEST(Probe, WitnessReproducesValue) {
  const Grid g(128, 0.125);
  const auto op = multiplier_operator(sym_sgn(g));
  const auto lp = NormSpec::lp(4.0);
  const auto est = opnorm_probe(op, lp, lp, 16, 5);
  ASSERT_TRUE(est.witness_signal.has_value());
  EXPECT_NEAR(probe_ratio(op, lp.bind(g), lp.bind(g), *est.witness_signal), est.value, 1e-12 * est.value);
  EXPECT_FALSE(est.witness.empty());
}

TEST(Probe, DeterministicAndMonotoneInBudget) {
  const Grid g(128, 0.125);
  const auto op = multiplier_operator(sym_chirp(2.0, g));
  const auto in = NormSpec::blocks({4.0, 1.0, NormMode::discrete});
  ProbeOptions no_ascent;
  no_ascent.ascent = false;
  double prev = 0.0;
  for (std::size_t budget : {2, 4, 8, 16}) {
    const auto a = opnorm_probe(op, in, in, budget, 9, no_ascent);
    const auto b = opnorm_probe(op, in, in, budget, 9, no_ascent);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_GE(a.value, prev);
    prev = a.value;
  }
  const auto full = opnorm_probe(op, in, in, 16, 9);
  EXPECT_GE(full.value, prev);
  EXPECT_EQ(full.value, opnorm_probe(op, in, in, 16, 9).value);
}

TEST(Probe, HilbertTransformOnL4) {
  const Grid g(256, 0.125);
  const auto lp = NormSpec::lp(4.0);
  EXPECT_GE(opnorm_probe(multiplier_operator(sym_sgn(g)), lp, lp, 16, 1).value, 1.2);
}

TEST(Probe, AgreesWithDenseMatrixBounds) {
  const Grid g(32, 0.25);
  const Symbol m = sym_sgn(g);
  const auto a = multiplier_matrix(m);
  const double boyd = boyd_lower_bound(a, 4.0);
  // Riesz-Thorin between 2 and inf for the upper end.
  const double upper = std::sqrt(m.sup_norm() * max_abs_row_sum(a));
  const auto lp = NormSpec::lp(4.0);
  const double est = opnorm_probe(multiplier_operator(m), lp, lp, 32, 1).value;
  EXPECT_LE(est, upper + 1e-12);
  EXPECT_LE(boyd, upper + 1e-12);
  EXPECT_GE(est, 0.9 * boyd) << "probe " << est << " boyd " << boyd;
}

TEST(Probe, GrowthAtP2IsFlat) {
  const auto l2 = NormSpec::lp(2.0);
  GrowthOptions opt;
  opt.grid = Grid(256, 1.0 / 16.0);
  const auto units = growth_experiment(GrowthFamily::unit_blocks_random_signs, {2, 4}, l2, l2, 1, opt);
  for (const auto& e : units.estimates) {
    EXPECT_LE(e.value, 1.0 + 1e-10);
    EXPECT_GT(e.value, 0.99);
  }
  opt.grid = Grid(1024, 0.5);
  const auto dyadic =
      growth_experiment(GrowthFamily::dyadic_equivalence, {2, 3}, l2, NormSpec::lp_vector(2.0), 1, opt);
  for (const auto& e : dyadic.estimates) EXPECT_NEAR(e.value, 1.0, 1e-8);
}

TEST(Probe, GrowthValidation) {
  const auto l2 = NormSpec::lp(2.0);
  expect_code(ErrorCode::InvalidArgument,
              [&] { growth_experiment(GrowthFamily::unit_blocks_random_signs, {4, 2}, l2, l2, 1); });
  expect_code(ErrorCode::EmptyList, [&] { growth_experiment(GrowthFamily::unit_blocks_random_signs, {}, l2, l2, 1); });
  expect_code(ErrorCode::InvalidArgument, [&] { opnorm_probe(identity_operator(Grid(8, 1.0)), l2, l2, 0, 1); });
  EXPECT_EQ(growth_family_from_string("ex1_depth"), GrowthFamily::ex1_depth);
  EXPECT_FALSE(growth_family_from_string("nope").has_value());
}

TEST(Probe, NormSpecBindAndDescribe) {
  const Grid g(64, 0.125);
  const auto spec = NormSpec::blocks({4.0, 1.0, NormMode::discrete});
  expect_code(ErrorCode::InvalidArgument, [&] { spec.validate(); });
  const auto bound = spec.bind(g);
  EXPECT_NO_THROW(bound.validate());
  EXPECT_EQ(bound.describe(), "Mpq_blocks(p=4,q=1,discrete)");
  expect_code(ErrorCode::GridMismatch, [&] { bound.bind(Grid(32, 0.125)); });
  const std::vector<Signal> two{Signal::ones(g), Signal::ones(g)};
  expect_code(ErrorCode::LengthMismatch, [&] { bound.evaluate(two); });
}
