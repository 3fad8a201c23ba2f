#include <gtest/gtest.h>

#include "helpers.hpp"
#include "modspace/experiments.hpp"

using namespace modspace;

TEST(Experiments, RegistryAndUnknownPreset) {
  EXPECT_EQ(preset_names().size(), 12u);
  EXPECT_TRUE(preset_exists("chirp"));
  EXPECT_FALSE(preset_exists("nope"));
  expect_code(ErrorCode::InvalidArgument, [] { resolve_config({.name = "nope"}); });
  EXPECT_EQ(norm_definition_from_string("gabor"), NormDefinition::gabor);
  EXPECT_FALSE(norm_definition_from_string("other").has_value());
}

TEST(Experiments, HashTracksUsedFieldsOnly) {
  const ExperimentConfig base{.name = "stft-identities", .seed = 3};
  const auto h0 = config_hash(resolve_config(base));
  EXPECT_EQ(h0, config_hash(resolve_config(base)));

  auto seed = base;
  seed.seed = 4;
  EXPECT_NE(config_hash(resolve_config(seed)), h0);
  auto n = base;
  n.grid_n = 32;
  EXPECT_NE(config_hash(resolve_config(n)), h0);
  auto budget = base;
  budget.budget = 21;
  EXPECT_NE(config_hash(resolve_config(budget)), h0);
  // p, q and the definition are not read by this preset.
  auto p = base;
  p.p = Exponent(3.0);
  p.q = Exponent(1.0);
  p.definition = NormDefinition::gabor;
  EXPECT_EQ(config_hash(resolve_config(p)), h0);
  // Explicitly passing a default leaves the config unchanged.
  auto same = base;
  same.grid_n = 64;
  EXPECT_EQ(config_hash(resolve_config(same)), h0);

  const auto chirp = resolve_config({.name = "chirp", .seed = 3});
  auto chirp_p = ExperimentConfig{.name = "chirp", .seed = 3};
  chirp_p.p = Exponent(3.0);
  EXPECT_NE(config_hash(resolve_config(chirp_p)), config_hash(chirp));
}

TEST(Experiments, StftIdentitiesPass) {
  const auto r = run_experiment({.name = "stft-identities", .seed = 7});
  EXPECT_TRUE(r.passed());
  ASSERT_FALSE(r.artifacts.empty());
  EXPECT_NE(r.manifest.find("\"config_hash\""), std::string::npos);
  EXPECT_NE(r.manifest.find(kToolkitVersion), std::string::npos);
  for (const auto& a : r.assertions) EXPECT_TRUE(a.enforced);
}

TEST(Experiments, QuickPresetsAreDeterministic) {
  for (const char* name : {"stft-identities", "embedding-monotonicity", "khintchine"}) {
    ExperimentConfig cfg{.name = name, .seed = 11};
    cfg.budget = 6;
    const auto a = run_experiment(cfg);
    const auto b = run_experiment(cfg);
    EXPECT_EQ(a.manifest, b.manifest) << name;
    ASSERT_EQ(a.artifacts.size(), b.artifacts.size());
    for (std::size_t i = 0; i < a.artifacts.size(); ++i) EXPECT_EQ(a.artifacts[i].contents, b.artifacts[i].contents);
    EXPECT_TRUE(a.passed()) << name;
  }
}

TEST(Experiments, DyadicAtP2OnSmallGrid) {
  ExperimentConfig cfg{.name = "dyadic-lp", .seed = 2};
  cfg.grid_n = 1024;
  cfg.p = Exponent(2.0);
  cfg.budget = 8;
  const auto r = run_experiment(cfg);
  EXPECT_TRUE(r.passed());
  bool saw_identity = false;
  for (const auto& a : r.assertions) {
    if (a.enforced && a.threshold == 1e-8) saw_identity = true;
  }
  EXPECT_TRUE(saw_identity);
  // Off the calibrated grid the trend check is reported but not enforced.
  for (const auto& a : r.assertions) {
    if (a.threshold != 1e-8) EXPECT_FALSE(a.enforced) << a.name;
  }
}
