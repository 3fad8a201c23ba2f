#pragma once

// Named experiment presets.  Each preset resolves to a concrete config, runs
// deterministically from its seed and returns CSV artifacts together with a
// JSON manifest recording the config hash, the toolkit version and every
// assertion.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modspace/core.hpp"

namespace modspace {

inline constexpr const char* kToolkitVersion = "0.3.0";

enum class NormDefinition { stft, blocks, gabor };

const char* to_string(NormDefinition d);
std::optional<NormDefinition> norm_definition_from_string(std::string_view name);

// Unset fields take the preset default.
struct ExperimentConfig {
  std::string name;
  std::optional<std::size_t> grid_n;
  std::optional<double> grid_dx;
  std::optional<Exponent> p;
  std::optional<Exponent> q;
  std::optional<NormMode> mode;
  std::optional<NormDefinition> definition;
  std::uint64_t seed = 0;
  std::optional<std::size_t> budget;
};

// Config with every field the preset reads filled in.
struct ResolvedConfig {
  std::string name;
  std::size_t grid_n = 0;
  double grid_dx = 0.0;
  Exponent p{2.0};
  Exponent q{2.0};
  NormMode mode = NormMode::discrete;
  NormDefinition definition = NormDefinition::blocks;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  // Bit set of the fields above that the preset reads; only these enter the
  // hash and the manifest.
  unsigned uses = 0;
};

struct AssertionResult {
  std::string name;
  bool enforced = true;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
};

struct Artifact {
  std::string filename;
  std::string contents;
};

struct ExperimentResult {
  ResolvedConfig config;
  std::vector<Artifact> artifacts;
  std::vector<AssertionResult> assertions;
  std::string manifest;

  // No enforced assertion failed.
  bool passed() const;
};

const std::vector<std::string>& preset_names();
bool preset_exists(std::string_view name);

// InvalidArgument for unknown presets or out-of-range fields.
ResolvedConfig resolve_config(const ExperimentConfig& cfg);

// FNV-1a over the canonical text of the used fields.
std::uint64_t config_hash(const ResolvedConfig& cfg);
std::string canonical_config(const ResolvedConfig& cfg);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::uint64_t fnv1a(std::string_view bytes);

}  // namespace modspace
