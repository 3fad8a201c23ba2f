// modspace: norms, experiment presets and test signals from the command line.
//
// Exit codes: 0 success, 1 assertion failure, 2 I/O, 3 parameters.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "modspace/experiments.hpp"
#include "modspace/gabor.hpp"
#include "modspace/io.hpp"
#include "modspace/modnorm.hpp"
#include "modspace/probe.hpp"
#include "modspace/signals.hpp"

namespace {

using namespace modspace;

constexpr int kExitAssertion = 1;
constexpr int kExitIo = 2;
constexpr int kExitParams = 3;

Exponent parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return Exponent::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    raise(ErrorCode::InvalidArgument, "exponent must be a number >= 1 or 'inf'");
  }
  require(used == text.size(), ErrorCode::InvalidArgument, "exponent must be a number >= 1 or 'inf'");
  return v;
}

NormMode parse_mode(const std::string& text) {
  if (text == "discrete") return NormMode::discrete;
  if (text == "continuum") return NormMode::continuum;
  raise(ErrorCode::InvalidArgument, "mode must be 'discrete' or 'continuum'");
}

NormDefinition parse_definition(const std::string& text) {
  const auto d = norm_definition_from_string(text);
  require(d.has_value(), ErrorCode::InvalidArgument, "definition must be stft, blocks or gabor");
  return *d;
}

std::string exponent_text(Exponent e) { return e.is_infinite() ? "inf" : fmt::format("{:g}", e.value()); }

struct NormArgs {
  std::string signal_path;
  std::string definition = "stft";
  std::string p = "2";
  std::string q = "2";
  std::string mode = "discrete";
};

int cmd_norm(const NormArgs& a) {
  const Exponent p = parse_exponent(a.p);
  const Exponent q = parse_exponent(a.q);
  const NormMode mode = parse_mode(a.mode);
  const NormDefinition def = parse_definition(a.definition);
  const Signal f = signal_from_json(read_file(a.signal_path));
  const Grid& grid = f.grid();
  const MixedNormParams params{p, q, mode};
  double value = 0.0;
  std::string context;
  switch (def) {
    case NormDefinition::stft: {
      const Window g = gaussian_window(grid);
      value = mod_norm_stft(f, g, params);
      context = fmt::format("window=gaussian(width={:g})", grid.bins_per_unit() / 8.0);
      break;
    }
    case NormDefinition::blocks: {
      const BlockPartition part = partition_bumps(grid);
      value = mod_norm_blocks(f, part, params);
      context = fmt::format("partition=standard(step=1,blocks={})", part.size());
      break;
    }
    case NormDefinition::gabor: {
      const GaborSystem sys = *NormSpec::gabor_lattice(params).bind(grid).gabor;
      value = mod_norm_gabor(f, sys, params);
      context = fmt::format("lattice=gaussian(a={},b={})", sys.time_step(), sys.freq_step());
      break;
    }
  }
  fmt::print("{:.12g}\n", value);
  fmt::print("# definition={} {} p={} q={} mode={} grid=(n={},dx={}) version={}\n", to_string(def), context,
             exponent_text(p), exponent_text(q), a.mode, grid.size(), format_double(grid.dx()), kToolkitVersion);
  return 0;
}

struct ExperimentArgs {
  std::string preset;
  std::optional<std::size_t> grid_n;
  std::optional<double> grid_dx;
  std::optional<std::string> p;
  std::optional<std::string> q;
  std::optional<std::string> mode;
  std::optional<std::string> definition;
  std::uint64_t seed = 0;
  std::optional<std::size_t> budget;
  std::string out = ".";
};

int cmd_experiment(const ExperimentArgs& a) {
  ExperimentConfig cfg;
  cfg.name = a.preset;
  cfg.grid_n = a.grid_n;
  cfg.grid_dx = a.grid_dx;
  if (a.p) cfg.p = parse_exponent(*a.p);
  if (a.q) cfg.q = parse_exponent(*a.q);
  if (a.mode) cfg.mode = parse_mode(*a.mode);
  if (a.definition) cfg.definition = parse_definition(*a.definition);
  cfg.seed = a.seed;
  cfg.budget = a.budget;
  require(preset_exists(cfg.name), ErrorCode::InvalidArgument, "unknown preset");
  resolve_config(cfg);

  const ExperimentResult res = run_experiment(cfg);
  std::error_code ec;
  std::filesystem::create_directories(a.out, ec);
  require(!ec, ErrorCode::Io, ("cannot create " + a.out).c_str());
  const std::filesystem::path dir(a.out);
  for (const auto& art : res.artifacts) write_file((dir / art.filename).string(), art.contents);
  write_file((dir / (res.config.name + ".manifest.json")).string(), res.manifest);

  for (const auto& s : res.assertions) {
    fmt::print("{} {}: {} (threshold {})\n", !s.enforced ? "REPORT" : (s.passed ? "PASS" : "FAIL"), s.name,
               fmt::format("{:.12g}", s.value), fmt::format("{:.12g}", s.threshold));
  }
  fmt::print("# preset={} config_hash={:016x} version={}\n", res.config.name, config_hash(res.config), kToolkitVersion);
  return res.passed() ? 0 : kExitAssertion;
}

struct SignalArgs {
  std::string generator;
  std::size_t grid_n = 64;
  double grid_dx = 0.125;
  std::optional<double> center;
  std::optional<double> width;
  std::ptrdiff_t k = 0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> band;
  std::optional<std::string> out;
};

int cmd_signal(const SignalArgs& a) {
  require(a.grid_n >= 2 && a.grid_dx > 0.0 && std::isfinite(a.grid_dx), ErrorCode::InvalidArgument,
          "grid needs n >= 2 and dx > 0");
  const Grid grid(a.grid_n, a.grid_dx);
  std::optional<Signal> f;
  if (a.generator == "gaussian") {
    f = make_gaussian(grid, a.center.value_or(0.0), a.width, a.k);
  } else if (a.generator == "character") {
    f = make_character(grid, a.k);
  } else if (a.generator == "bump") {
    f = make_bump(grid, a.center.value_or(0.0), a.width);
  } else if (a.generator == "noise") {
    f = make_noise(grid, a.seed, a.band);
  } else {
    raise(ErrorCode::InvalidArgument, "generator must be gaussian, character, bump or noise");
  }
  const std::string text = signal_to_json(*f);
  if (a.out) {
    write_file(*a.out, text);
  } else {
    std::fwrite(text.data(), 1, text.size(), stdout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modulation-space norms, Gabor frames and multiplier experiments on Z_N"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(modspace::kToolkitVersion));

  NormArgs na;
  auto* norm = app.add_subcommand("norm", "Modulation norm of a signal file");
  norm->add_option("signal", na.signal_path, "Signal JSON file")->required();
  norm->add_option("--definition", na.definition, "stft, blocks or gabor")->capture_default_str();
  norm->add_option("--p", na.p, "Inner exponent (number >= 1 or inf)")->capture_default_str();
  norm->add_option("--q", na.q, "Outer exponent (number >= 1 or inf)")->capture_default_str();
  norm->add_option("--mode", na.mode, "discrete or continuum")->capture_default_str();

  ExperimentArgs ea;
  auto* exp = app.add_subcommand("experiment", "Run a named preset and write CSV plus manifest");
  exp->add_option("--preset", ea.preset, "Preset name")->required();
  exp->add_option("--seed", ea.seed, "Seed for every random choice")->required();
  exp->add_option("--grid-n", ea.grid_n, "Grid size N");
  exp->add_option("--grid-dx", ea.grid_dx, "Grid spacing");
  exp->add_option("--p", ea.p, "Inner exponent");
  exp->add_option("--q", ea.q, "Outer exponent");
  exp->add_option("--mode", ea.mode, "discrete or continuum");
  exp->add_option("--definition", ea.definition, "stft, blocks or gabor");
  exp->add_option("--budget", ea.budget, "Probe budget or sample count");
  exp->add_option("--out", ea.out, "Output directory")->capture_default_str();

  SignalArgs sa;
  auto* sig = app.add_subcommand("signal", "Write a generated signal as JSON");
  sig->add_option("generator", sa.generator, "gaussian, character, bump or noise")->required();
  sig->add_option("--grid-n", sa.grid_n, "Grid size N")->capture_default_str();
  sig->add_option("--grid-dx", sa.grid_dx, "Grid spacing")->capture_default_str();
  sig->add_option("--center", sa.center, "Physical center");
  sig->add_option("--width", sa.width, "Gaussian width or bump radius");
  sig->add_option("--k", sa.k, "Frequency bin");
  sig->add_option("--seed", sa.seed, "Noise seed");
  sig->add_option("--band", sa.band, "Noise band in bins");
  sig->add_option("--out", sa.out, "Output file (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParams;
  }

  try {
    if (norm->parsed()) return cmd_norm(na);
    if (exp->parsed()) return cmd_experiment(ea);
    return cmd_signal(sa);
  } catch (const modspace::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == modspace::ErrorCode::Io ? kExitIo : kExitParams;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
