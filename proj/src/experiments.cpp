#include "modspace/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>
#include <json.hpp>

#include "modspace/constants.hpp"
#include "modspace/detail/rng.hpp"
#include "modspace/engine.hpp"
#include "modspace/io.hpp"
#include "modspace/modnorm.hpp"
#include "modspace/probe.hpp"
#include "modspace/signals.hpp"
#include "modspace/stft.hpp"

namespace modspace {

namespace c = constants;

namespace {

enum Field : unsigned {
  kN = 1U << 0,
  kDx = 1U << 1,
  kP = 1U << 2,
  kQ = 1U << 3,
  kMode = 1U << 4,
  kDefinition = 1U << 5,
  kSeed = 1U << 6,
  kBudget = 1U << 7,
};

constexpr unsigned kAll = kN | kDx | kP | kQ | kMode | kDefinition | kSeed | kBudget;

constexpr std::uint64_t kTupleStream = 0x7475706c65ULL;
constexpr std::uint64_t kSignalStream = 0x7369676e616cULL;
constexpr std::uint64_t kCoeffStream = 0x636f656666ULL;

std::string exponent_text(Exponent e) { return e.is_infinite() ? "inf" : format_double(e.value()); }

const char* mode_text(NormMode m) { return m == NormMode::discrete ? "discrete" : "continuum"; }

ResolvedConfig make_defaults(std::size_t n, double dx, double p, double q, NormMode mode, NormDefinition def,
                             std::size_t budget, unsigned uses) {
  ResolvedConfig r;
  r.grid_n = n;
  r.grid_dx = dx;
  r.p = p;
  r.q = q;
  r.mode = mode;
  r.definition = def;
  r.budget = budget;
  r.uses = uses;
  return r;
}

void check(ExperimentResult& res, std::string name, bool enforced, bool passed, double value, double threshold) {
  res.assertions.push_back({std::move(name), enforced, passed, value, threshold});
}

Grid grid_of(const ResolvedConfig& cfg) { return {cfg.grid_n, cfg.grid_dx}; }

MixedNormParams params_of(const ResolvedConfig& cfg) { return {cfg.p, cfg.q, cfg.mode}; }

NormSpec scalar_spec(const ResolvedConfig& cfg) {
  switch (cfg.definition) {
    case NormDefinition::stft: return NormSpec::stft(params_of(cfg));
    case NormDefinition::blocks: return NormSpec::blocks(params_of(cfg));
    case NormDefinition::gabor: return NormSpec::gabor_lattice(params_of(cfg));
  }
  raise(ErrorCode::InvalidArgument, "unknown norm definition");
}

NormSpec vector_spec(const ResolvedConfig& cfg) {
  switch (cfg.definition) {
    case NormDefinition::stft: return NormSpec::vector_stft(params_of(cfg));
    case NormDefinition::blocks: return NormSpec::vector_blocks(params_of(cfg));
    case NormDefinition::gabor: break;
  }
  raise(ErrorCode::InvalidArgument, "the gabor definition has no l2-valued version");
}

double curve_min(const GrowthCurve& curve) {
  double m = curve.estimates.front().value;
  for (const auto& e : curve.estimates) m = std::min(m, e.value);
  return m;
}

double curve_max(const GrowthCurve& curve) {
  double m = curve.estimates.front().value;
  for (const auto& e : curve.estimates) m = std::max(m, e.value);
  return m;
}

double variation(const GrowthCurve& curve) { return curve_max(curve) / curve_min(curve) - 1.0; }

double growth(const GrowthCurve& curve) { return curve.estimates.back().value / curve.estimates.front().value; }

GrowthOptions growth_options(const ResolvedConfig& cfg, bool with_grid) {
  GrowthOptions o;
  o.budget = cfg.budget;
  if (with_grid) o.grid = grid_of(cfg);
  return o;
}

Signal band_limited(const Grid& grid, std::uint64_t seed, std::uint64_t t) {
  return make_noise(grid, detail::mix_seed(seed, kSignalStream), t, grid.size() / 4);
}

// ---- presets ------------------------------------------------------------------

void run_stft_identities(const ResolvedConfig& cfg, ExperimentResult& res, bool) {
  const Grid grid = grid_of(cfg);
  const double n = static_cast<double>(grid.size());
  const std::uint64_t s = detail::mix_seed(cfg.seed, kTupleStream);
  std::string csv = "tuple,form_deviation,orthogonality_deviation,inversion_residual\n";
  double worst_form = 0.0;
  double worst_orth = 0.0;
  double worst_inv = 0.0;
  for (std::size_t t = 0; t < cfg.budget; ++t) {
    const Signal f = make_noise(grid, s, 4 * t, std::nullopt);
    const Signal f2 = make_noise(grid, s, 4 * t + 1, std::nullopt);
    const Window g1(make_noise(grid, s, 4 * t + 2, std::nullopt));
    const Window g2(g1.signal() + make_noise(grid, s, 4 * t + 3, std::nullopt));
    const TFMatrix v = stft(f, g1);
    const double scale = v.max_abs();
    double form = 0.0;
    for (StftForm k : kAllStftForms) form = std::max(form, stft_alternate(f, g1, k).max_abs_diff(v) / scale);
    const double orth = check_orthogonality(f, f2, g1, g2) / (n * l2_norm(f) * l2_norm(f2) * g1.l2_norm() * g2.l2_norm());
    const double inv = l2_norm(stft_invert(v, g1, g2) - f) / l2_norm(f);
    worst_form = std::max(worst_form, form);
    worst_orth = std::max(worst_orth, orth);
    worst_inv = std::max(worst_inv, inv);
    csv += fmt::format("{},{},{},{}\n", t, format_double(form), format_double(orth), format_double(inv));
  }
  res.artifacts.push_back({cfg.name + ".csv", std::move(csv)});
  check(res, "stft_forms_agree", true, worst_form < c::kIdentityTolerance, worst_form, c::kIdentityTolerance);
  check(res, "orthogonality", true, worst_orth < c::kIdentityTolerance, worst_orth, c::kIdentityTolerance);
  check(res, "inversion", true, worst_inv < c::kIdentityTolerance, worst_inv, c::kIdentityTolerance);
}

// Brackets apply on their calibration grid whatever the signal count.
void run_norm_equivalence(const ResolvedConfig& cfg, ExperimentResult& res, bool) {
  const Grid grid = grid_of(cfg);
  const bool frozen =
      cfg.grid_n == c::kEquivalenceN && cfg.grid_dx == c::kEquivalenceDx && cfg.mode == NormMode::continuum;
  const Window g = gaussian_window(grid);
  const BlockPartition part = partition_bumps(grid);
  const GaborSystem sys = *NormSpec::gabor_lattice({}).bind(grid).gabor;
  std::vector<Signal> fs;
  for (std::size_t t = 0; t < cfg.budget; ++t) fs.push_back(band_limited(grid, cfg.seed, t));

  std::string csv = "p,q,pair,min_ratio,max_ratio,bracket_lo,bracket_hi\n";
  for (const auto& row : c::kEquivalence) {
    const Exponent p(row.p);
    const Exponent q = row.q == 0 ? Exponent::infinity() : Exponent(row.q);
    const MixedNormParams params{p, q, cfg.mode};
    struct Pair {
      const char* name;
      c::Bracket bracket;
      double lo = INFINITY;
      double hi = 0.0;
    };
    Pair pairs[] = {{"stft/blocks", row.stft_blocks}, {"stft/gabor", row.stft_gabor}, {"blocks/gabor", row.blocks_gabor}};
    for (const auto& f : fs) {
      const double s = mod_norm_stft(f, g, params);
      const double b = mod_norm_blocks(f, part, params);
      const double gb = mod_norm_gabor(f, sys, params);
      const double r[] = {s / b, s / gb, b / gb};
      for (int i = 0; i < 3; ++i) {
        pairs[i].lo = std::min(pairs[i].lo, r[i]);
        pairs[i].hi = std::max(pairs[i].hi, r[i]);
      }
    }
    for (const auto& pr : pairs) {
      csv += fmt::format("{},{},{},{},{},{},{}\n", exponent_text(p), exponent_text(q), pr.name, format_double(pr.lo),
                         format_double(pr.hi), format_double(pr.bracket.lo), format_double(pr.bracket.hi));
      const std::string label = fmt::format("p={},q={} {}", exponent_text(p), exponent_text(q), pr.name);
      const bool inside = pr.lo >= pr.bracket.lo && pr.hi <= pr.bracket.hi;
      check(res, label + " in bracket", frozen, inside, pr.hi, pr.bracket.hi);
      const double width = pr.bracket.hi / pr.bracket.lo;
      check(res, label + " bracket width", frozen, width <= c::kMaxBracketWidthRatio, width, c::kMaxBracketWidthRatio);
    }
  }
  res.artifacts.push_back({cfg.name + ".csv", std::move(csv)});
}

void run_embedding(const ResolvedConfig& cfg, ExperimentResult& res, bool) {
  const Grid grid = grid_of(cfg);
  const BlockPartition part = partition_bumps(grid);
  const Window g = gaussian_window(grid);
  const Exponent exps[] = {1.0, 1.5, 2.0, 3.0, 4.0, Exponent::infinity()};
  constexpr std::size_t m = std::size(exps);
  std::string csv = "signal,max_violation,l2_identity_deviation\n";
  double worst_violation = 0.0;
  double worst_identity = 0.0;
  for (std::size_t t = 0; t < cfg.budget; ++t) {
    const Signal f = band_limited(grid, cfg.seed, t);
    double norms[m][m];
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) norms[i][j] = mod_norm_blocks(f, part, {exps[i], exps[j], NormMode::discrete});
    }
    double violation = 0.0;
    for (std::size_t i1 = 0; i1 < m; ++i1) {
      for (std::size_t j1 = 0; j1 < m; ++j1) {
        for (std::size_t i2 = i1; i2 < m; ++i2) {
          for (std::size_t j2 = j1; j2 < m; ++j2) {
            violation = std::max(violation, (norms[i2][j2] - norms[i1][j1]) / norms[i1][j1]);
          }
        }
      }
    }
    const double v = mod_norm_stft(f, g, {2.0, 2.0, NormMode::continuum});
    const double l2 = lp_norm(f, 2.0, NormMode::continuum) * lp_norm(g.signal(), 2.0, NormMode::continuum) / grid.dx();
    const double identity = std::abs(v - l2) / l2;
    worst_violation = std::max(worst_violation, violation);
    worst_identity = std::max(worst_identity, identity);
    csv += fmt::format("{},{},{}\n", t, format_double(violation), format_double(identity));
  }
  res.artifacts.push_back({cfg.name + ".csv", std::move(csv)});
  check(res, "blocks nonincreasing in (p,q)", true, worst_violation <= c::kMonotonicitySlack, worst_violation,
        c::kMonotonicitySlack);
  check(res, "M22 equals L2", true, worst_identity <= c::kL2IdentityTolerance, worst_identity, c::kL2IdentityTolerance);
}

void run_chirp(const ResolvedConfig& cfg, ExperimentResult& res, bool frozen) {
  const NormSpec spec = scalar_spec(cfg);
  const auto curve = growth_experiment(GrowthFamily::chirp_bandwidth, {128, 256, 512}, spec, spec, cfg.seed,
                                       growth_options(cfg, false));
  res.artifacts.push_back({cfg.name + ".csv", growth_curve_to_csv(curve)});
  const double v = variation(curve);
  check(res, "chirp variation across N", frozen, v <= c::kChirpVariationMax, v, c::kChirpVariationMax);
}

void run_blocks(const ResolvedConfig& cfg, ExperimentResult& res, bool frozen) {
  const std::vector<std::size_t> sizes{4, 8, 16, 32};
  const auto opt = growth_options(cfg, true);
  const NormSpec spec = scalar_spec(cfg);
  const auto mod = growth_experiment(GrowthFamily::unit_blocks_random_signs, sizes, spec, spec, cfg.seed, opt);
  const NormSpec lp = NormSpec::lp(cfg.p, cfg.mode);
  const auto leb = growth_experiment(GrowthFamily::unit_blocks_random_signs, sizes, lp, lp, cfg.seed, opt);
  res.artifacts.push_back({cfg.name + ".csv", growth_curve_to_csv(mod)});
  res.artifacts.push_back({cfg.name + "-lp.csv", growth_curve_to_csv(leb)});
  const double v = variation(mod);
  check(res, "modulation-space variation across M", frozen, v <= c::kModBlocksVariationMax, v,
        c::kModBlocksVariationMax);
  const double gr = growth(leb);
  check(res, "Lebesgue growth M=4 to M=32", frozen, gr >= c::kLpBlocksGrowthMin, gr, c::kLpBlocksGrowthMin);
}

void run_amalgam(const ResolvedConfig& cfg, ExperimentResult& res, bool frozen) {
  const Grid grid = grid_of(cfg);
  const BlockPartition part = partition_bumps(grid);
  const std::uint64_t sign_seed = detail::mix_seed(cfg.seed, kCoeffStream);
  std::string csv = "symbol,amalgam_probe\n";
  auto row = [&](const std::string& name, double v) {
    csv += fmt::format("{},{}\n", name, format_double(v));
    return v;
  };
  row("constant", amalgam_multiplier_probe(Symbol::constant(grid, 1.0), cfg.p, part, cfg.budget, cfg.seed));
  const IntervalCollection cell({{0.0, 1.0}});
  const std::vector<Complex> one{1.0};
  row("unit_cell", amalgam_multiplier_probe(cell, one, cfg.p, part, cfg.budget, cfg.seed));
  row("sgn", amalgam_multiplier_probe(sym_sgn(grid), cfg.p, part, cfg.budget, cfg.seed));
  row("chirp2", amalgam_multiplier_probe(sym_chirp(2.0, grid), cfg.p, part, cfg.budget, cfg.seed));
  double depth_values[2];
  for (int i = 0; i < 2; ++i) {
    const int depth = 2 + 2 * i;
    const auto omega = collection_ex1(depth, grid);
    const auto a = RademacherDraw::generate(omega.size(), sign_seed, 0).coefficients();
    depth_values[i] = row(fmt::format("ex1_depth{}", depth),
                          amalgam_multiplier_probe(omega, a, cfg.p, part, cfg.budget, cfg.seed));
  }
  res.artifacts.push_back({cfg.name + ".csv", std::move(csv)});
  const double ratio = depth_values[1] / depth_values[0];
  check(res, "ex1 depth 4 exceeds depth 2", frozen, ratio > 1.0, ratio, 1.0);
}

void run_ex1(const ResolvedConfig& cfg, ExperimentResult& res, bool frozen) {
  const auto curve = growth_experiment(GrowthFamily::square_function_ex1, {2, 3, 4, 5}, NormSpec::lp(cfg.p, cfg.mode),
                                       NormSpec::lp_vector(cfg.p, cfg.mode), cfg.seed, growth_options(cfg, true));
  res.artifacts.push_back({cfg.name + ".csv", growth_curve_to_csv(curve)});
  const double gr = growth(curve);
  check(res, "square function growth depth 2 to 5", frozen, gr >= c::kEx1GrowthMin, gr, c::kEx1GrowthMin);
}

void run_dyadic(const ResolvedConfig& cfg, ExperimentResult& res, bool frozen) {
  const auto curve = growth_experiment(GrowthFamily::dyadic_equivalence, {2, 3, 4, 5}, NormSpec::lp(cfg.p, cfg.mode),
                                       NormSpec::lp_vector(cfg.p, cfg.mode), cfg.seed, growth_options(cfg, true));
  res.artifacts.push_back({cfg.name + ".csv", growth_curve_to_csv(curve)});
  const double v = variation(curve);
  check(res, "dyadic variation across depth", frozen, v <= c::kDyadicVariationMax, v, c::kDyadicVariationMax);
  if (cfg.p == Exponent(2.0)) {
    double dev = 0.0;
    for (const auto& e : curve.estimates) dev = std::max(dev, std::abs(e.value - 1.0));
    check(res, "p=2 ratio equals 1", true, dev <= c::kParsevalTolerance, dev, c::kParsevalTolerance);
  }
}

void run_rubio(const ResolvedConfig& cfg, ExperimentResult& res, bool frozen) {
  const auto curve = growth_experiment(GrowthFamily::rubio_random, {4, 8, 16}, scalar_spec(cfg), vector_spec(cfg),
                                       cfg.seed, growth_options(cfg, true));
  res.artifacts.push_back({cfg.name + ".csv", growth_curve_to_csv(curve)});
  const double v = variation(curve);
  check(res, "random-interval square function variation", frozen, v <= c::kRubioVariationMax, v,
        c::kRubioVariationMax);
}

void run_necessity(const ResolvedConfig& cfg, ExperimentResult& res, bool frozen) {
  const std::vector<std::size_t> sizes{2, 3, 4};
  const auto opt = growth_options(cfg, true);
  const NormSpec lp = NormSpec::lp(cfg.p, cfg.mode);
  const auto mult = growth_experiment(GrowthFamily::ex1_depth, sizes, lp, lp, cfg.seed, opt);
  const auto sq =
      growth_experiment(GrowthFamily::square_function_ex1, sizes, lp, NormSpec::lp_vector(cfg.p, cfg.mode), cfg.seed, opt);
  res.artifacts.push_back({cfg.name + ".csv", growth_curve_to_csv(mult)});
  res.artifacts.push_back({cfg.name + "-square.csv", growth_curve_to_csv(sq)});
  double worst = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) worst = std::max(worst, mult.estimates[i].value / sq.estimates[i].value);
  check(res, "block multiplier over square function", frozen, worst <= c::kNecessityRatioMax, worst,
        c::kNecessityRatioMax);
}

struct NamedSymbol {
  std::string name;
  Symbol sigma;
  std::optional<IntervalCollection> structure;
  std::vector<Complex> coeffs;
};

std::vector<NamedSymbol> multiplier_catalogue(const Grid& grid, std::uint64_t seed) {
  const std::uint64_t s = detail::mix_seed(seed, kCoeffStream);
  std::vector<NamedSymbol> out;
  const Interval cell{0.0, 1.0};
  out.push_back({"indicator", sym_indicator(cell, grid), IntervalCollection({cell}), {1.0}});
  out.push_back({"sgn", sym_sgn(grid), std::nullopt, {}});
  out.push_back({"chirp2", sym_chirp(2.0, grid), std::nullopt, {}});
  for (auto [name, omega] : {std::pair<const char*, IntervalCollection>{"unit_blocks", collection_unit(3, grid)},
                             {"ex1_blocks", collection_ex1(2, grid)},
                             {"dyadic_blocks", collection_dyadic(3, grid, 0.5)}}) {
    const auto draw = RademacherDraw::generate(omega.size(), s, 0);
    out.push_back({name, randomized_block_multiplier(omega, draw, grid), omega, draw.coefficients()});
  }
  return out;
}

void run_mz(const ResolvedConfig& cfg, ExperimentResult& res, bool frozen) {
  const Grid grid = grid_of(cfg);
  const NormSpec in = scalar_spec(cfg).bind(grid);
  const NormSpec vec = vector_spec(cfg).bind(grid);
  constexpr std::size_t kSequences = 20;
  constexpr std::size_t kLength = 8;
  std::string csv = "multiplier,opnorm_probe,max_ratio,mean_ratio\n";
  double worst = 0.0;
  for (const auto& m : multiplier_catalogue(grid, cfg.seed)) {
    const auto op = multiplier_operator(m.sigma, m.structure, m.coeffs);
    const double norm = opnorm_probe(op, in, in, cfg.budget, cfg.seed).value;
    double hi = 0.0;
    double sum = 0.0;
    for (std::size_t s = 0; s < kSequences; ++s) {
      std::vector<Signal> fs;
      for (std::size_t n = 0; n < kLength; ++n) fs.push_back(band_limited(grid, cfg.seed, 1000 + s * kLength + n));
      const double r = vec.evaluate(mz_extend(m.sigma, fs)) / (norm * vec.evaluate(fs));
      hi = std::max(hi, r);
      sum += r;
    }
    worst = std::max(worst, hi);
    csv += fmt::format("{},{},{},{}\n", m.name, format_double(norm), format_double(hi),
                       format_double(sum / static_cast<double>(kSequences)));
  }
  res.artifacts.push_back({cfg.name + ".csv", std::move(csv)});
  check(res, "vector extension ratio", frozen, worst <= c::kMzConstant, worst, c::kMzConstant);
}

void run_khintchine(const ResolvedConfig& cfg, ExperimentResult& res, bool) {
  constexpr std::size_t kTerms = 10;
  std::string csv = "trial,p,exact,sampled,relative_difference\n";
  double worst = 0.0;
  for (std::size_t t = 0; t < cfg.budget; ++t) {
    detail::CounterStream rng(detail::mix_seed(cfg.seed, kCoeffStream), t);
    std::vector<Complex> b(kTerms);
    for (auto& z : b) {
      const double re = rng.normal();
      z = {re, rng.normal()};
    }
    for (double p : {1.0, 2.0, 4.0}) {
      const double exact = khintchine_estimate(b, p, 0, 0);
      const double sampled = khintchine_estimate(b, p, c::kKhintchineDraws, detail::mix_seed(cfg.seed, t));
      const double rel = std::abs(sampled - exact) / exact;
      worst = std::max(worst, rel);
      csv += fmt::format("{},{},{},{},{}\n", t, format_double(p), format_double(exact), format_double(sampled),
                         format_double(rel));
    }
  }
  res.artifacts.push_back({cfg.name + ".csv", std::move(csv)});
  check(res, "sampled matches exact", true, worst <= c::kKhintchineTolerance, worst, c::kKhintchineTolerance);
}

using PresetBody = std::function<void(const ResolvedConfig&, ExperimentResult&, bool)>;

struct PresetEntry {
  const char* name;
  ResolvedConfig defaults;
  PresetBody body;
};

const std::vector<PresetEntry>& registry() {
  using D = NormDefinition;
  constexpr auto disc = NormMode::discrete;
  constexpr auto cont = NormMode::continuum;
  static const std::vector<PresetEntry> r = {
      {"stft-identities", make_defaults(64, 0.125, 2, 2, disc, D::blocks, 20, kN | kDx | kSeed | kBudget),
       run_stft_identities},
      {"norm-equivalence",
       make_defaults(128, 0.125, 2, 2, cont, D::blocks, 20, kN | kDx | kMode | kSeed | kBudget),
       run_norm_equivalence},
      {"embedding-monotonicity", make_defaults(64, 0.125, 2, 2, disc, D::blocks, 100, kN | kDx | kSeed | kBudget),
       run_embedding},
      {"chirp", make_defaults(128, 0.125, 4, 1, disc, D::blocks, 16, kP | kQ | kMode | kDefinition | kSeed | kBudget),
       run_chirp},
      {"blocks", make_defaults(512, 1.0 / 64.0, 4, 1, disc, D::blocks, 16, kAll), run_blocks},
      {"amalgam", make_defaults(2048, 0.25, 4, 2, disc, D::blocks, 16, kN | kDx | kP | kSeed | kBudget), run_amalgam},
      {"ex1", make_defaults(32768, 0.5, 1.5, 2, disc, D::blocks, 32, kN | kDx | kP | kMode | kSeed | kBudget), run_ex1},
      {"dyadic-lp", make_defaults(32768, 0.5, 4, 2, disc, D::blocks, 32, kN | kDx | kP | kMode | kSeed | kBudget),
       run_dyadic},
      {"rubio", make_defaults(512, 1.0 / 16.0, 4, 2, disc, D::blocks, 16, kAll), run_rubio},
      {"square-necessity",
       make_defaults(8192, 0.25, 1.5, 2, disc, D::blocks, 16, kN | kDx | kP | kMode | kSeed | kBudget), run_necessity},
      {"mz", make_defaults(256, 0.125, 4, 1, disc, D::blocks, 16, kAll), run_mz},
      {"khintchine", make_defaults(0, 0.0, 2, 2, disc, D::blocks, 5, kSeed | kBudget), run_khintchine},
  };
  return r;
}

const PresetEntry& find_preset(std::string_view name) {
  for (const auto& p : registry()) {
    if (name == p.name) return p;
  }
  raise(ErrorCode::InvalidArgument, fmt::format("unknown preset '{}'", name));
}

std::string hex64(std::uint64_t v) { return fmt::format("{:016x}", v); }

std::string build_manifest(const ExperimentResult& res) {
  using nlohmann::ordered_json;
  const auto& cfg = res.config;
  ordered_json config;
  config["name"] = cfg.name;
  if (cfg.uses & kN) config["grid_n"] = cfg.grid_n;
  if (cfg.uses & kDx) config["grid_dx"] = cfg.grid_dx;
  if (cfg.uses & kP) config["p"] = exponent_text(cfg.p);
  if (cfg.uses & kQ) config["q"] = exponent_text(cfg.q);
  if (cfg.uses & kMode) config["mode"] = mode_text(cfg.mode);
  if (cfg.uses & kDefinition) config["definition"] = to_string(cfg.definition);
  if (cfg.uses & kSeed) config["seed"] = cfg.seed;
  if (cfg.uses & kBudget) config["budget"] = cfg.budget;

  ordered_json m;
  m["preset"] = cfg.name;
  m["toolkit_version"] = kToolkitVersion;
  m["constants_version"] = c::kConstantsVersion;
  m["config"] = config;
  m["config_hash"] = hex64(config_hash(cfg));
  ordered_json arts = ordered_json::array();
  for (const auto& a : res.artifacts) arts.push_back({{"file", a.filename}, {"fnv1a", hex64(fnv1a(a.contents))}});
  m["artifacts"] = arts;
  ordered_json asserts = ordered_json::array();
  for (const auto& a : res.assertions) {
    asserts.push_back({{"name", a.name},
                       {"enforced", a.enforced},
                       {"passed", a.passed},
                       {"value", format_double(a.value)},
                       {"threshold", format_double(a.threshold)}});
  }
  m["assertions"] = asserts;
  m["passed"] = res.passed();
  return m.dump(2) + "\n";
}

}  // namespace

const char* to_string(NormDefinition d) {
  switch (d) {
    case NormDefinition::stft: return "stft";
    case NormDefinition::blocks: return "blocks";
    case NormDefinition::gabor: return "gabor";
  }
  return "unknown";
}

std::optional<NormDefinition> norm_definition_from_string(std::string_view name) {
  for (auto d : {NormDefinition::stft, NormDefinition::blocks, NormDefinition::gabor}) {
    if (name == to_string(d)) return d;
  }
  return std::nullopt;
}

bool ExperimentResult::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const auto& a) { return !a.enforced || a.passed; });
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& p : registry()) v.emplace_back(p.name);
    return v;
  }();
  return names;
}

bool preset_exists(std::string_view name) {
  const auto& v = preset_names();
  return std::find(v.begin(), v.end(), name) != v.end();
}

ResolvedConfig resolve_config(const ExperimentConfig& cfg) {
  const auto& preset = find_preset(cfg.name);
  ResolvedConfig r = preset.defaults;
  r.name = preset.name;
  r.seed = cfg.seed;
  if (cfg.grid_n) r.grid_n = *cfg.grid_n;
  if (cfg.grid_dx) r.grid_dx = *cfg.grid_dx;
  if (cfg.p) r.p = *cfg.p;
  if (cfg.q) r.q = *cfg.q;
  if (cfg.mode) r.mode = *cfg.mode;
  if (cfg.definition) r.definition = *cfg.definition;
  if (cfg.budget) r.budget = *cfg.budget;
  if (r.uses & kN) require(r.grid_n >= 2, ErrorCode::InvalidArgument, "grid size must be at least 2");
  if (r.uses & kDx) {
    require(std::isfinite(r.grid_dx) && r.grid_dx > 0.0, ErrorCode::InvalidArgument, "grid spacing must be positive");
  }
  if (r.uses & kBudget) require(r.budget >= 1, ErrorCode::InvalidArgument, "budget must be at least 1");
  return r;
}

std::string canonical_config(const ResolvedConfig& cfg) {
  std::string s = "name=" + cfg.name;
  if (cfg.uses & kN) s += fmt::format(";n={}", cfg.grid_n);
  if (cfg.uses & kDx) s += ";dx=" + format_double(cfg.grid_dx);
  if (cfg.uses & kP) s += ";p=" + exponent_text(cfg.p);
  if (cfg.uses & kQ) s += ";q=" + exponent_text(cfg.q);
  if (cfg.uses & kMode) s += std::string(";mode=") + mode_text(cfg.mode);
  if (cfg.uses & kDefinition) s += std::string(";definition=") + to_string(cfg.definition);
  if (cfg.uses & kSeed) s += fmt::format(";seed={}", cfg.seed);
  if (cfg.uses & kBudget) s += fmt::format(";budget={}", cfg.budget);
  return s;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t config_hash(const ResolvedConfig& cfg) { return fnv1a(canonical_config(cfg)); }

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const auto& preset = find_preset(cfg.name);
  ExperimentResult res;
  res.config = resolve_config(cfg);
  ResolvedConfig reference = preset.defaults;
  reference.name = res.config.name;
  reference.seed = res.config.seed;
  const bool frozen = canonical_config(reference) == canonical_config(res.config);
  preset.body(res.config, res, frozen);
  res.manifest = build_manifest(res);
  return res;
}

}  // namespace modspace
