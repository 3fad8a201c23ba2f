#pragma once

// Operator-norm lower bounds between (mixed) norms and the growth curves built
// from them.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "modspace/core.hpp"
#include "modspace/gabor.hpp"
#include "modspace/modnorm.hpp"
#include "modspace/stft.hpp"
#include "modspace/symbols.hpp"

namespace modspace {

enum class SpaceKind { Lp, Mpq_blocks, Mpq_stft, Mpq_gabor, Mpq_vector_l2, Lp_vector_l2 };

const char* to_string(SpaceKind kind);

// A norm on signals or on finite lists of signals.  Contexts left empty are
// filled with the defaults for a grid by bind(): the standard bump partition,
// the default Gaussian window, and a Gaussian Gabor lattice with
// a = b = 2^floor(log2(N/2)/2).  Mpq_vector_l2 uses the partition unless a
// window is supplied.
struct NormSpec {
  SpaceKind space = SpaceKind::Lp;
  MixedNormParams params;
  std::optional<BlockPartition> partition;
  std::optional<Window> window;
  std::optional<GaborSystem> gabor;

  static NormSpec lp(Exponent p, NormMode mode = NormMode::discrete);
  static NormSpec lp_vector(Exponent p, NormMode mode = NormMode::discrete);
  static NormSpec blocks(MixedNormParams params, std::optional<BlockPartition> part = std::nullopt);
  static NormSpec stft(MixedNormParams params, std::optional<Window> g = std::nullopt);
  static NormSpec gabor_lattice(MixedNormParams params, std::optional<GaborSystem> sys = std::nullopt);
  static NormSpec vector_blocks(MixedNormParams params, std::optional<BlockPartition> part = std::nullopt);
  static NormSpec vector_stft(MixedNormParams params, std::optional<Window> g = std::nullopt);

  bool is_vector() const noexcept { return space == SpaceKind::Mpq_vector_l2 || space == SpaceKind::Lp_vector_l2; }

  // Copy with every missing context built for `grid`; contexts on another
  // grid raise GridMismatch.
  NormSpec bind(const Grid& grid) const;
  // Throws InvalidArgument when a context the space needs is missing.
  void validate() const;

  // Scalar spaces accept exactly one signal.
  double evaluate(std::span<const Signal> fs) const;
  double evaluate(const Signal& f) const { return evaluate(std::span<const Signal>(&f, 1)); }

  // e.g. "Mpq_blocks(p=4,q=1,discrete)"
  std::string describe() const;
};

// Output n of a frequency-diagonal operator: spectrum mask . f^ on `bins`,
// zero elsewhere.
struct SpectralPiece {
  std::vector<std::size_t> bins;
  std::vector<Complex> mask;
};

// Linear map from signals to lists of signals.  `structure` (with optional
// per-interval coefficients) marks block multipliers and square functions so
// that aligned probes can be generated.
struct LinearOperator {
  Grid grid;
  std::function<std::vector<Signal>(const Signal&)> apply;
  std::function<Signal(std::span<const Signal>)> adjoint;
  std::optional<IntervalCollection> structure;
  std::vector<Complex> structure_coeffs;
  // Signed bins [focus_start, focus_start + focus_width) where the operator
  // acts; probe frequencies are drawn relative to focus_start, so shifting an
  // operator in frequency shifts its probes with it.  Width 0 means the band.
  std::ptrdiff_t focus_start = 0;
  std::size_t focus_width = 0;
  // Set for multipliers and square functions; lets the ascent update only the
  // outputs a move touches.
  std::vector<SpectralPiece> pieces;
  std::string label;
};

LinearOperator identity_operator(const Grid& grid);
LinearOperator multiplier_operator(Symbol m, std::optional<IntervalCollection> structure = std::nullopt,
                                   std::vector<Complex> coeffs = {});
// Block multiplier sum_n a_n chi_{omega_n} with its structure attached.
LinearOperator block_multiplier_operator(const IntervalCollection& omega, std::vector<Complex> coeffs, const Grid& grid);
LinearOperator square_function_operator(IntervalCollection omega, const Grid& grid);

enum class OpNormMethod { exact_l2, random_probe, structured_probe, ascent };

const char* to_string(OpNormMethod method);

struct OpNormEstimate {
  double value = 0.0;
  // Reproducible identifier, e.g. "probe=5" or "probe=5+ascent".
  std::string witness;
  OpNormMethod method = OpNormMethod::random_probe;
  std::optional<Signal> witness_signal;
};

// Largest singular value by power iteration on T*T; needs an adjoint.
// NoConvergence after 10000 iterations.
double opnorm_exact_l2(const LinearOperator& op);

struct ProbeOptions {
  bool ascent = true;
  std::size_t ascent_steps = 200;
  // Cells used by the ascent when the operator has no structure.
  std::size_t cells = 32;
};

// max over probes of out(T f) / in(f).  Probe ids 0..budget-1 cycle through
// structured combinations (when the operator has a structure), Gaussians at
// random time-frequency positions and band-limited noise, so a larger budget
// evaluates a superset.  The coordinate ascent starts from the best probe of
// every power-of-two prefix.
OpNormEstimate opnorm_probe(const LinearOperator& op, const NormSpec& in, const NormSpec& out, std::size_t budget,
                            std::uint64_t seed, const ProbeOptions& options = {});

// Ratio out(T f) / in(f) used by every probe; 0 when in(f) = 0.
double probe_ratio(const LinearOperator& op, const NormSpec& in, const NormSpec& out, const Signal& f);

// sup over active blocks of the L^p -> L^p probe value of T_{phi_k sigma}.
double amalgam_multiplier_probe(const Symbol& sigma, Exponent p, const BlockPartition& part, std::size_t budget,
                                std::uint64_t seed, const ProbeOptions& options = {});
// Same for the block sum sum_n a_n chi_{omega_n}; each localized piece keeps
// the intervals it meets as structure, so aligned probes are generated on top
// of the unstructured ones.
double amalgam_multiplier_probe(const IntervalCollection& omega, std::span<const Complex> coeffs, Exponent p,
                                const BlockPartition& part, std::size_t budget, std::uint64_t seed,
                                const ProbeOptions& options = {});

enum class GrowthFamily {
  unit_blocks_random_signs,
  ex1_depth,
  chirp_bandwidth,
  square_function_ex1,
  dyadic_equivalence,
  rubio_random,
};

const char* to_string(GrowthFamily family);
std::optional<GrowthFamily> growth_family_from_string(std::string_view name);

struct GrowthCurve {
  std::string family;
  std::vector<std::size_t> sizes;
  std::vector<OpNormEstimate> estimates;
  std::uint64_t seed = 0;
};

struct GrowthOptions {
  // Grid for the fixed-grid families; chirp_bandwidth builds one per N.
  std::optional<Grid> grid;
  double chirp_length = 16.0;
  double chirp_alpha = 2.0;
  // Random sign draws per size (W) and how many of the worst are refined by
  // the ascent.  Collections with at most exhaustive_limit intervals use all
  // sign patterns instead.
  std::size_t draws = 32;
  std::size_t refine = 2;
  std::size_t exhaustive_limit = 12;
  std::size_t budget = 16;
  // Minimum width in bins of the random intervals in rubio_random.
  std::size_t rubio_min_bins = 4;
  ProbeOptions probe;
};

// Default grid per family.
Grid default_growth_grid(GrowthFamily family);

GrowthCurve growth_experiment(GrowthFamily family, const std::vector<std::size_t>& sizes, const NormSpec& in,
                              const NormSpec& out, std::uint64_t seed, const GrowthOptions& options = {});

}  // namespace modspace
