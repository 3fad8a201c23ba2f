#include "modspace/probe.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <fmt/format.h>

#include "modspace/detail/fft.hpp"
#include "modspace/detail/parallel.hpp"
#include "modspace/detail/rng.hpp"
#include "modspace/engine.hpp"

namespace modspace {

using detail::FftDirection;
using detail::fft_inplace;

namespace {

constexpr std::size_t kPowerCap = 10000;
constexpr double kPowerTolerance = 1e-13;
constexpr std::uint64_t kSignStream = 0x7369676e73ULL;

std::string exponent_text(Exponent e) { return e.is_infinite() ? "inf" : fmt::format("{:g}", e.value()); }

const char* mode_text(NormMode m) { return m == NormMode::discrete ? "discrete" : "continuum"; }

// Deterministic stream for probe `id`: word k is counter_word(seed, id, k).
class ProbeRng {
 public:
  ProbeRng(std::uint64_t seed, std::uint64_t id) : seed_(seed), id_(id) {}

  double uniform() { return detail::to_unit(detail::counter_word(seed_, id_, next_++)); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n))); }
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t id_;
  std::uint64_t next_ = 0;
};

std::size_t wrap_bin(const Grid& grid, std::ptrdiff_t k) { return grid.bin_of_signed(k); }

Signal from_spectrum(const Grid& grid, std::vector<Complex> spectrum) {
  fft_inplace(spectrum, FftDirection::backward);
  const double scale = 1.0 / static_cast<double>(spectrum.size());
  for (auto& z : spectrum) z *= scale;
  return {grid, std::move(spectrum)};
}

std::vector<Complex> spectrum_of(const Signal& f) {
  std::vector<Complex> v(f.samples().begin(), f.samples().end());
  fft_inplace(v, FftDirection::forward);
  return v;
}

// Hann weights over L bins, all strictly positive.
double hann(std::size_t i, std::size_t len) {
  const double s = std::sin(std::numbers::pi * static_cast<double>(i + 1) / static_cast<double>(len + 1));
  return s * s;
}

struct ProbeFactory {
  const LinearOperator& op;
  std::uint64_t seed;
  std::vector<std::vector<std::size_t>> interval_bins;  // per structure interval, non-empty only
  std::vector<Complex> own;                             // unimodular alignment per interval
  std::vector<std::vector<std::size_t>> groups;         // hull bins per label

  ProbeFactory(const LinearOperator& o, std::uint64_t s) : op(o), seed(s) {
    if (!op.structure) return;
    const auto& omega = *op.structure;
    std::map<std::int64_t, Interval> hulls;
    for (std::size_t n = 0; n < omega.size(); ++n) {
      auto bins = bins_in_interval(op.grid, omega[n]);
      if (bins.empty()) continue;
      Complex a = n < op.structure_coeffs.size() ? op.structure_coeffs[n] : Complex(1.0);
      own.push_back(std::abs(a) > 0.0 ? std::conj(a) / std::abs(a) : Complex(1.0));
      interval_bins.push_back(std::move(bins));
      if (!omega.labels().empty()) {
        const auto label = omega.labels()[n];
        auto it = hulls.find(label);
        if (it == hulls.end()) {
          hulls.emplace(label, omega[n]);
        } else {
          it->second.left = std::min(it->second.left, omega[n].left);
          it->second.right = std::max(it->second.right, omega[n].right);
        }
      }
    }
    for (const auto& [label, hull] : hulls) {
      auto bins = bins_in_interval(op.grid, hull);
      if (!bins.empty()) groups.push_back(std::move(bins));
    }
  }

  bool structured() const { return !interval_bins.empty(); }

  std::size_t width() const { return op.focus_width == 0 ? op.grid.size() : op.focus_width; }

  // Signed bin at offset u in [0, 1) of the focus band, or of the whole band
  // measured from the focus start.
  std::ptrdiff_t pick_bin(ProbeRng& rng) const {
    const bool inside = rng.uniform() < 0.75;
    const std::size_t span = inside ? width() : op.grid.size();
    return op.focus_start + static_cast<std::ptrdiff_t>(rng.index(span));
  }

  Signal aligned(const std::vector<Complex>& signs, bool bumps) const {
    std::vector<Complex> v(op.grid.size());
    for (std::size_t n = 0; n < interval_bins.size(); ++n) {
      const auto& bins = interval_bins[n];
      if (bumps) {
        for (std::size_t i = 0; i < bins.size(); ++i) v[bins[i]] += signs[n] * hann(i, bins.size());
      } else {
        v[bins[bins.size() / 2]] += signs[n];
      }
    }
    return from_spectrum(op.grid, std::move(v));
  }

  Signal group_bump(std::size_t gi) const {
    std::vector<Complex> v(op.grid.size());
    const auto& bins = groups[gi];
    for (std::size_t i = 0; i < bins.size(); ++i) v[bins[i]] = hann(i, bins.size());
    return from_spectrum(op.grid, std::move(v));
  }

  Signal structured_probe(std::size_t s, std::uint64_t id) const {
    if (s == 0) return aligned(own, false);
    if (s == 1) return aligned(own, true);
    if (s - 2 < groups.size()) return group_bump(s - 2);
    const std::size_t r = s - 2 - groups.size();
    std::vector<Complex> signs(interval_bins.size());
    for (std::size_t n = 0; n < signs.size(); ++n) {
      signs[n] = (detail::counter_word(seed ^ kSignStream, id, n) >> 63) ? -own[n] : own[n];
    }
    return aligned(signs, r % 2 == 1);
  }

  Signal gaussian(ProbeRng& rng) const {
    const Grid& g = op.grid;
    const double base = g.bins_per_unit() / 8.0;
    const double lo = 2.0 * g.dx();
    const double hi = 0.5 * g.bins_per_unit();
    const double width = std::clamp(base * std::exp2(rng.uniform(-2.0, 2.0)), lo, hi);
    const auto shift = static_cast<std::ptrdiff_t>(rng.index(g.size()));
    const std::ptrdiff_t k = pick_bin(rng);
    return modulate(translate(gaussian_window(g, width).signal(), shift), k);
  }

  Signal noise(ProbeRng& rng) const {
    const Grid& g = op.grid;
    const bool inside = rng.uniform() < 0.75;
    const std::size_t span = inside ? width() : g.size();
    const std::size_t len = std::max<std::size_t>(2, 2 + rng.index(std::max<std::size_t>(1, span / 2)));
    const std::ptrdiff_t start = op.focus_start + static_cast<std::ptrdiff_t>(rng.index(std::max<std::size_t>(1, span)));
    std::vector<Complex> v(g.size());
    for (std::size_t i = 0; i < std::min(len, g.size()); ++i) {
      const double w = hann(i, len);
      v[wrap_bin(g, start + static_cast<std::ptrdiff_t>(i))] += w * Complex(rng.normal(), rng.normal());
    }
    return from_spectrum(g, std::move(v));
  }

  std::pair<Signal, OpNormMethod> make(std::uint64_t id) const {
    if (structured()) {
      if (id % 3 == 0) return {structured_probe(id / 3, id), OpNormMethod::structured_probe};
      ProbeRng rng(seed, id);
      return {id % 3 == 1 ? gaussian(rng) : noise(rng), OpNormMethod::random_probe};
    }
    ProbeRng rng(seed, id);
    return {id % 2 == 0 ? gaussian(rng) : noise(rng), OpNormMethod::random_probe};
  }

  // Frequency cells moved as units by the ascent.
  std::vector<std::vector<std::size_t>> cells(std::size_t count) const {
    if (structured()) return interval_bins;
    const std::size_t w = width();
    count = std::max<std::size_t>(1, std::min(count, w));
    std::vector<std::vector<std::size_t>> out(count);
    for (std::size_t i = 0; i < w; ++i) {
      out[i * count / w].push_back(wrap_bin(op.grid, op.focus_start + static_cast<std::ptrdiff_t>(i)));
    }
    return out;
  }
};

struct AscentResult {
  double value;
  Signal signal;
};

AscentResult ascend(const LinearOperator& op, const NormSpec& in, const NormSpec& out, const Signal& start,
                    const std::vector<std::vector<std::size_t>>& cells, std::size_t steps) {
  static const Complex kMoves[] = {-1.0, Complex(0.0, 1.0), Complex(0.0, -1.0), 2.0, 0.5};
  std::vector<Complex> spec = spectrum_of(start);
  Signal best_signal = start;
  double best = probe_ratio(op, in, out, start);
  std::size_t since_improvement = 0;
  for (std::size_t step = 0; step < steps && since_improvement < cells.size(); ++step) {
    const auto& cell = cells[step % cells.size()];
    double step_best = best;
    std::optional<std::size_t> chosen;
    std::optional<Signal> chosen_signal;
    for (std::size_t m = 0; m < std::size(kMoves); ++m) {
      std::vector<Complex> trial = spec;
      for (std::size_t j : cell) trial[j] *= kMoves[m];
      Signal f = from_spectrum(op.grid, std::move(trial));
      const double r = probe_ratio(op, in, out, f);
      if (r > step_best * (1.0 + 1e-12)) {
        step_best = r;
        chosen = m;
        chosen_signal.emplace(std::move(f));
      }
    }
    if (chosen) {
      for (std::size_t j : cell) spec[j] *= kMoves[*chosen];
      best = step_best;
      best_signal = std::move(*chosen_signal);
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
  }
  return {best, std::move(best_signal)};
}

bool fast_ascent_applies(const LinearOperator& op, const NormSpec& in, const NormSpec& out) {
  if (op.pieces.empty() || in.space != SpaceKind::Lp) return false;
  if (out.space == SpaceKind::Lp) return op.pieces.size() == 1;
  return out.space == SpaceKind::Lp_vector_l2;
}

double sample_weight(const NormSpec& s, const Grid& g) { return s.params.mode == NormMode::continuum ? g.dx() : 1.0; }

// Ascent for frequency-diagonal operators under L^p norms: a move scales the
// spectrum on one cell, so only f and the outputs meeting that cell change.
class IncrementalAscent {
 public:
  IncrementalAscent(const LinearOperator& op, const NormSpec& in, const NormSpec& out, const Signal& start)
      : op_(op), in_(in), out_(out), n_(op.grid.size()), owners_(n_) {
    for (std::size_t p = 0; p < op.pieces.size(); ++p) {
      for (std::size_t i = 0; i < op.pieces[p].bins.size(); ++i) owners_[op.pieces[p].bins[i]].push_back({p, i});
    }
    spec_ = spectrum_of(start);
    f_.assign(start.samples().begin(), start.samples().end());
    outs_.resize(op.pieces.size());
    agg_.assign(n_, 0.0);
    for (std::size_t p = 0; p < op.pieces.size(); ++p) {
      std::vector<Complex> v(n_);
      const auto& piece = op.pieces[p];
      for (std::size_t i = 0; i < piece.bins.size(); ++i) v[piece.bins[i]] = piece.mask[i] * spec_[piece.bins[i]];
      outs_[p] = inverse(std::move(v));
      for (std::size_t t = 0; t < n_; ++t) agg_[t] += std::norm(outs_[p][t]);
    }
  }

  double ratio(std::span<const Complex> f, std::span<const double> agg) const {
    const double den = lp_norm(f, in_.params.p, sample_weight(in_, op_.grid));
    if (!(den > 0.0) || !std::isfinite(den)) return 0.0;
    std::vector<double> mag(n_);
    for (std::size_t t = 0; t < n_; ++t) mag[t] = std::sqrt(agg[t]);
    return lp_norm_abs(mag, out_.params.p, sample_weight(out_, op_.grid)) / den;
  }

  double current() const { return ratio(f_, agg_); }

  struct Trial {
    double value;
    std::vector<Complex> f;
    std::vector<double> agg;
    std::vector<std::pair<std::size_t, std::vector<Complex>>> outs;
  };

  Trial trial(const std::vector<std::size_t>& cell, Complex factor) const {
    std::vector<Complex> delta(n_);
    std::vector<std::size_t> touched;
    for (std::size_t j : cell) {
      delta[j] = (factor - 1.0) * spec_[j];
      for (const auto& [p, i] : owners_[j]) {
        (void)i;
        if (std::find(touched.begin(), touched.end(), p) == touched.end()) touched.push_back(p);
      }
    }
    Trial t{0.0, f_, agg_, {}};
    const auto df = inverse(delta);
    for (std::size_t s = 0; s < n_; ++s) t.f[s] += df[s];
    for (std::size_t p : touched) {
      const auto& piece = op_.pieces[p];
      std::vector<Complex> d(n_);
      for (std::size_t j : cell) {
        for (const auto& [q, i] : owners_[j]) {
          if (q == p) d[j] = piece.mask[i] * delta[j];
        }
      }
      auto dp = inverse(std::move(d));
      std::vector<Complex> next = outs_[p];
      for (std::size_t s = 0; s < n_; ++s) {
        next[s] += dp[s];
        t.agg[s] += std::norm(next[s]) - std::norm(outs_[p][s]);
      }
      t.outs.emplace_back(p, std::move(next));
    }
    for (auto& a : t.agg) a = std::max(a, 0.0);
    t.value = ratio(t.f, t.agg);
    return t;
  }

  void commit(const std::vector<std::size_t>& cell, Complex factor, Trial&& t) {
    for (std::size_t j : cell) spec_[j] *= factor;
    f_ = std::move(t.f);
    agg_ = std::move(t.agg);
    for (auto& [p, v] : t.outs) outs_[p] = std::move(v);
  }

  Signal signal() const { return {op_.grid, f_}; }

 private:
  std::vector<Complex> inverse(std::vector<Complex> v) const {
    fft_inplace(v, FftDirection::backward);
    const double scale = 1.0 / static_cast<double>(n_);
    for (auto& z : v) z *= scale;
    return v;
  }

  const LinearOperator& op_;
  const NormSpec& in_;
  const NormSpec& out_;
  std::size_t n_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> owners_;
  std::vector<Complex> spec_;
  std::vector<Complex> f_;
  std::vector<std::vector<Complex>> outs_;
  std::vector<double> agg_;
};

AscentResult ascend_incremental(const LinearOperator& op, const NormSpec& in, const NormSpec& out, const Signal& start,
                                const std::vector<std::vector<std::size_t>>& cells, std::size_t steps) {
  static const Complex kMoves[] = {-1.0, Complex(0.0, 1.0), Complex(0.0, -1.0), 2.0, 0.5};
  IncrementalAscent state(op, in, out, start);
  double best = state.current();
  std::size_t since_improvement = 0;
  for (std::size_t step = 0; step < steps && since_improvement < cells.size(); ++step) {
    const auto& cell = cells[step % cells.size()];
    std::optional<IncrementalAscent::Trial> chosen;
    Complex factor = 1.0;
    double step_best = best;
    for (const Complex& m : kMoves) {
      auto t = state.trial(cell, m);
      if (t.value > step_best * (1.0 + 1e-12)) {
        step_best = t.value;
        factor = m;
        chosen.emplace(std::move(t));
      }
    }
    if (chosen) {
      state.commit(cell, factor, std::move(*chosen));
      best = step_best;
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
  }
  Signal f = state.signal();
  const double exact = probe_ratio(op, in, out, f);
  return {exact, std::move(f)};
}

std::ptrdiff_t lowest_signed(const Grid& g) { return -static_cast<std::ptrdiff_t>(g.size() / 2); }

// Smallest signed-index window containing every nonzero bin of m.
std::pair<std::ptrdiff_t, std::size_t> support_window(const Symbol& m) {
  const Grid& g = m.grid();
  std::optional<std::ptrdiff_t> lo;
  std::ptrdiff_t hi = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::ptrdiff_t k = lowest_signed(g) + static_cast<std::ptrdiff_t>(i);
    if (std::abs(m[g.bin_of_signed(k)]) > 0.0) {
      if (!lo) lo = k;
      hi = k;
    }
  }
  if (!lo) return {0, 0};
  return {*lo, static_cast<std::size_t>(hi - *lo + 1)};
}

}  // namespace

// ---- NormSpec ---------------------------------------------------------------

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Lp: return "Lp";
    case SpaceKind::Mpq_blocks: return "Mpq_blocks";
    case SpaceKind::Mpq_stft: return "Mpq_stft";
    case SpaceKind::Mpq_gabor: return "Mpq_gabor";
    case SpaceKind::Mpq_vector_l2: return "Mpq_vector_l2";
    case SpaceKind::Lp_vector_l2: return "Lp_vector_l2";
  }
  return "unknown";
}

NormSpec NormSpec::lp(Exponent p, NormMode mode) {
  NormSpec s;
  s.space = SpaceKind::Lp;
  s.params = {p, p, mode};
  return s;
}

NormSpec NormSpec::lp_vector(Exponent p, NormMode mode) {
  NormSpec s = lp(p, mode);
  s.space = SpaceKind::Lp_vector_l2;
  return s;
}

NormSpec NormSpec::blocks(MixedNormParams params, std::optional<BlockPartition> part) {
  NormSpec s;
  s.space = SpaceKind::Mpq_blocks;
  s.params = params;
  s.partition = std::move(part);
  return s;
}

NormSpec NormSpec::stft(MixedNormParams params, std::optional<Window> g) {
  NormSpec s;
  s.space = SpaceKind::Mpq_stft;
  s.params = params;
  s.window = std::move(g);
  return s;
}

NormSpec NormSpec::gabor_lattice(MixedNormParams params, std::optional<GaborSystem> sys) {
  NormSpec s;
  s.space = SpaceKind::Mpq_gabor;
  s.params = params;
  s.gabor = std::move(sys);
  return s;
}

NormSpec NormSpec::vector_blocks(MixedNormParams params, std::optional<BlockPartition> part) {
  NormSpec s = blocks(params, std::move(part));
  s.space = SpaceKind::Mpq_vector_l2;
  return s;
}

NormSpec NormSpec::vector_stft(MixedNormParams params, std::optional<Window> g) {
  NormSpec s = stft(params, std::move(g));
  s.space = SpaceKind::Mpq_vector_l2;
  return s;
}

NormSpec NormSpec::bind(const Grid& grid) const {
  NormSpec s = *this;
  if (s.partition) require_same_grid(s.partition->grid(), grid);
  if (s.window) require_same_grid(s.window->grid(), grid);
  if (s.gabor) require_same_grid(s.gabor->grid(), grid);
  switch (space) {
    case SpaceKind::Mpq_blocks:
      if (!s.partition) s.partition = partition_bumps(grid);
      break;
    case SpaceKind::Mpq_stft:
      if (!s.window) s.window = gaussian_window(grid);
      break;
    case SpaceKind::Mpq_gabor:
      if (!s.gabor) {
        const auto half = static_cast<double>(grid.size() / 2);
        const auto step = static_cast<std::size_t>(std::exp2(std::floor(std::log2(std::max(1.0, half)) / 2.0)));
        s.gabor.emplace(gaussian_window(grid), step, step);
      }
      break;
    case SpaceKind::Mpq_vector_l2:
      if (!s.partition && !s.window) s.partition = partition_bumps(grid);
      break;
    case SpaceKind::Lp:
    case SpaceKind::Lp_vector_l2:
      break;
  }
  return s;
}

void NormSpec::validate() const {
  switch (space) {
    case SpaceKind::Mpq_blocks:
      require(partition.has_value(), ErrorCode::InvalidArgument, "block norm needs a partition");
      break;
    case SpaceKind::Mpq_stft:
      require(window.has_value(), ErrorCode::InvalidArgument, "STFT norm needs a window");
      break;
    case SpaceKind::Mpq_gabor:
      require(gabor.has_value(), ErrorCode::InvalidArgument, "Gabor norm needs a lattice");
      break;
    case SpaceKind::Mpq_vector_l2:
      require(partition.has_value() || window.has_value(), ErrorCode::InvalidArgument,
              "vector norm needs a partition or a window");
      break;
    case SpaceKind::Lp:
    case SpaceKind::Lp_vector_l2:
      break;
  }
}

double NormSpec::evaluate(std::span<const Signal> fs) const {
  validate();
  if (!is_vector()) require(fs.size() == 1, ErrorCode::LengthMismatch, "scalar norm applied to a list");
  switch (space) {
    case SpaceKind::Lp: return lp_norm(fs.front(), params.p, params.mode);
    case SpaceKind::Mpq_blocks: return mod_norm_blocks(fs.front(), *partition, params);
    case SpaceKind::Mpq_stft: return mod_norm_stft(fs.front(), *window, params);
    case SpaceKind::Mpq_gabor: return mod_norm_gabor(fs.front(), *gabor, params);
    case SpaceKind::Mpq_vector_l2:
      return partition ? mod_norm_vector(fs, *partition, params) : mod_norm_vector(fs, *window, params);
    case SpaceKind::Lp_vector_l2: return lp_norm_vector(fs, params.p, params.mode);
  }
  raise(ErrorCode::InvalidArgument, "unknown norm space");
}

std::string NormSpec::describe() const {
  if (space == SpaceKind::Lp || space == SpaceKind::Lp_vector_l2) {
    return fmt::format("{}(p={},{})", to_string(space), exponent_text(params.p), mode_text(params.mode));
  }
  std::string ctx;
  if (space == SpaceKind::Mpq_gabor && gabor) ctx = fmt::format(",a={},b={}", gabor->time_step(), gabor->freq_step());
  if (space == SpaceKind::Mpq_vector_l2) ctx = partition ? ",blocks" : ",stft";
  return fmt::format("{}(p={},q={},{}{})", to_string(space), exponent_text(params.p), exponent_text(params.q),
                     mode_text(params.mode), ctx);
}

// ---- operators --------------------------------------------------------------

LinearOperator identity_operator(const Grid& grid) {
  LinearOperator op{grid, {}, {}, std::nullopt, {}, 0, 0, {}, "identity"};
  op.apply = [](const Signal& f) { return std::vector<Signal>{f}; };
  op.adjoint = [](std::span<const Signal> ys) { return ys.front(); };
  return op;
}

LinearOperator multiplier_operator(Symbol m, std::optional<IntervalCollection> structure, std::vector<Complex> coeffs) {
  LinearOperator op{m.grid(), {}, {}, std::move(structure), std::move(coeffs), 0, 0, {}, "T_" + m.label()};
  if (op.structure && !op.structure->empty()) {
    const Interval hull{op.structure->intervals().front().left, op.structure->intervals().back().right};
    const auto bins = bins_in_interval(op.grid, hull);
    if (!bins.empty()) {
      op.focus_start = op.grid.signed_bin(bins.front());
      op.focus_width = bins.size();
    }
  } else {
    const auto [lo, w] = support_window(m);
    op.focus_start = w == 0 ? 0 : lo;
    op.focus_width = w;
  }
  SpectralPiece piece;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (std::abs(m[j]) > 0.0) {
      piece.bins.push_back(j);
      piece.mask.push_back(m[j]);
    }
  }
  op.pieces.push_back(std::move(piece));
  const auto sym = std::make_shared<const Symbol>(std::move(m));
  const auto adj = std::make_shared<const Symbol>(conj(*sym));
  op.apply = [sym](const Signal& f) { return std::vector<Signal>{apply_multiplier(*sym, f)}; };
  op.adjoint = [adj](std::span<const Signal> ys) { return apply_multiplier(*adj, ys.front()); };
  return op;
}

LinearOperator block_multiplier_operator(const IntervalCollection& omega, std::vector<Complex> coeffs, const Grid& grid) {
  Symbol m = sym_block_sum(omega, coeffs, grid);
  return multiplier_operator(std::move(m), omega, std::move(coeffs));
}

LinearOperator square_function_operator(IntervalCollection omega, const Grid& grid) {
  require_bin_resolvable(omega, grid);
  auto shared = std::make_shared<const IntervalCollection>(omega);
  LinearOperator op{grid, {}, {}, std::move(omega), {}, 0, 0, {}, "square_function"};
  if (!shared->empty()) {
    const Interval hull{shared->intervals().front().left, shared->intervals().back().right};
    const auto bins = bins_in_interval(grid, hull);
    if (!bins.empty()) {
      op.focus_start = grid.signed_bin(bins.front());
      op.focus_width = bins.size();
    }
  }
  for (const auto& w : shared->intervals()) {
    SpectralPiece piece{bins_in_interval(grid, w), {}};
    piece.mask.assign(piece.bins.size(), 1.0);
    op.pieces.push_back(std::move(piece));
  }
  op.apply = [shared](const Signal& f) { return square_function(*shared, f); };
  op.adjoint = [shared, grid](std::span<const Signal> ys) {
    require(ys.size() == shared->size(), ErrorCode::LengthMismatch, "one signal per interval");
    std::vector<Complex> acc(grid.size());
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (std::size_t n = 0; n < ys.size(); ++n) {
      std::vector<Complex> s = spectrum_of(ys[n]);
      for (std::size_t j : bins_in_interval(grid, (*shared)[n])) acc[j] += s[j];
    }
    fft_inplace(acc, FftDirection::backward);
    for (auto& z : acc) z *= scale;
    return Signal(grid, std::move(acc));
  };
  return op;
}

const char* to_string(OpNormMethod method) {
  switch (method) {
    case OpNormMethod::exact_l2: return "exact_l2";
    case OpNormMethod::random_probe: return "random_probe";
    case OpNormMethod::structured_probe: return "structured_probe";
    case OpNormMethod::ascent: return "ascent";
  }
  return "unknown";
}

// ---- estimation -------------------------------------------------------------

double opnorm_exact_l2(const LinearOperator& op) {
  require(static_cast<bool>(op.adjoint), ErrorCode::InvalidArgument, "power iteration needs the adjoint");
  const std::size_t n = op.grid.size();
  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = {detail::to_unit(detail::counter_word(0x706f776572ULL, 0, 2 * i)) - 0.5,
            detail::to_unit(detail::counter_word(0x706f776572ULL, 0, 2 * i + 1)) - 0.5};
  }
  Signal v(op.grid, std::move(x));
  v = (1.0 / l2_norm(v)) * v;
  double lambda = 0.0;
  for (std::size_t it = 0; it < kPowerCap; ++it) {
    const auto y = op.apply(v);
    double next = 0.0;
    for (const auto& s : y) next += std::pow(l2_norm(s), 2);
    if (next == 0.0) return 0.0;
    const Signal z = op.adjoint(y);
    const double nz = l2_norm(z);
    if (nz == 0.0) return 0.0;
    v = (1.0 / nz) * z;
    if (it > 0 && std::abs(next - lambda) <= kPowerTolerance * next) return std::sqrt(next);
    lambda = next;
  }
  raise(ErrorCode::NoConvergence, "power iteration did not converge");
}

double probe_ratio(const LinearOperator& op, const NormSpec& in, const NormSpec& out, const Signal& f) {
  const double den = in.evaluate(f);
  if (!(den > 0.0) || !std::isfinite(den)) return 0.0;
  const auto y = op.apply(f);
  return out.evaluate(y) / den;
}

OpNormEstimate opnorm_probe(const LinearOperator& op, const NormSpec& in, const NormSpec& out, std::size_t budget,
                            std::uint64_t seed, const ProbeOptions& options) {
  require(budget >= 1, ErrorCode::InvalidArgument, "probe budget must be positive");
  const NormSpec in_b = in.bind(op.grid);
  const NormSpec out_b = out.bind(op.grid);
  in_b.validate();
  out_b.validate();
  const ProbeFactory factory(op, seed);

  std::vector<double> ratios(budget, 0.0);
  std::vector<OpNormMethod> kinds(budget, OpNormMethod::random_probe);
  std::vector<std::optional<Signal>> probes(budget);
  detail::parallel_for(budget, [&](std::size_t id) {
    auto [f, kind] = factory.make(id);
    ratios[id] = probe_ratio(op, in_b, out_b, f);
    kinds[id] = kind;
    probes[id].emplace(std::move(f));
  });

  auto best_in_prefix = [&](std::size_t len) {
    std::size_t b = 0;
    for (std::size_t i = 1; i < len; ++i) {
      if (ratios[i] > ratios[b]) b = i;
    }
    return b;
  };

  OpNormEstimate est;
  const std::size_t top = best_in_prefix(budget);
  est.value = ratios[top];
  est.witness = fmt::format("probe={}", top);
  est.method = kinds[top];
  est.witness_signal = *probes[top];

  if (options.ascent && options.ascent_steps > 0) {
    std::vector<std::size_t> starts;
    for (std::size_t len = 1; len <= budget; len *= 2) {
      const std::size_t s = best_in_prefix(len);
      if (std::find(starts.begin(), starts.end(), s) == starts.end()) starts.push_back(s);
    }
    const auto cells = factory.cells(options.cells);
    const bool fast = fast_ascent_applies(op, in_b, out_b);
    std::vector<std::optional<AscentResult>> results(starts.size());
    detail::parallel_for(starts.size(), [&](std::size_t i) {
      results[i].emplace(fast ? ascend_incremental(op, in_b, out_b, *probes[starts[i]], cells, options.ascent_steps)
                              : ascend(op, in_b, out_b, *probes[starts[i]], cells, options.ascent_steps));
    });
    for (std::size_t i = 0; i < starts.size(); ++i) {
      if (results[i]->value > est.value) {
        est.value = results[i]->value;
        est.witness = fmt::format("probe={}+ascent", starts[i]);
        est.method = OpNormMethod::ascent;
        est.witness_signal = results[i]->signal;
      }
    }
  }
  return est;
}

double amalgam_multiplier_probe(const Symbol& sigma, Exponent p, const BlockPartition& part, std::size_t budget,
                                std::uint64_t seed, const ProbeOptions& options) {
  require_same_grid(sigma.grid(), part.grid());
  const NormSpec lp = NormSpec::lp(p);
  double best = 0.0;
  for (std::size_t k = 0; k < part.size(); ++k) {
    Symbol piece = part.symbol(k) * sigma;
    if (piece.sup_norm() == 0.0) continue;
    const auto est = opnorm_probe(multiplier_operator(std::move(piece)), lp, lp, budget, seed, options);
    best = std::max(best, est.value);
  }
  return best;
}

double amalgam_multiplier_probe(const IntervalCollection& omega, std::span<const Complex> coeffs, Exponent p,
                                const BlockPartition& part, std::size_t budget, std::uint64_t seed,
                                const ProbeOptions& options) {
  const Grid& grid = part.grid();
  const Symbol sigma = sym_block_sum(omega, coeffs, grid);
  const NormSpec lp = NormSpec::lp(p);
  double best = 0.0;
  for (std::size_t k = 0; k < part.size(); ++k) {
    Symbol piece = part.symbol(k) * sigma;
    if (piece.sup_norm() == 0.0) continue;
    std::vector<Interval> local;
    std::vector<std::int64_t> labels;
    std::vector<Complex> a;
    for (std::size_t n = 0; n < omega.size(); ++n) {
      const auto bins = bins_in_interval(grid, omega[n]);
      if (std::none_of(bins.begin(), bins.end(), [&](std::size_t j) { return std::abs(piece[j]) > 0.0; })) continue;
      local.push_back(omega[n]);
      if (!omega.labels().empty()) labels.push_back(omega.labels()[n]);
      a.push_back(coeffs[n]);
    }
    best = std::max(best, opnorm_probe(multiplier_operator(piece), lp, lp, budget, seed, options).value);
    auto op = multiplier_operator(std::move(piece), IntervalCollection(std::move(local), std::move(labels)), std::move(a));
    best = std::max(best, opnorm_probe(op, lp, lp, budget, seed, options).value);
  }
  return best;
}

// ---- growth curves ----------------------------------------------------------

const char* to_string(GrowthFamily family) {
  switch (family) {
    case GrowthFamily::unit_blocks_random_signs: return "unit_blocks_random_signs";
    case GrowthFamily::ex1_depth: return "ex1_depth";
    case GrowthFamily::chirp_bandwidth: return "chirp_bandwidth";
    case GrowthFamily::square_function_ex1: return "square_function_ex1";
    case GrowthFamily::dyadic_equivalence: return "dyadic_equivalence";
    case GrowthFamily::rubio_random: return "rubio_random";
  }
  return "unknown";
}

std::optional<GrowthFamily> growth_family_from_string(std::string_view name) {
  for (auto f : {GrowthFamily::unit_blocks_random_signs, GrowthFamily::ex1_depth, GrowthFamily::chirp_bandwidth,
                 GrowthFamily::square_function_ex1, GrowthFamily::dyadic_equivalence, GrowthFamily::rubio_random}) {
    if (name == to_string(f)) return f;
  }
  return std::nullopt;
}

Grid default_growth_grid(GrowthFamily family) {
  switch (family) {
    case GrowthFamily::unit_blocks_random_signs: return {512, 1.0 / 64.0};
    case GrowthFamily::ex1_depth: return {8192, 0.25};
    case GrowthFamily::square_function_ex1:
    case GrowthFamily::dyadic_equivalence: return {32768, 0.5};
    case GrowthFamily::chirp_bandwidth: return {128, 1.0 / 8.0};
    case GrowthFamily::rubio_random: return {512, 1.0 / 16.0};
  }
  raise(ErrorCode::InvalidArgument, "unknown growth family");
}

namespace {

IntervalCollection family_collection(GrowthFamily family, std::size_t size, const Grid& grid, std::uint64_t seed,
                                     const GrowthOptions& opt) {
  switch (family) {
    case GrowthFamily::unit_blocks_random_signs: return collection_unit(size, grid);
    case GrowthFamily::ex1_depth:
    case GrowthFamily::square_function_ex1: return collection_ex1(static_cast<int>(size), grid);
    case GrowthFamily::dyadic_equivalence:
      return collection_dyadic(size, grid, std::ldexp(1.0, -static_cast<int>(size)));
    case GrowthFamily::rubio_random:
      return collection_random(size, grid, 0.0, grid.band_max() / 2.0, opt.rubio_min_bins, detail::mix_seed(seed, size));
    case GrowthFamily::chirp_bandwidth: break;
  }
  raise(ErrorCode::InvalidArgument, "family has no interval collection");
}

// Worst of the sign draws: screen every draw without the ascent, then refine
// the largest few.
OpNormEstimate worst_sign_estimate(const IntervalCollection& omega, const Grid& grid, const NormSpec& in,
                                   const NormSpec& out, std::uint64_t seed, const GrowthOptions& opt,
                                   std::size_t size) {
  const std::size_t count = omega.size();
  std::vector<RademacherDraw> draws;
  if (count <= opt.exhaustive_limit) {
    const std::uint64_t patterns = std::uint64_t{1} << (count == 0 ? 0 : count - 1);
    for (std::uint64_t s = 0; s < patterns; ++s) draws.push_back(RademacherDraw::from_pattern(count, s << 1));
  } else {
    for (std::uint64_t t = 0; t < opt.draws; ++t) draws.push_back(RademacherDraw::generate(count, seed, t));
  }
  ProbeOptions screen = opt.probe;
  screen.ascent = false;
  std::vector<double> screened(draws.size());
  for (std::size_t d = 0; d < draws.size(); ++d) {
    const auto op = block_multiplier_operator(omega, draws[d].coefficients(), grid);
    screened[d] = opnorm_probe(op, in, out, opt.budget, seed, screen).value;
  }
  std::vector<std::size_t> order(draws.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return screened[a] > screened[b]; });
  OpNormEstimate best;
  const std::size_t refine = std::min(std::max<std::size_t>(opt.refine, 1), order.size());
  for (std::size_t r = 0; r < refine; ++r) {
    const std::size_t d = order[r];
    const auto op = block_multiplier_operator(omega, draws[d].coefficients(), grid);
    auto est = opnorm_probe(op, in, out, opt.budget, seed, opt.probe);
    if (r == 0 || est.value > best.value) {
      best = std::move(est);
      best.witness = fmt::format("size={} draw={} {}", size, d, best.witness);
    }
  }
  return best;
}

}  // namespace

GrowthCurve growth_experiment(GrowthFamily family, const std::vector<std::size_t>& sizes, const NormSpec& in,
                              const NormSpec& out, std::uint64_t seed, const GrowthOptions& opt) {
  require(!sizes.empty(), ErrorCode::EmptyList, "no sizes given");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    require(sizes[i] > sizes[i - 1], ErrorCode::InvalidArgument, "sizes must be strictly increasing");
  }
  GrowthCurve curve{to_string(family), sizes, {}, seed};
  for (std::size_t size : sizes) {
    OpNormEstimate est;
    if (family == GrowthFamily::chirp_bandwidth) {
      const Grid grid(size, opt.chirp_length / static_cast<double>(size));
      const auto op = multiplier_operator(sym_chirp(opt.chirp_alpha, grid));
      est = opnorm_probe(op, in.bind(grid), out.bind(grid), opt.budget, seed, opt.probe);
      est.witness = fmt::format("size={} {}", size, est.witness);
    } else {
      const Grid grid = opt.grid.value_or(default_growth_grid(family));
      const NormSpec in_b = in.bind(grid);
      const NormSpec out_b = out.bind(grid);
      const IntervalCollection omega = family_collection(family, size, grid, seed, opt);
      if (family == GrowthFamily::unit_blocks_random_signs || family == GrowthFamily::ex1_depth) {
        est = worst_sign_estimate(omega, grid, in_b, out_b, seed, opt, size);
      } else {
        est = opnorm_probe(square_function_operator(omega, grid), in_b, out_b, opt.budget, seed, opt.probe);
        est.witness = fmt::format("size={} {}", size, est.witness);
      }
    }
    curve.estimates.push_back(std::move(est));
  }
  return curve;
}

}  // namespace modspace
