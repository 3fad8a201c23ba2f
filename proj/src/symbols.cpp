#include "modspace/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "modspace/detail/rng.hpp"

namespace modspace {

namespace {

constexpr double kBinSlack = 1e-9;

std::ptrdiff_t min_signed(const Grid& g) { return -static_cast<std::ptrdiff_t>(g.size() / 2); }
std::ptrdiff_t max_signed(const Grid& g) {
  return static_cast<std::ptrdiff_t>(g.size()) - static_cast<std::ptrdiff_t>(g.size() / 2) - 1;
}

bool meets_band(const Interval& w, const Grid& grid) {
  return w.right > grid.band_min() && w.left < grid.band_max();
}

void require_inside_band(const IntervalCollection& omega, const Grid& grid) {
  const double slack = kBinSlack * grid.dxi();
  for (const auto& w : omega.intervals()) {
    require(w.left >= grid.band_min() - slack && w.right <= grid.band_max() + slack, ErrorCode::BandOverflow,
            "interval family does not fit inside the frequency band");
  }
}

}  // namespace

// ---- Symbol -----------------------------------------------------------------

Symbol::Symbol(Grid grid, std::vector<Complex> values, std::string label)
    : grid_(grid), values_(std::move(values)), label_(std::move(label)) {
  require(values_.size() == grid_.size(), ErrorCode::InvalidArgument, "symbol length must equal N");
  for (const auto& z : values_) {
    require(std::isfinite(z.real()) && std::isfinite(z.imag()), ErrorCode::InvalidArgument,
            "symbol values must be finite");
  }
}

Symbol Symbol::constant(const Grid& grid, Complex c, std::string label) {
  return {grid, std::vector<Complex>(grid.size(), c), std::move(label)};
}

double Symbol::sup_norm() const noexcept {
  double m = 0.0;
  for (const auto& z : values_) m = std::max(m, std::abs(z));
  return m;
}

Symbol Symbol::with_warning(std::string w) const {
  Symbol s = *this;
  s.warning_ = std::move(w);
  return s;
}

Symbol operator*(const Symbol& a, const Symbol& b) {
  require_same_grid(a.grid(), b.grid());
  std::vector<Complex> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a[j] * b[j];
  return {a.grid(), std::move(v), a.label() + "*" + b.label()};
}

Symbol conj(const Symbol& m) {
  std::vector<Complex> v(m.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::conj(m[j]);
  return {m.grid(), std::move(v), "conj(" + m.label() + ")"};
}

Symbol translate_symbol(const Symbol& m, std::ptrdiff_t bins) {
  const auto n = static_cast<std::ptrdiff_t>(m.size());
  std::vector<Complex> v(m.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = m[static_cast<std::size_t>(((j - bins) % n + n) % n)];
  return {m.grid(), std::move(v), "tau(" + m.label() + ")"};
}

Symbol modulate_symbol(const Symbol& m, std::ptrdiff_t x) {
  std::vector<Complex> v(m.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = root_of_unity(x * static_cast<std::int64_t>(j), m.size()) * m[j];
  return {m.grid(), std::move(v), "M(" + m.label() + ")"};
}

// ---- intervals --------------------------------------------------------------

IntervalCollection::IntervalCollection(std::vector<Interval> intervals, std::vector<std::int64_t> labels)
    : intervals_(std::move(intervals)), labels_(std::move(labels)) {
  require(labels_.empty() || labels_.size() == intervals_.size(), ErrorCode::LengthMismatch,
          "one label per interval");
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& w = intervals_[i];
    require(std::isfinite(w.left) && std::isfinite(w.right) && w.right > w.left, ErrorCode::InvalidArgument,
            "intervals must be nonempty and finite");
    if (i > 0) {
      require(intervals_[i - 1].left < w.left, ErrorCode::InvalidArgument, "intervals must be sorted");
      require(intervals_[i - 1].right <= w.left, ErrorCode::InvalidArgument, "intervals must be disjoint");
    }
  }
}

IntervalCollection shift_collection(const IntervalCollection& omega, double delta) {
  std::vector<Interval> w;
  w.reserve(omega.size());
  for (const auto& i : omega.intervals()) w.push_back({i.left + delta, i.right + delta});
  return IntervalCollection(std::move(w), omega.labels());
}

bool bin_in_interval(const Grid& grid, std::size_t bin, const Interval& w) {
  const double k = static_cast<double>(grid.signed_bin(bin));
  const double b = grid.bins_per_unit();
  return k >= w.left * b - kBinSlack && k < w.right * b - kBinSlack;
}

std::vector<std::size_t> bins_in_interval(const Grid& grid, const Interval& w) {
  const double b = grid.bins_per_unit();
  auto lo = static_cast<std::ptrdiff_t>(std::ceil(w.left * b - kBinSlack));
  auto hi = static_cast<std::ptrdiff_t>(std::ceil(w.right * b - kBinSlack)) - 1;
  lo = std::max(lo, min_signed(grid));
  hi = std::min(hi, max_signed(grid));
  std::vector<std::size_t> bins;
  for (std::ptrdiff_t k = lo; k <= hi; ++k) bins.push_back(grid.bin_of_signed(k));
  return bins;
}

void require_bin_resolvable(const IntervalCollection& omega, const Grid& grid) {
  const double b = grid.bins_per_unit();
  for (const auto& w : omega.intervals()) {
    if (!meets_band(w, grid)) continue;
    require(w.length() * b >= 2.0 - kBinSlack, ErrorCode::AliasedCollection,
            "interval narrower than two frequency bins");
  }
}

// ---- symbol constructors ----------------------------------------------------

Symbol sym_indicator(const Interval& w, const Grid& grid) {
  std::vector<Complex> v(grid.size());
  for (std::size_t j : bins_in_interval(grid, w)) v[j] = 1.0;
  return {grid, std::move(v), "indicator"};
}

Symbol sym_sgn(const Grid& grid) {
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  std::vector<Complex> v(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto k = grid.signed_bin(j);
    if (k == 0 || (n % 2 == 0 && k == -n / 2)) continue;
    v[j] = k > 0 ? 1.0 : -1.0;
  }
  return {grid, std::move(v), "sgn"};
}

Symbol sym_chirp(double alpha, const Grid& grid) {
  std::vector<Complex> v(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double phase = std::pow(std::abs(grid.frequency(j)), alpha);
    v[j] = {std::cos(phase), std::sin(phase)};
  }
  Symbol s(grid, std::move(v), "chirp");
  if (alpha < 0.0 || alpha > 2.0) return s.with_warning("chirp exponent outside [0, 2]");
  return s;
}

Symbol sym_block_sum(const IntervalCollection& omega, std::span<const Complex> coeffs, const Grid& grid) {
  require(coeffs.size() == omega.size(), ErrorCode::LengthMismatch, "one coefficient per interval");
  require_bin_resolvable(omega, grid);
  std::vector<Complex> v(grid.size());
  for (std::size_t n = 0; n < omega.size(); ++n) {
    for (std::size_t j : bins_in_interval(grid, omega[n])) v[j] += coeffs[n];
  }
  return {grid, std::move(v), "block_sum"};
}

// ---- interval families ------------------------------------------------------

IntervalCollection collection_unit(std::size_t count, const Grid& grid) {
  std::vector<Interval> w;
  for (std::size_t n = 0; n < count; ++n) w.push_back({static_cast<double>(n), static_cast<double>(n + 1)});
  IntervalCollection omega(std::move(w));
  require_inside_band(omega, grid);
  return omega;
}

IntervalCollection collection_dyadic(std::size_t levels, const Grid& grid, double base) {
  require(base > 0.0, ErrorCode::InvalidArgument, "dyadic base must be positive");
  std::vector<Interval> w;
  std::vector<std::int64_t> labels;
  for (std::size_t n = levels; n-- > 0;) {
    const double lo = base * std::ldexp(1.0, static_cast<int>(n));
    w.push_back({-2.0 * lo, -lo});
    labels.push_back(-static_cast<std::int64_t>(n) - 1);
  }
  for (std::size_t n = 0; n < levels; ++n) {
    const double lo = base * std::ldexp(1.0, static_cast<int>(n));
    w.push_back({lo, 2.0 * lo});
    labels.push_back(static_cast<std::int64_t>(n) + 1);
  }
  IntervalCollection omega(std::move(w), std::move(labels));
  require_inside_band(omega, grid);
  return omega;
}

CellRule CellRule::fixed(double lo, double hi) {
  require(lo >= 0.0 && hi <= 1.0 && hi > lo, ErrorCode::InvalidArgument, "cell rule must lie inside [0, 1]");
  return {[lo, hi](std::int64_t n) {
    const double base = static_cast<double>(n);
    return Interval{base + lo, base + hi};
  }};
}

IntervalCollection collection_within_cells(const CellRule& rule, const Grid& grid, std::optional<std::int64_t> first,
                                           std::optional<std::size_t> count) {
  const auto lo_cell = static_cast<std::int64_t>(std::ceil(grid.band_min()));
  const auto hi_cell = static_cast<std::int64_t>(std::floor(grid.band_max()));  // exclusive
  const std::int64_t start = first.value_or(lo_cell);
  const std::int64_t stop = count ? start + static_cast<std::int64_t>(*count) : hi_cell;
  std::vector<Interval> w;
  std::vector<std::int64_t> labels;
  for (std::int64_t n = start; n < stop; ++n) {
    const Interval piece = rule.place(n);
    require(piece.left >= static_cast<double>(n) && piece.right <= static_cast<double>(n + 1) &&
                piece.right > piece.left,
            ErrorCode::InvalidArgument, "cell rule placed an interval outside its cell");
    w.push_back(piece);
    labels.push_back(n);
  }
  IntervalCollection omega(std::move(w), std::move(labels));
  require_inside_band(omega, grid);
  return omega;
}

IntervalCollection collection_ex1(int depth) {
  require(depth >= 1 && depth <= 26, ErrorCode::InvalidArgument, "depth must lie in [1, 26]");
  std::vector<Interval> w;
  std::vector<std::int64_t> labels;
  for (int n = depth; n >= 1; --n) {
    const double start = std::ldexp(1.0, -n);
    const double piece = std::ldexp(1.0, -2 * n);
    const std::int64_t pieces = std::int64_t{1} << n;
    for (std::int64_t m = 1; m <= pieces; ++m) {
      w.push_back({start + static_cast<double>(m - 1) * piece, start + static_cast<double>(m) * piece});
      labels.push_back(n);
    }
  }
  return IntervalCollection(std::move(w), std::move(labels));
}

IntervalCollection collection_ex1(int depth, const Grid& grid) {
  require(depth >= 1, ErrorCode::InvalidArgument, "depth must be at least 1");
  require(std::ldexp(grid.bins_per_unit(), -2 * depth) >= 2.0 - kBinSlack, ErrorCode::DepthOverflow,
          "finest nested piece spans fewer than two bins");
  IntervalCollection omega = collection_ex1(depth);
  require_inside_band(omega, grid);
  return omega;
}

IntervalCollection collection_random(std::size_t count, const Grid& grid, double lo, double hi, std::size_t min_bins,
                                     std::uint64_t seed) {
  require(min_bins >= 2, ErrorCode::AliasedCollection, "random intervals need at least two bins");
  const double b = grid.bins_per_unit();
  const auto k_lo = static_cast<std::int64_t>(std::ceil(lo * b - kBinSlack));
  const auto k_hi = static_cast<std::int64_t>(std::floor(hi * b + kBinSlack));
  const std::int64_t span = k_hi - k_lo;
  require(span >= static_cast<std::int64_t>(count * min_bins), ErrorCode::BandOverflow,
          "range too short for the requested intervals");
  // Distribute the slack bins at random among count+1 gaps and count widths.
  std::mt19937_64 rng(detail::mix_seed(seed, 0x72616e64ULL));
  const std::int64_t slack = span - static_cast<std::int64_t>(count * min_bins);
  std::vector<std::int64_t> cuts(2 * count);
  std::uniform_int_distribution<std::int64_t> pick(0, slack);
  for (auto& c : cuts) c = pick(rng);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Interval> w;
  std::int64_t prev_cut = 0;
  std::int64_t pos = k_lo;
  for (std::size_t n = 0; n < count; ++n) {
    pos += cuts[2 * n] - prev_cut;  // gap
    const std::int64_t width = static_cast<std::int64_t>(min_bins) + cuts[2 * n + 1] - cuts[2 * n];
    w.push_back({static_cast<double>(pos) / b, static_cast<double>(pos + width) / b});
    pos += width;
    prev_cut = cuts[2 * n + 1];
  }
  IntervalCollection omega(std::move(w));
  require_inside_band(omega, grid);
  return omega;
}

// ---- partitions of unity ----------------------------------------------------

namespace {

double standard_bump(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - x * x));
}

// Smooth step from 0 at t <= 0 to 1 at t >= 1 with s(t) + s(1 - t) = 1.
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double flat_bump(double x) {
  const double ax = std::abs(x);
  if (ax <= 0.25) return 1.0;
  if (ax >= 0.75) return 0.0;
  return 1.0 - smooth_step((ax - 0.25) / 0.5);
}

double raw_profile(BumpProfile profile, double x) {
  return profile == BumpProfile::standard ? standard_bump(x) : flat_bump(x);
}

// sum_j raw(x - j) over the (at most two) translates meeting x.
double periodic_sum(BumpProfile profile, double x) {
  const double f = std::floor(x);
  return raw_profile(profile, x - f) + raw_profile(profile, x - f - 1.0) + raw_profile(profile, x - f + 1.0);
}

}  // namespace

double bump_profile_value(BumpProfile profile, double x) {
  const double raw = raw_profile(profile, x);
  if (raw == 0.0) return 0.0;
  return raw / periodic_sum(profile, x);
}

BlockPartition::BlockPartition(Grid grid, std::vector<Block> blocks, BumpProfile profile, double step)
    : grid_(grid), blocks_(std::move(blocks)), profile_(profile), step_(step) {
  for (const auto& b : blocks_) {
    require(b.bins.size() == b.weights.size(), ErrorCode::InvalidArgument, "block bins/weights mismatch");
    for (std::size_t j : b.bins) require(j < grid_.size(), ErrorCode::InvalidArgument, "block bin out of range");
  }
}

Symbol BlockPartition::symbol(std::size_t i) const {
  std::vector<Complex> v(grid_.size());
  const auto& b = blocks_[i];
  for (std::size_t s = 0; s < b.bins.size(); ++s) v[b.bins[s]] = b.weights[s];
  return {grid_, std::move(v), "phi_" + std::to_string(b.k)};
}

double BlockPartition::partition_error() const {
  std::vector<double> total(grid_.size(), 0.0);
  for (const auto& b : blocks_) {
    for (std::size_t s = 0; s < b.bins.size(); ++s) total[b.bins[s]] += b.weights[s];
  }
  double err = 0.0;
  for (double t : total) err = std::max(err, std::abs(t - 1.0));
  return err;
}

BlockPartition partition_bumps(const Grid& grid, BumpProfile profile, double step) {
  require(step > 0.0, ErrorCode::InvalidArgument, "partition step must be positive");
  require(grid.band_max() - grid.band_min() >= 4.0 * step, ErrorCode::BandTooNarrow,
          "band narrower than four partition steps");
  const auto k_lo = static_cast<std::int64_t>(std::floor(grid.band_min() / step)) - 1;
  const auto k_hi = static_cast<std::int64_t>(std::ceil(grid.band_max() / step)) + 1;
  std::vector<BlockPartition::Block> blocks;
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    BlockPartition::Block blk{k, {}, {}};
    // support of phi_k is inside [(k-1) step, (k+1) step]
    for (std::size_t j : bins_in_interval(grid, {(static_cast<double>(k) - 1.0) * step,
                                                 (static_cast<double>(k) + 1.0) * step + grid.dxi()})) {
      const double w = bump_profile_value(profile, grid.frequency(j) / step - static_cast<double>(k));
      if (w != 0.0) {
        blk.bins.push_back(j);
        blk.weights.push_back(w);
      }
    }
    if (!blk.bins.empty()) blocks.push_back(std::move(blk));
  }
  return {grid, std::move(blocks), profile, step};
}

}  // namespace modspace
