#pragma once

// Frequency-domain multiplier symbols and the interval families that drive
// block multipliers and square functions.
//
// Bin convention: a bin belongs to the half-open interval [l, r) containing
// its exact center frequency.  Membership is decided in bin units with a
// 1e-9 bin slack so that endpoints landing on a bin center go to the right.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "modspace/core.hpp"

namespace modspace {

class Symbol {
 public:
  Symbol(Grid grid, std::vector<Complex> values, std::string label = {});

  static Symbol constant(const Grid& grid, Complex c, std::string label = "constant");

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const Complex> values() const noexcept { return values_; }
  const Complex& operator[](std::size_t j) const noexcept { return values_[j]; }
  const std::string& label() const noexcept { return label_; }
  double sup_norm() const noexcept;

  // Set when a constructor was called outside its supported parameter range.
  const std::optional<std::string>& warning() const noexcept { return warning_; }
  Symbol with_warning(std::string w) const;

 private:
  Grid grid_;
  std::vector<Complex> values_;
  std::string label_;
  std::optional<std::string> warning_;
};

// Pointwise product, the symbol of T_{m1} o T_{m2}.
Symbol operator*(const Symbol& a, const Symbol& b);
Symbol conj(const Symbol& m);
// (tau_j m)(bin) = m(bin - j)
Symbol translate_symbol(const Symbol& m, std::ptrdiff_t bins);
// (M_x m)(bin) = e^{2 pi i x bin / N} m(bin)
Symbol modulate_symbol(const Symbol& m, std::ptrdiff_t x);

struct Interval {
  double left;
  double right;

  double length() const noexcept { return right - left; }
  bool operator==(const Interval&) const noexcept = default;
};

// Sorted, pairwise-disjoint, nonempty half-open intervals in physical
// frequency units.
class IntervalCollection {
 public:
  IntervalCollection() = default;
  explicit IntervalCollection(std::vector<Interval> intervals, std::vector<std::int64_t> labels = {});

  std::size_t size() const noexcept { return intervals_.size(); }
  bool empty() const noexcept { return intervals_.empty(); }
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  const Interval& operator[](std::size_t i) const noexcept { return intervals_[i]; }
  const std::vector<std::int64_t>& labels() const noexcept { return labels_; }

  bool operator==(const IntervalCollection&) const noexcept = default;

 private:
  std::vector<Interval> intervals_;
  std::vector<std::int64_t> labels_;
};

// Every interval moved by delta in physical frequency.
IntervalCollection shift_collection(const IntervalCollection& omega, double delta);

bool bin_in_interval(const Grid& grid, std::size_t bin, const Interval& w);
// Storage bins whose center frequency lies in w, ordered by frequency.
std::vector<std::size_t> bins_in_interval(const Grid& grid, const Interval& w);
// Throws AliasedCollection when an interval meeting the band spans < 2 bins.
void require_bin_resolvable(const IntervalCollection& omega, const Grid& grid);

Symbol sym_indicator(const Interval& w, const Grid& grid);
Symbol sym_sgn(const Grid& grid);
// e^{i |xi|^alpha}; alpha outside [0, 2] is accepted and flagged.
Symbol sym_chirp(double alpha, const Grid& grid);
Symbol sym_block_sum(const IntervalCollection& omega, std::span<const Complex> coeffs, const Grid& grid);

// {[n, n+1) : n = 0..count-1}
IntervalCollection collection_unit(std::size_t count, const Grid& grid);
// Positive parts [base 2^n, base 2^{n+1}), n = 0..levels-1, plus their
// mirrors [-base 2^{n+1}, -base 2^n).  base = 1 gives the classical family;
// smaller bases are its dilates.
IntervalCollection collection_dyadic(std::size_t levels, const Grid& grid, double base = 1.0);

// Relative placement [lo, hi) inside the unit cell [n, n+1).
struct CellRule {
  std::function<Interval(std::int64_t cell)> place;

  static CellRule fixed(double lo, double hi);
  static CellRule middle_third() { return fixed(1.0 / 3.0, 2.0 / 3.0); }
};

// One subinterval per unit cell n = first .. first+count-1.  Without an explicit
// range every cell inside the band is used.
IntervalCollection collection_within_cells(const CellRule& rule, const Grid& grid,
                                           std::optional<std::int64_t> first = std::nullopt,
                                           std::optional<std::size_t> count = std::nullopt);

// Nested partition of (0, 1): omega_n = [2^-n, 2^-n+1) split into 2^n
// left-packed pieces of length 2^-2n, n = 1..depth.  Labels carry n.
IntervalCollection collection_ex1(int depth);
// Same, validated against a grid (DepthOverflow when the finest piece spans
// fewer than 2 bins, BandOverflow when (0, 1) leaves the band).
IntervalCollection collection_ex1(int depth, const Grid& grid);

// Random disjoint intervals with endpoints on the bin lattice inside
// [lo, hi), each at least `min_bins` wide.  Deterministic in seed.
IntervalCollection collection_random(std::size_t count, const Grid& grid, double lo, double hi,
                                     std::size_t min_bins, std::uint64_t seed);

// ---- partitions of unity ----------------------------------------------------

enum class BumpProfile {
  standard,     // b(x) = exp(-1/(1-x^2)), normalized by its integer translates
  flat_center,  // identically 1 on [-1/4, 1/4], supported in [-3/4, 3/4]
};

double bump_profile_value(BumpProfile profile, double x);

// Translates phi_k = phi(. / step - k) sampled on the grid, restricted to the
// k whose support meets the band.  Each block keeps only its nonzero bins.
class BlockPartition {
 public:
  struct Block {
    std::int64_t k;
    std::vector<std::size_t> bins;
    std::vector<double> weights;
  };

  BlockPartition(Grid grid, std::vector<Block> blocks, BumpProfile profile, double step);

  const Grid& grid() const noexcept { return grid_; }
  BumpProfile profile() const noexcept { return profile_; }
  double step() const noexcept { return step_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  const Block& block(std::size_t i) const noexcept { return blocks_[i]; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  Symbol symbol(std::size_t i) const;
  // max_j | sum_k phi_k(j) - 1 |
  double partition_error() const;

 private:
  Grid grid_;
  std::vector<Block> blocks_;
  BumpProfile profile_;
  double step_;
};

BlockPartition partition_bumps(const Grid& grid, BumpProfile profile = BumpProfile::standard, double step = 1.0);

}  // namespace modspace
