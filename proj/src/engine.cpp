#include "modspace/engine.hpp"

#include <cmath>

#include "modspace/detail/fft.hpp"
#include "modspace/detail/parallel.hpp"
#include "modspace/detail/rng.hpp"
#include "modspace/detail/summation.hpp"

namespace modspace {

using detail::FftDirection;
using detail::fft_inplace;

namespace {

constexpr std::size_t kMaxEnumeration = 20;

double moment_term(std::span<const Complex> b, std::uint64_t pattern, Exponent p) {
  Complex s = 0.0;
  for (std::size_t n = 0; n < b.size(); ++n) s += ((pattern >> n) & 1U) ? -b[n] : b[n];
  return std::pow(std::abs(s), p.value());
}

}  // namespace

Signal apply_multiplier(const Symbol& m, const Signal& f) {
  require_same_grid(m.grid(), f.grid());
  std::vector<Complex> v(f.samples().begin(), f.samples().end());
  fft_inplace(v, FftDirection::forward);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] *= m[j];
  fft_inplace(v, FftDirection::backward);
  const double scale = 1.0 / static_cast<double>(v.size());
  for (auto& z : v) z *= scale;
  return {f.grid(), std::move(v)};
}

std::vector<Signal> square_function(const IntervalCollection& omega, const Signal& f) {
  require_bin_resolvable(omega, f.grid());
  std::vector<Complex> fh(f.samples().begin(), f.samples().end());
  fft_inplace(fh, FftDirection::forward);
  const double scale = 1.0 / static_cast<double>(f.size());
  std::vector<std::vector<Complex>> pieces(omega.size());
  detail::parallel_for(omega.size(), [&](std::size_t n) {
    std::vector<Complex> v(f.size());
    for (std::size_t j : bins_in_interval(f.grid(), omega[n])) v[j] = fh[j];
    fft_inplace(v, FftDirection::backward);
    for (auto& z : v) z *= scale;
    pieces[n] = std::move(v);
  });
  std::vector<Signal> out;
  out.reserve(omega.size());
  for (auto& p : pieces) out.emplace_back(f.grid(), std::move(p));
  return out;
}

RademacherDraw RademacherDraw::generate(std::size_t count, std::uint64_t seed, std::uint64_t t) {
  RademacherDraw d{std::vector<int>(count), seed, t};
  for (std::size_t n = 0; n < count; ++n) d.signs[n] = (detail::counter_word(seed, t, n) >> 63) ? -1 : 1;
  return d;
}

RademacherDraw RademacherDraw::from_pattern(std::size_t count, std::uint64_t pattern) {
  require(count <= 64, ErrorCode::EnumerationTooLarge, "sign patterns hold at most 64 terms");
  RademacherDraw d{std::vector<int>(count), 0, pattern};
  for (std::size_t n = 0; n < count; ++n) d.signs[n] = ((pattern >> n) & 1U) ? -1 : 1;
  return d;
}

std::vector<Complex> RademacherDraw::coefficients() const {
  return {signs.begin(), signs.end()};
}

Symbol randomized_block_multiplier(const IntervalCollection& omega, const RademacherDraw& draw, const Grid& grid) {
  require(draw.signs.size() >= omega.size(), ErrorCode::LengthMismatch, "draw shorter than the collection");
  std::vector<Complex> a(draw.signs.begin(), draw.signs.begin() + static_cast<std::ptrdiff_t>(omega.size()));
  Symbol s = sym_block_sum(omega, a, grid);
  return {grid, std::vector<Complex>(s.values().begin(), s.values().end()), "random_signs"};
}

double khintchine_estimate(std::span<const Complex> b, Exponent p, std::size_t draws, std::uint64_t seed) {
  require(!b.empty(), ErrorCode::EmptyList, "coefficient list is empty");
  if (p.is_infinite()) {
    require(b.size() <= kMaxEnumeration, ErrorCode::EnumerationTooLarge, "sup over signs needs enumeration");
    double best = 0.0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << b.size()); ++s) {
      Complex acc = 0.0;
      for (std::size_t n = 0; n < b.size(); ++n) acc += ((s >> n) & 1U) ? -b[n] : b[n];
      best = std::max(best, std::abs(acc));
    }
    return best;
  }
  detail::CompensatedSum acc;
  double count = 0.0;
  if (draws == 0) {
    require(b.size() <= kMaxEnumeration, ErrorCode::EnumerationTooLarge, "exact enumeration allows at most 20 terms");
    // r_0 = +1 without loss: |sum| is invariant under a global flip.
    const std::uint64_t patterns = std::uint64_t{1} << (b.size() - 1);
    for (std::uint64_t s = 0; s < patterns; ++s) acc.add(moment_term(b, s << 1, p));
    count = static_cast<double>(patterns);
  } else {
    for (std::uint64_t t = 0; t < draws; ++t) {
      Complex s = 0.0;
      for (std::size_t n = 0; n < b.size(); ++n) s += (detail::counter_word(seed, t, n) >> 63) ? -b[n] : b[n];
      acc.add(std::pow(std::abs(s), p.value()));
    }
    count = static_cast<double>(draws);
  }
  return std::pow(acc.value() / count, 1.0 / p.value());
}

std::vector<Signal> mz_extend(const Symbol& m, std::span<const Signal> fs) {
  std::vector<Signal> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(apply_multiplier(m, f));
  return out;
}

}  // namespace modspace
