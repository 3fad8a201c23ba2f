#pragma once

// Fourier multipliers, Littlewood-Paley pieces, random-sign block multipliers
// and the Khintchine moment used to linearize square functions.

#include <cstdint>
#include <span>
#include <vector>

#include "modspace/core.hpp"
#include "modspace/symbols.hpp"

namespace modspace {

// idft(m . dft(f))
Signal apply_multiplier(const Symbol& m, const Signal& f);

// {S_omega f : omega in Omega} with S_omega the indicator multiplier.
std::vector<Signal> square_function(const IntervalCollection& omega, const Signal& f);

// Sign vector r_n(t), n = 0..count-1, reproducible from (seed, t).
struct RademacherDraw {
  std::vector<int> signs;
  std::uint64_t seed = 0;
  std::uint64_t t = 0;

  static RademacherDraw generate(std::size_t count, std::uint64_t seed, std::uint64_t t);
  // Bit n of `pattern` set means r_n = -1.
  static RademacherDraw from_pattern(std::size_t count, std::uint64_t pattern);

  std::vector<Complex> coefficients() const;
};

// sum_n r_n chi_{omega_n}
Symbol randomized_block_multiplier(const IntervalCollection& omega, const RademacherDraw& draw, const Grid& grid);

// (E |sum_n b_n r_n|^p)^{1/p}.  draws = 0 enumerates all sign patterns
// (at most 20 terms), otherwise a counter-based Monte-Carlo average.
double khintchine_estimate(std::span<const Complex> b, Exponent p, std::size_t draws, std::uint64_t seed);

// {T_m f_n}
std::vector<Signal> mz_extend(const Symbol& m, std::span<const Signal> fs);

}  // namespace modspace
