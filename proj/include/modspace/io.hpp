#pragma once

// Text formats: signals and interval families as JSON, growth curves as CSV.
// Floats are written with 17 significant digits so values round-trip.

#include <string>
#include <string_view>

#include "modspace/core.hpp"
#include "modspace/probe.hpp"
#include "modspace/symbols.hpp"

namespace modspace {

// "%.17g"
std::string format_double(double v);

// {"n": N, "dx": dx, "re": [...], "im": [...]}
std::string signal_to_json(const Signal& f);
Signal signal_from_json(std::string_view text);

// {"intervals": [[l, r], ...]}
std::string intervals_to_json(const IntervalCollection& omega);
IntervalCollection intervals_from_json(std::string_view text);

// size,estimate,witness,method,seed
std::string growth_curve_to_csv(const GrowthCurve& curve);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace modspace
