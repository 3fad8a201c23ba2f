#include "modspace/io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace modspace {

namespace {

using nlohmann::json;

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorCode::Io, std::string("malformed JSON: ") + e.what());
  }
}

std::vector<double> number_array(const json& j, const char* key) {
  require(j.contains(key) && j.at(key).is_array(), ErrorCode::Io, "missing numeric array");
  std::vector<double> v;
  v.reserve(j.at(key).size());
  for (const auto& x : j.at(key)) {
    require(x.is_number(), ErrorCode::Io, "array entries must be numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

void append_array(std::string& out, std::span<const double> values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_double(values[i]);
  }
  out += ']';
}

}  // namespace

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

std::string signal_to_json(const Signal& f) {
  std::vector<double> re(f.size());
  std::vector<double> im(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    re[i] = f[i].real();
    im[i] = f[i].imag();
  }
  std::string out = fmt::format("{{\"n\": {}, \"dx\": {}, \"re\": ", f.size(), format_double(f.grid().dx()));
  append_array(out, re);
  out += ", \"im\": ";
  append_array(out, im);
  out += "}\n";
  return out;
}

Signal signal_from_json(std::string_view text) {
  const json j = parse(text);
  require(j.is_object() && j.contains("n") && j.contains("dx"), ErrorCode::Io, "signal needs n and dx");
  require(j.at("n").is_number_integer() && j.at("dx").is_number(), ErrorCode::Io, "bad n or dx");
  const auto n = j.at("n").get<std::int64_t>();
  const double dx = j.at("dx").get<double>();
  const auto re = number_array(j, "re");
  const auto im = number_array(j, "im");
  require(n >= 2 && dx > 0.0, ErrorCode::Io, "signal needs n >= 2 and dx > 0");
  require(re.size() == static_cast<std::size_t>(n) && im.size() == re.size(), ErrorCode::Io,
          "sample arrays must have n entries");
  std::vector<Complex> v(re.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = {re[i], im[i]};
  try {
    return {Grid(static_cast<std::size_t>(n), dx), std::move(v)};
  } catch (const Error& e) {
    raise(ErrorCode::Io, e.what());
  }
}

std::string intervals_to_json(const IntervalCollection& omega) {
  std::string out = "{\"intervals\": [";
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (i > 0) out += ", ";
    out += fmt::format("[{}, {}]", format_double(omega[i].left), format_double(omega[i].right));
  }
  out += "]}\n";
  return out;
}

IntervalCollection intervals_from_json(std::string_view text) {
  const json j = parse(text);
  require(j.is_object() && j.contains("intervals") && j.at("intervals").is_array(), ErrorCode::Io,
          "expected an intervals array");
  std::vector<Interval> w;
  for (const auto& pair : j.at("intervals")) {
    require(pair.is_array() && pair.size() == 2 && pair[0].is_number() && pair[1].is_number(), ErrorCode::Io,
            "each interval is a pair of numbers");
    w.push_back({pair[0].get<double>(), pair[1].get<double>()});
  }
  try {
    return IntervalCollection(std::move(w));
  } catch (const Error& e) {
    raise(ErrorCode::Io, e.what());
  }
}

std::string growth_curve_to_csv(const GrowthCurve& curve) {
  std::string out = "size,estimate,witness,method,seed\n";
  for (std::size_t i = 0; i < curve.sizes.size(); ++i) {
    const auto& e = curve.estimates[i];
    out += fmt::format("{},{},{},{},{}\n", curve.sizes[i], format_double(e.value), e.witness, to_string(e.method),
                       curve.seed);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::Io, ("cannot open " + path).c_str());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::Io, ("cannot write " + path).c_str());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  require(static_cast<bool>(out), ErrorCode::Io, ("short write to " + path).c_str());
}

}  // namespace modspace
