// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "modspace/constants.hpp"
#include "modspace/engine.hpp"
#include "modspace/experiments.hpp"
#include "modspace/probe.hpp"
#include "modspace/signals.hpp"

using namespace modspace;
namespace c = modspace::constants;

namespace {

constexpr std::uint64_t kSeed = 1;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Timed {
  ExperimentResult result;
  double seconds = 0.0;
};

Timed run_timed(ExperimentConfig cfg) {
  const auto t0 = Clock::now();
  Timed t{run_experiment(cfg), 0.0};
  t.seconds = seconds_since(t0);
  return t;
}

const AssertionResult* find_assertion(const ExperimentResult& r, const std::string& prefix) {
  for (const auto& a : r.assertions) {
    if (a.name.rfind(prefix, 0) == 0) return &a;
  }
  return nullptr;
}

bool assertion_ok(const ExperimentResult& r, const std::string& prefix, std::string& detail) {
  const auto* a = find_assertion(r, prefix);
  if (a == nullptr) {
    detail += fmt::format(" [{}: missing]", prefix);
    return false;
  }
  detail += fmt::format(" [{} {:.6g} vs {:.6g}]", a->name, a->value, a->threshold);
  return a->enforced && a->passed;
}

int failures = 0;

void report(int id, bool ok, const std::string& title, const std::string& detail) {
  std::printf("%s criterion %d: %s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::uint64_t result_digest(const ExperimentResult& r) {
  std::string all = r.manifest;
  for (const auto& a : r.artifacts) all += a.filename + '\0' + a.contents + '\0';
  return fnv1a(all);
}

void criterion_identities() {
  bool ok = true;
  std::string detail;
  const auto t0 = Clock::now();
  for (std::size_t n : {8, 16, 64}) {
    ExperimentConfig cfg{.name = "stft-identities", .seed = kSeed};
    cfg.grid_n = n;
    cfg.budget = 50;
    const auto r = run_experiment(cfg);
    detail += fmt::format(" N={}:", n);
    for (const char* k : {"stft_forms_agree", "orthogonality", "inversion"}) {
      const auto* a = find_assertion(r, k);
      ok = ok && a != nullptr && a->passed;
      if (a != nullptr) detail += fmt::format(" {}={:.2e}", k, a->value);
    }
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < 10.0;
  report(1, ok, "exact STFT identities", fmt::format("{} time={:.2f}s", detail, secs));
}

void criterion_equivalence(const Timed& t) {
  bool ok = t.result.passed() && t.seconds < 30.0;
  std::size_t checked = 0;
  double widest = 0.0;
  for (const auto& a : t.result.assertions) {
    ok = ok && a.enforced;
    ++checked;
    if (a.name.find("width") != std::string::npos) widest = std::max(widest, a.value);
  }
  ok = ok && checked == 9 * 3 * 2;
  report(2, ok, "norm-definition equivalence",
         fmt::format(" checks={} widest_bracket={:.3f} time={:.2f}s", checked, widest, t.seconds));
}

void criterion_embedding(const Timed& t) {
  std::string detail;
  bool ok = assertion_ok(t.result, "blocks nonincreasing", detail);
  ok = assertion_ok(t.result, "M22 equals L2", detail) && ok;
  report(3, ok, "embedding monotonicity and M22 = L2", detail);
}

void criterion_multiplier_algebra() {
  bool ok = true;
  std::string detail;
  // Composition against the product symbol.
  const Grid g(256, 1.0 / 16.0);
  double comp = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Signal v = make_noise(g, 500 + s, 0, std::nullopt);
    const Symbol m1(g, {v.samples().begin(), v.samples().end()});
    const Symbol m2 = sym_chirp(1.0 + 0.05 * static_cast<double>(s), g);
    const Signal f = make_noise(g, 600 + s, 0, std::nullopt);
    const Signal lhs = apply_multiplier(m1, apply_multiplier(m2, f));
    const Signal rhs = apply_multiplier(m1 * m2, f);
    comp = std::max(comp, max_abs_diff(lhs, rhs) / std::max(m1.sup_norm(), 1.0));
  }
  ok = ok && comp <= c::kCompositionTolerance;
  detail += fmt::format(" composition={:.2e}", comp);

  double l2 = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Signal v = make_noise(g, 700 + s, 0, std::nullopt);
    const Symbol m(g, {v.samples().begin(), v.samples().end()});
    l2 = std::max(l2, std::abs(opnorm_exact_l2(multiplier_operator(m)) - m.sup_norm()) / m.sup_norm());
  }
  ok = ok && l2 <= c::kExactL2Tolerance;
  detail += fmt::format(" exact_l2={:.2e}", l2);

  // Frequency translation and modulation of the symbol.
  const auto omega = collection_unit(4, g);
  const auto signs = RademacherDraw::generate(4, kSeed, 0).coefficients();
  const Symbol base = sym_block_sum(omega, signs, g);
  const auto lp4 = NormSpec::lp(4.0);
  const auto blocks = NormSpec::blocks({4.0, 1.0, NormMode::discrete});
  const auto bins = static_cast<std::ptrdiff_t>(g.bins_per_unit());
  struct Case {
    const char* name;
    LinearOperator original;
    LinearOperator moved;
    const NormSpec* norm;
  };
  const Symbol chirp = sym_chirp(2.0, g);
  std::vector<Case> cases;
  cases.push_back({"translate_Lp", block_multiplier_operator(omega, signs, g),
                   block_multiplier_operator(shift_collection(omega, 2.0), signs, g), &lp4});
  cases.push_back({"modulate_Lp", block_multiplier_operator(omega, signs, g),
                   multiplier_operator(modulate_symbol(base, 37), omega, signs), &lp4});
  cases.push_back({"translate_M41", multiplier_operator(chirp), multiplier_operator(translate_symbol(chirp, 2 * bins)),
                   &blocks});
  cases.push_back({"modulate_M41", multiplier_operator(chirp), multiplier_operator(modulate_symbol(chirp, 37)),
                   &blocks});
  double worst = 0.0;
  for (const auto& k : cases) {
    const double a = opnorm_probe(k.original, *k.norm, *k.norm, 16, kSeed).value;
    const double b = opnorm_probe(k.moved, *k.norm, *k.norm, 16, kSeed).value;
    const double dev = std::abs(b - a) / a;
    worst = std::max(worst, dev);
    detail += fmt::format(" {}={:.4f}/{:.4f}", k.name, a, b);
  }
  ok = ok && worst <= c::kShiftTolerance;
  detail += fmt::format(" worst_shift={:.4f}", worst);
  report(4, ok, "multiplier algebra", detail);
}

void criterion_bounded(const Timed& chirp, const Timed& blocks) {
  std::string detail;
  bool ok = assertion_ok(chirp.result, "chirp variation", detail);
  ok = assertion_ok(blocks.result, "modulation-space variation", detail) && ok;
  report(5, ok, "bounded families on M41", detail);
}

void criterion_unbounded(const Timed& blocks, const Timed& ex1, const Timed& dyadic) {
  std::string detail;
  bool ok = assertion_ok(blocks.result, "Lebesgue growth", detail);
  ok = assertion_ok(ex1.result, "square function growth", detail) && ok;
  ok = assertion_ok(dyadic.result, "dyadic variation", detail) && ok;
  report(6, ok, "unboundedness trends", detail);
}

void criterion_vector(const Timed& mz, const Timed& kh) {
  bool ok = mz.result.passed() && kh.result.passed() && !mz.result.assertions.empty() && !kh.result.assertions.empty();
  double worst_mz = 0.0;
  double worst_kh = 0.0;
  for (const auto& a : mz.result.assertions) worst_mz = std::max(worst_mz, a.value);
  for (const auto& a : kh.result.assertions) worst_kh = std::max(worst_kh, a.value);
  report(7, ok, "vector-valued extension and Khintchine",
         fmt::format(" mz_ratio={:.4f} (C={:.4f}) khintchine_rel={:.4f} (tol {:.2f})", worst_mz, c::kMzConstant,
                     worst_kh, c::kKhintchineTolerance));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion_identities();

  std::map<std::string, Timed> first;
  for (const auto& name : preset_names()) first.emplace(name, run_timed({.name = name, .seed = kSeed}));

  criterion_equivalence(first.at("norm-equivalence"));
  criterion_embedding(first.at("embedding-monotonicity"));
  criterion_multiplier_algebra();
  criterion_bounded(first.at("chirp"), first.at("blocks"));
  criterion_unbounded(first.at("blocks"), first.at("ex1"), first.at("dyadic-lp"));
  criterion_vector(first.at("mz"), first.at("khintchine"));

  bool same = true;
  std::string detail;
  for (const auto& name : preset_names()) {
    const auto again = run_experiment({.name = name, .seed = kSeed});
    const bool eq = result_digest(again) == result_digest(first.at(name).result);
    same = same && eq;
    if (!eq) detail += " " + name + " differs";
  }
  report(8, same, "deterministic presets", fmt::format(" presets={}{}", preset_names().size(), detail));

  for (const auto& [name, t] : first) {
    for (const auto& a : t.result.assertions) {
      std::printf("  %-22s %-4s %s value=%.6g threshold=%.6g%s\n", name.c_str(), a.passed ? "ok" : "miss",
                  a.name.c_str(), a.value, a.threshold, a.enforced ? "" : " (reported)");
    }
    std::printf("  %-22s time=%.2fs\n", name.c_str(), t.seconds);
  }
  std::printf("total time %.1fs, %d failing\n", seconds_since(t0), failures);
  return failures == 0 ? 0 : 1;
}
