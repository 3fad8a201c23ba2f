#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modspace/engine.hpp"
#include "modspace/experiments.hpp"
#include "modspace/io.hpp"
#include "modspace/modnorm.hpp"
#include "modspace/probe.hpp"
#include "modspace/signals.hpp"

namespace py = pybind11;
using namespace modspace;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

Exponent to_exponent(const py::object& v) {
  if (py::isinstance<py::str>(v)) {
    const auto s = v.cast<std::string>();
    if (s == "inf") return Exponent::infinity();
    return Exponent(std::stod(s));
  }
  const double d = v.cast<double>();
  return std::isinf(d) ? Exponent::infinity() : Exponent(d);
}

NormMode to_mode(const std::string& m) {
  if (m == "discrete") return NormMode::discrete;
  if (m == "continuum") return NormMode::continuum;
  raise(ErrorCode::InvalidArgument, "mode must be discrete or continuum");
}

MixedNormParams params(const py::object& p, const py::object& q, const std::string& mode) {
  return {to_exponent(p), to_exponent(q), to_mode(mode)};
}

ComplexArray to_array(std::span<const Complex> v) {
  ComplexArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Signal from_array(const Grid& grid, const ComplexArray& a) {
  require(a.ndim() == 1, ErrorCode::InvalidArgument, "samples must be one-dimensional");
  return {grid, std::vector<Complex>(a.data(), a.data() + a.size())};
}

}  // namespace

PYBIND11_MODULE(_modspace, m) {
  m.doc() = "Modulation-space norms and multiplier experiments on Z_N";
  m.attr("__version__") = kToolkitVersion;

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      py::object instance = exc(e.what());
      instance.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), instance.ptr());
    }
  });

  py::class_<Grid>(m, "Grid")
      .def(py::init([](std::size_t n, double dx) { return Grid(n, dx); }), py::arg("n"), py::arg("dx"))
      .def_property_readonly("n", &Grid::size)
      .def_property_readonly("dx", &Grid::dx)
      .def_property_readonly("dxi", &Grid::dxi)
      .def_property_readonly("band", [](const Grid& g) { return py::make_tuple(g.band_min(), g.band_max()); })
      .def("__eq__", [](const Grid& a, const Grid& b) { return a == b; })
      .def("__repr__", [](const Grid& g) { return "Grid(n=" + std::to_string(g.size()) + ", dx=" + format_double(g.dx()) + ")"; });

  py::class_<Signal>(m, "Signal")
      .def(py::init(&from_array), py::arg("grid"), py::arg("samples"))
      .def_property_readonly("grid", &Signal::grid)
      .def_property_readonly("samples", [](const Signal& f) { return to_array(f.samples()); })
      .def("__len__", &Signal::size)
      .def("to_json", &signal_to_json)
      .def_static("from_json", [](const std::string& s) { return signal_from_json(s); });

  py::class_<Window>(m, "Window")
      .def(py::init<Signal>(), py::arg("signal"))
      .def_property_readonly("signal", &Window::signal)
      .def_property_readonly("l2_norm", &Window::l2_norm);

  m.def("gaussian", &make_gaussian, py::arg("grid"), py::arg("center") = 0.0, py::arg("width") = std::nullopt,
        py::arg("k") = 0);
  m.def("noise", py::overload_cast<const Grid&, std::uint64_t, std::uint64_t, std::optional<std::size_t>>(&make_noise),
        py::arg("grid"), py::arg("seed"), py::arg("t") = 0, py::arg("band") = std::nullopt);
  m.def("gaussian_window", &gaussian_window, py::arg("grid"), py::arg("width") = std::nullopt);

  m.def("dft", [](const Signal& f) { return to_array(dft(f).samples()); });
  m.def("lp_norm", [](const Signal& f, const py::object& p, const std::string& mode) {
    return lp_norm(f, to_exponent(p), to_mode(mode));
  }, py::arg("f"), py::arg("p"), py::arg("mode") = "discrete");
  m.def("stft", [](const Signal& f, const Window& g) {
    const TFMatrix v = stft(f, g);
    const auto n = static_cast<py::ssize_t>(v.size());
    ComplexArray out({n, n});
    std::copy(v.entries().begin(), v.entries().end(), out.mutable_data());
    return out;
  });

  m.def("mod_norm_stft", [](const Signal& f, const Window& g, const py::object& p, const py::object& q,
                            const std::string& mode) { return mod_norm_stft(f, g, params(p, q, mode)); },
        py::arg("f"), py::arg("window"), py::arg("p"), py::arg("q"), py::arg("mode") = "discrete");
  m.def("mod_norm_blocks", [](const Signal& f, const py::object& p, const py::object& q, const std::string& mode) {
    return mod_norm_blocks(f, partition_bumps(f.grid()), params(p, q, mode));
  }, py::arg("f"), py::arg("p"), py::arg("q"), py::arg("mode") = "discrete");
  m.def("mod_norm_gabor", [](const Signal& f, std::size_t a, std::size_t b, const py::object& p, const py::object& q,
                             const std::string& mode) {
    return mod_norm_gabor(f, GaborSystem(gaussian_window(f.grid()), a, b), params(p, q, mode));
  }, py::arg("f"), py::arg("a"), py::arg("b"), py::arg("p"), py::arg("q"), py::arg("mode") = "discrete");
  m.def("frame_bounds", [](const Signal& g, std::size_t a, std::size_t b) {
    const auto fb = frame_bounds(GaborSystem(Window(g), a, b));
    return py::make_tuple(fb.lower, fb.upper);
  }, py::arg("window"), py::arg("a"), py::arg("b"));

  m.def("apply_multiplier", [](const ComplexArray& symbol, const Signal& f) {
    return apply_multiplier(Symbol(f.grid(), std::vector<Complex>(symbol.data(), symbol.data() + symbol.size())), f);
  }, py::arg("symbol"), py::arg("f"));
  m.def("sgn_symbol", [](const Grid& g) { return to_array(sym_sgn(g).values()); });
  m.def("chirp_symbol", [](const Grid& g, double alpha) { return to_array(sym_chirp(alpha, g).values()); },
        py::arg("grid"), py::arg("alpha") = 2.0);

  m.def("khintchine", [](const std::vector<Complex>& b, const py::object& p, std::size_t draws, std::uint64_t seed) {
    return khintchine_estimate(b, to_exponent(p), draws, seed);
  }, py::arg("b"), py::arg("p"), py::arg("draws") = 0, py::arg("seed") = 0);

  m.def("multiplier_norm_lp", [](const ComplexArray& symbol, const Grid& g, const py::object& p, std::size_t budget,
                                 std::uint64_t seed) {
    const auto op = multiplier_operator(Symbol(g, std::vector<Complex>(symbol.data(), symbol.data() + symbol.size())));
    const auto spec = NormSpec::lp(to_exponent(p));
    const auto est = opnorm_probe(op, spec, spec, budget, seed);
    return py::make_tuple(est.value, est.witness);
  }, py::arg("symbol"), py::arg("grid"), py::arg("p"), py::arg("budget") = 16, py::arg("seed") = 0);

  m.def("preset_names", &preset_names);
  m.def("run_experiment", [](const std::string& name, std::uint64_t seed, std::optional<std::size_t> budget) {
    ExperimentConfig cfg;
    cfg.name = name;
    cfg.seed = seed;
    cfg.budget = budget;
    const auto r = run_experiment(cfg);
    py::dict artifacts;
    for (const auto& a : r.artifacts) artifacts[py::str(a.filename)] = a.contents;
    py::list assertions;
    for (const auto& a : r.assertions) {
      py::dict d;
      d["name"] = a.name;
      d["enforced"] = a.enforced;
      d["passed"] = a.passed;
      d["value"] = a.value;
      d["threshold"] = a.threshold;
      assertions.append(d);
    }
    py::dict out;
    out["passed"] = r.passed();
    out["manifest"] = r.manifest;
    out["artifacts"] = artifacts;
    out["assertions"] = assertions;
    return out;
  }, py::arg("name"), py::arg("seed"), py::arg("budget") = std::nullopt);
}
