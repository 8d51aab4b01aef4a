#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "resdecay/amplitudes.hpp"
#include "resdecay/analysis.hpp"
#include "resdecay/cli.hpp"
#include "resdecay/config.hpp"
#include "resdecay/specfun.hpp"

namespace py = pybind11;
using namespace resdecay;

namespace {

// Form factors and quadrature settings cross the boundary as JSON text so the
// Python side shares the CLI's schema and validation.
FormFactor form_factor_arg(const std::string& text) {
  if (text.empty()) return FormFactor::constant(1.0);
  return form_factor_from_json(Json::parse(text));
}

QuadratureConfig quadrature_arg(const std::string& text) {
  if (text.empty()) return {};
  Json doc = {{"quadrature", Json::parse(text)}};
  return parse_run_config(doc).quadrature;
}

AmplitudeModel model_arg(const std::string& model, const std::string& strategy) {
  if (model == "bw_halfline") return AmplitudeModel::halfline(strategy_from_string(strategy));
  if (model == "bw_fullline") return AmplitudeModel::fullline();
  if (model == "complex_delta") return AmplitudeModel::complex_delta();
  fail(ErrorKind::validation, "unknown model '" + model + "'");
}

py::dict integral_dict(const IntegralResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["est_error"] = r.est_error;
  d["evals"] = r.evals;
  d["converged"] = r.converged;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Resonance decay amplitudes: half-line, whole-line and complex-delta models";

  static py::exception<EngineError> engine_error(m, "EngineError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const EngineError& e) {
      py::object err = engine_error;
      py::object inst = err(e.what());
      inst.attr("kind") = std::string(to_string(e.kind()));
      inst.attr("context") = e.context();
      PyErr_SetObject(engine_error.ptr(), inst.ptr());
    } catch (const nlohmann::json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("exp_integral_e1", [](Complex w) { return exp_integral_e1(w).value; }, py::arg("w"));
  m.def("halfline_kernel", &bw_halfline_kernel, py::arg("pole"), py::arg("t"));

  m.def(
      "amplitude",
      [](const std::string& model, double energy, double width, std::vector<double> times,
         const std::string& form_factor, const std::string& strategy, const std::string& quadrature) {
        const Resonance r = Resonance::make(energy, width);
        const AmplitudeSeries s = evaluate_series(form_factor_arg(form_factor), r, times,
                                                  model_arg(model, strategy), quadrature_arg(quadrature));
        return py::make_tuple(s.values, s.errors);
      },
      py::arg("model"), py::arg("energy"), py::arg("width"), py::arg("times"), py::arg("form_factor") = "",
      py::arg("strategy") = "auto", py::arg("quadrature") = "");

  m.def(
      "halfline",
      [](double energy, double width, double t, const std::string& form_factor, const std::string& strategy,
         const std::string& quadrature) {
        return integral_dict(bw_halfline_amp(form_factor_arg(form_factor), Resonance::make(energy, width), t,
                                             quadrature_arg(quadrature), strategy_from_string(strategy)));
      },
      py::arg("energy"), py::arg("width"), py::arg("t"), py::arg("form_factor") = "", py::arg("strategy") = "auto",
      py::arg("quadrature") = "");

  m.def(
      "decompose",
      [](double energy, double width, double t, const std::string& form_factor, const std::string& quadrature) {
        const Decomposition d =
            decompose(form_factor_arg(form_factor), Resonance::make(energy, width), t, quadrature_arg(quadrature));
        py::dict out;
        out["pole_term"] = d.pole_term;
        out["background"] = d.background;
        out["total"] = d.total;
        out["est_error"] = d.est_error;
        return out;
      },
      py::arg("energy"), py::arg("width"), py::arg("t"), py::arg("form_factor") = "", py::arg("quadrature") = "");

  m.def(
      "deviation_report_json",
      [](double energy, double width, double tmin, double tmax, std::size_t points, const std::string& spacing,
         const std::string& form_factor, const std::string& quadrature) {
        const TimeGrid grid = TimeGrid::make(tmin, tmax, points, spacing_from_string(spacing));
        return deviation_json(deviation_report(form_factor_arg(form_factor), Resonance::make(energy, width), grid,
                                               quadrature_arg(quadrature)))
            .dump();
      },
      py::arg("energy"), py::arg("width"), py::arg("tmin"), py::arg("tmax"), py::arg("points"),
      py::arg("spacing") = "logarithmic", py::arg("form_factor") = "", py::arg("quadrature") = "");

  m.def(
      "crossover_time",
      [](double energy, double width, const std::string& form_factor, const std::string& quadrature) {
        return crossover_time(form_factor_arg(form_factor), Resonance::make(energy, width),
                              quadrature_arg(quadrature));
      },
      py::arg("energy"), py::arg("width"), py::arg("form_factor") = "", py::arg("quadrature") = "");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
