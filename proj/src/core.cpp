#include "resdecay/core.hpp"

#include <cmath>
#include <sstream>

namespace resdecay {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::domain: return "domain";
    case ErrorKind::inadmissible_form_factor: return "inadmissible_form_factor";
    case ErrorKind::quadrature_nonconvergence: return "quadrature_nonconvergence";
    case ErrorKind::branch_cut_hit: return "branch_cut_hit";
  }
  return "unknown";
}

EngineError::EngineError(ErrorKind kind, const std::string& message, std::string context)
    : std::runtime_error(message), kind_(kind), context_(std::move(context)) {}

void fail(ErrorKind kind, const std::string& message, std::string context) {
  throw EngineError(kind, message, std::move(context));
}

double require_finite(double x, std::string_view what) {
  if (!std::isfinite(x)) {
    fail(ErrorKind::validation, std::string(what) + " must be finite");
  }
  return x;
}

Complex require_finite(Complex z, std::string_view what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    fail(ErrorKind::validation, std::string(what) + " must be finite");
  }
  return z;
}

Resonance Resonance::make(double energy, double width) {
  require_finite(energy, "E_R");
  require_finite(width, "Gamma");
  if (energy <= 0.0) {
    std::ostringstream os;
    os << "E_R must be > 0 (got " << energy << ")";
    fail(ErrorKind::validation, os.str(), "make_resonance");
  }
  if (width <= 0.0) {
    std::ostringstream os;
    os << "Gamma must be > 0 (got " << width << ")";
    fail(ErrorKind::validation, os.str(), "make_resonance");
  }
  return Resonance(energy, width);
}

std::string_view to_string(Spacing s) {
  return s == Spacing::linear ? "linear" : "logarithmic";
}

Spacing spacing_from_string(std::string_view name) {
  if (name == "linear") return Spacing::linear;
  if (name == "logarithmic" || name == "log") return Spacing::logarithmic;
  fail(ErrorKind::validation, "unknown spacing '" + std::string(name) + "'");
}

TimeGrid TimeGrid::make(double start, double stop, std::size_t points, Spacing spacing) {
  require_finite(start, "grid start");
  require_finite(stop, "grid stop");
  if (start <= 0.0) fail(ErrorKind::validation, "grid start must be > 0", "make_time_grid");
  if (stop <= start) fail(ErrorKind::validation, "grid stop must exceed start", "make_time_grid");
  if (points < 2) fail(ErrorKind::validation, "grid needs at least 2 points", "make_time_grid");

  std::vector<double> samples(points);
  const double last = static_cast<double>(points - 1);
  if (spacing == Spacing::linear) {
    const double step = (stop - start) / last;
    for (std::size_t i = 0; i < points; ++i) samples[i] = start + step * static_cast<double>(i);
  } else {
    const double log_ratio = std::log(stop / start);
    for (std::size_t i = 0; i < points; ++i) {
      samples[i] = start * std::exp(log_ratio * static_cast<double>(i) / last);
    }
  }
  samples.front() = start;
  samples.back() = stop;
  for (std::size_t i = 1; i < points; ++i) {
    if (!(samples[i] > samples[i - 1]) || !std::isfinite(samples[i])) {
      fail(ErrorKind::validation, "grid resolution too fine for double precision", "make_time_grid");
    }
  }
  return TimeGrid(std::move(samples), spacing);
}

std::string_view to_string(Model m) {
  switch (m) {
    case Model::bw_halfline: return "bw_halfline";
    case Model::bw_fullline: return "bw_fullline";
    case Model::complex_delta: return "complex_delta";
    case Model::background: return "background";
  }
  return "unknown";
}

Model model_from_string(std::string_view name) {
  if (name == "bw_halfline") return Model::bw_halfline;
  if (name == "bw_fullline") return Model::bw_fullline;
  if (name == "complex_delta") return Model::complex_delta;
  if (name == "background") return Model::background;
  fail(ErrorKind::validation, "unknown model '" + std::string(name) + "'");
}

void AmplitudeSeries::validate() const {
  if (values.size() != times.size()) {
    fail(ErrorKind::validation, "amplitude series length does not match its grid");
  }
  if (!errors.empty() && errors.size() != values.size()) {
    fail(ErrorKind::validation, "error column length does not match the series");
  }
  for (double e : errors) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      fail(ErrorKind::validation, "error estimates must be finite and non-negative");
    }
  }
}

}  // namespace resdecay
