#pragma once

// How far the half-line amplitude departs from the whole-line and
// complex-delta forms: pointwise deviations, the power-law tail exponent, and
// the time at which the background overtakes the exponential pole term.

#include <optional>

#include "resdecay/amplitudes.hpp"

namespace resdecay {

struct ParamsEcho {
  double energy;
  double width;
  FormFactor::Kind form_factor;
  QuadratureConfig quadrature;
};

struct DeviationReport {
  std::vector<double> times;
  AmplitudeSeries halfline;
  AmplitudeSeries fullline;
  AmplitudeSeries delta;
  std::vector<double> rel_dev;          // |h - F| / |F|
  std::vector<Complex> ratio_to_delta;  // h / (-2 pi i delta)
  /// Fitted on the last decade of a logarithmic grid holding at least 8
  /// points there; absent otherwise.
  std::optional<double> tail_exponent;
  std::optional<double> crossover_time;
  ParamsEcho params;
};

DeviationReport deviation_report(const FormFactor& f, const Resonance& r, const TimeGrid& grid,
                                 const QuadratureConfig& cfg);

/// Least-squares slope of log|B| against log t over [first, last).
double tail_exponent(std::span<const double> times, std::span<const double> magnitudes,
                     std::size_t first, std::size_t last);

/// First t at which |background| climbs back above |pole term|, found by a
/// logarithmic scan over Gamma t in [0.5, 1e4] and bisection in log t.
double crossover_time(const FormFactor& f, const Resonance& r, const QuadratureConfig& cfg);

}  // namespace resdecay
