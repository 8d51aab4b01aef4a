#pragma once

// Shared value types and the error taxonomy. Units: hbar = 1, so energies and
// inverse times share one unit.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace resdecay {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

enum class ErrorKind {
  validation,
  domain,
  inadmissible_form_factor,
  quadrature_nonconvergence,
  branch_cut_hit,
};

std::string_view to_string(ErrorKind kind);

/// The single error type raised by every public operation.
class EngineError : public std::runtime_error {
 public:
  EngineError(ErrorKind kind, const std::string& message, std::string context = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& context() const noexcept { return context_; }

 private:
  ErrorKind kind_;
  std::string context_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message, std::string context = {});

double require_finite(double x, std::string_view what);
Complex require_finite(Complex z, std::string_view what);

/// Resonance with pole z_R = E_R - i Gamma/2 in the open fourth quadrant.
class Resonance {
 public:
  static Resonance make(double energy, double width);

  double energy() const noexcept { return energy_; }
  double width() const noexcept { return width_; }
  Complex pole() const noexcept { return {energy_, -0.5 * width_}; }

 private:
  Resonance(double energy, double width) : energy_(energy), width_(width) {}
  double energy_;
  double width_;
};

inline Resonance make_resonance(double energy, double width) {
  return Resonance::make(energy, width);
}

enum class Spacing { linear, logarithmic };

std::string_view to_string(Spacing s);
Spacing spacing_from_string(std::string_view name);

/// Strictly increasing grid of positive times.
class TimeGrid {
 public:
  static TimeGrid make(double start, double stop, std::size_t points, Spacing spacing);

  std::span<const double> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double operator[](std::size_t i) const { return samples_[i]; }
  double start() const noexcept { return samples_.front(); }
  double stop() const noexcept { return samples_.back(); }
  Spacing spacing() const noexcept { return spacing_; }

 private:
  TimeGrid(std::vector<double> samples, Spacing spacing)
      : samples_(std::move(samples)), spacing_(spacing) {}
  std::vector<double> samples_;
  Spacing spacing_;
};

inline TimeGrid make_time_grid(double start, double stop, std::size_t points, Spacing spacing) {
  return TimeGrid::make(start, stop, points, spacing);
}

enum class Model { bw_halfline, bw_fullline, complex_delta, background };

std::string_view to_string(Model m);
Model model_from_string(std::string_view name);

/// Sampled amplitude. `times` may hold retarded times (negative allowed) for
/// the case studies; engine series always use positive times.
struct AmplitudeSeries {
  Model model;
  std::vector<double> times;
  std::vector<Complex> values;
  std::vector<double> errors;  // empty, or one non-negative entry per sample

  void validate() const;
};

}  // namespace resdecay
