#pragma once

// The three resonant amplitude models for
//
//   int_0^inf exp(-iEt) f(E) / (E - z_R) dE
//
// bw_halfline evaluates it exactly; bw_fullline extends the range to the
// whole real line and keeps only the pole; complex_delta replaces the
// Breit-Wigner denominator by a delta at z_R. The last two differ by the
// fixed factor -2 pi i.

#include <optional>

#include "resdecay/core.hpp"
#include "resdecay/formfactor.hpp"
#include "resdecay/quadrature.hpp"

namespace resdecay {

enum class Strategy { rotation, direct_oracle, auto_select };

std::string_view to_string(Strategy s);
Strategy strategy_from_string(std::string_view name);

/// Model tag plus, for the half-line model only, its evaluation strategy.
class AmplitudeModel {
 public:
  static AmplitudeModel halfline(Strategy s) { return AmplitudeModel(Model::bw_halfline, s); }
  static AmplitudeModel fullline() { return AmplitudeModel(Model::bw_fullline, std::nullopt); }
  static AmplitudeModel complex_delta() { return AmplitudeModel(Model::complex_delta, std::nullopt); }

  Model tag() const noexcept { return tag_; }
  std::optional<Strategy> strategy() const noexcept { return strategy_; }

 private:
  AmplitudeModel(Model tag, std::optional<Strategy> s) : tag_(tag), strategy_(s) {}
  Model tag_;
  std::optional<Strategy> strategy_;
};

/// f(z_R) exp(-i E_R t) exp(-Gamma t / 2), t > 0.
Complex complex_delta_amp(const FormFactor& f, const Resonance& r, double t);

/// (2 pi / i) f(z_R) exp(-i E_R t) exp(-Gamma t / 2), computed as the residue
/// of the lower contour closure. Requires f admissible for that closure.
Complex bw_fullline_amp(const FormFactor& f, const Resonance& r, double t);

/// Exact half-line integral. t < 0 is accepted (the rotation then goes up
/// and collects no residue); t == 0 is a domain error.
IntegralResult bw_halfline_amp(const FormFactor& f, const Resonance& r, double t,
                               const QuadratureConfig& cfg, Strategy strategy = Strategy::auto_select);

struct Decomposition {
  Complex pole_term;
  Complex background;
  Complex total;
  double est_error;
};

/// Half-line integral split into the full-line pole term and the rotated
/// background that the full-line extension discards.
Decomposition decompose(const FormFactor& f, const Resonance& r, double t, const QuadratureConfig& cfg);

/// Evaluates one model on every grid point. Half-line values carry errors.
AmplitudeSeries evaluate_series(const FormFactor& f, const Resonance& r, std::span<const double> times,
                                const AmplitudeModel& model, const QuadratureConfig& cfg);

}  // namespace resdecay
