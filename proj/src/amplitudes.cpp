#include "resdecay/amplitudes.hpp"

#include <cmath>
#include <sstream>

namespace resdecay {

namespace {

void require_positive_time(double t, const char* where) {
  require_finite(t, "t");
  if (t <= 0.0) {
    std::ostringstream os;
    os << "t must be > 0 (got " << t << ")";
    fail(ErrorKind::domain, os.str(), where);
  }
}

void require_converged(const IntegralResult& r, const char* where) {
  if (!r.converged) {
    std::ostringstream os;
    os << "quadrature did not converge (est_error " << r.est_error << ", evals " << r.evals << ")";
    fail(ErrorKind::quadrature_nonconvergence, os.str(), where);
  }
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::rotation: return "rotation";
    case Strategy::direct_oracle: return "direct_oracle";
    case Strategy::auto_select: return "auto";
  }
  return "unknown";
}

Strategy strategy_from_string(std::string_view name) {
  if (name == "rotation") return Strategy::rotation;
  if (name == "direct_oracle" || name == "direct") return Strategy::direct_oracle;
  if (name == "auto") return Strategy::auto_select;
  fail(ErrorKind::validation, "unknown strategy '" + std::string(name) + "'");
}

Complex complex_delta_amp(const FormFactor& f, const Resonance& r, double t) {
  require_positive_time(t, "complex_delta_amp");
  const Complex decay = std::exp(Complex{-0.5 * r.width() * t, -r.energy() * t});
  return eval_complex(f, r.pole()) * decay;
}

Complex bw_fullline_amp(const FormFactor& f, const Resonance& r, double t) {
  require_positive_time(t, "bw_fullline_amp");
  const Admissibility adm = admissibility(f, Rotation::lower);
  if (!adm.admissible) fail(ErrorKind::inadmissible_form_factor, adm.reason, "bw_fullline_amp");
  return plan_rotation(f, r.pole(), -t).residue_term;
}

IntegralResult bw_halfline_amp(const FormFactor& f, const Resonance& r, double t,
                               const QuadratureConfig& cfg, Strategy strategy) {
  require_finite(t, "t");
  if (t == 0.0) fail(ErrorKind::domain, "half-line integral is not evaluated at t = 0", "bw_halfline_amp");
  const double mu = -t;
  const Rotation direction = mu > 0.0 ? Rotation::upper : Rotation::lower;

  if (strategy == Strategy::auto_select) {
    strategy = admissibility(f, direction).admissible ? Strategy::rotation : Strategy::direct_oracle;
  }
  IntegralResult out;
  if (strategy == Strategy::rotation) {
    const RotatedIntegral rot = rotated_contour_background(f, r.pole(), mu, cfg);
    out = rot.background;
    out.value = rot.total();
  } else {
    out = integrate_oscillatory_halfline(f, r.pole(), mu, cfg);
  }
  require_converged(out, "bw_halfline_amp");
  return out;
}

Decomposition decompose(const FormFactor& f, const Resonance& r, double t, const QuadratureConfig& cfg) {
  require_positive_time(t, "decompose");
  const RotatedIntegral rot = rotated_contour_background(f, r.pole(), -t, cfg);
  require_converged(rot.background, "decompose");
  Decomposition d;
  d.pole_term = bw_fullline_amp(f, r, t);
  d.background = rot.background.value;
  d.total = d.pole_term + d.background;
  d.est_error = rot.background.est_error;
  return d;
}

AmplitudeSeries evaluate_series(const FormFactor& f, const Resonance& r, std::span<const double> times,
                                const AmplitudeModel& model, const QuadratureConfig& cfg) {
  AmplitudeSeries s{model.tag(), {times.begin(), times.end()}, {}, {}};
  s.values.reserve(times.size());
  s.errors.reserve(times.size());
  for (double t : times) {
    switch (model.tag()) {
      case Model::complex_delta:
        s.values.push_back(complex_delta_amp(f, r, t));
        s.errors.push_back(0.0);
        break;
      case Model::bw_fullline:
        s.values.push_back(bw_fullline_amp(f, r, t));
        s.errors.push_back(0.0);
        break;
      case Model::bw_halfline: {
        const IntegralResult h = bw_halfline_amp(f, r, t, cfg, model.strategy().value_or(Strategy::auto_select));
        s.values.push_back(h.value);
        s.errors.push_back(h.est_error);
        break;
      }
      case Model::background: {
        const Decomposition d = decompose(f, r, t, cfg);
        s.values.push_back(d.background);
        s.errors.push_back(d.est_error);
        break;
      }
    }
  }
  s.validate();
  return s;
}

}  // namespace resdecay
