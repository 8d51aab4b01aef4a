#include "resdecay/casestudies.hpp"

#include <algorithm>
#include <cmath>

namespace resdecay {

namespace {

constexpr double kPrecursorFactor = 1e3;

CausalityReport assemble(std::vector<double> tau, const std::vector<Complex>& exact,
                         const std::vector<Complex>& lower_bound, std::vector<double> errors) {
  CausalityReport rep;
  rep.tau = std::move(tau);
  rep.est_error = std::move(errors);
  double worst_err = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    rep.precursor_curve.push_back(std::norm(exact[i]));
    rep.lower_bound_curve.push_back(std::norm(lower_bound[i]));
    rep.max_precursor = std::max(rep.max_precursor, rep.precursor_curve.back());
    rep.max_lower_bound = std::max(rep.max_lower_bound, rep.lower_bound_curve.back());
    worst_err = std::max(worst_err, rep.est_error[i]);
  }
  const double amp = kPrecursorFactor * worst_err;
  rep.threshold = amp * amp;
  rep.wwa_precursor = 0.0;
  rep.hegerfeldt_flag = rep.max_precursor > rep.threshold;
  return rep;
}

}  // namespace

RetardedGrid RetardedGrid::from_samples(std::vector<double> samples) {
  if (samples.empty()) fail(ErrorKind::validation, "retarded grid is empty");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    require_finite(samples[i], "tau");
    if (samples[i] == 0.0) fail(ErrorKind::validation, "retarded grid must not contain tau = 0");
    if (i > 0 && !(samples[i] > samples[i - 1])) {
      fail(ErrorKind::validation, "retarded grid must be strictly increasing");
    }
  }
  return RetardedGrid(std::move(samples));
}

RetardedGrid RetardedGrid::make(double start, double stop, std::size_t points) {
  require_finite(start, "tau start");
  require_finite(stop, "tau stop");
  if (points < 2) fail(ErrorKind::validation, "retarded grid needs at least 2 points");
  if (stop <= start) fail(ErrorKind::validation, "tau stop must exceed start");
  std::vector<double> s(points);
  const double step = (stop - start) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) s[i] = start + step * static_cast<double>(i);
  s.back() = stop;
  return from_samples(std::move(s));
}

AmplitudeSeries taylor_profile(const TaylorParams& p, CaseMode mode, const QuadratureConfig& cfg) {
  require_finite(p.prefactor, "Taylor prefactor");
  const Resonance& r = p.resonance;
  AmplitudeSeries s{mode == CaseMode::exact ? Model::bw_halfline : Model::bw_fullline,
                    {p.tau_grid.samples().begin(), p.tau_grid.samples().end()}, {}, {}};
  const FormFactor unit = FormFactor::constant(1.0);
  for (double tau : p.tau_grid.samples()) {
    if (mode == CaseMode::wwa) {
      s.values.push_back(tau > 0.0 ? p.prefactor * Complex{0.0, -2.0 * kPi} * std::exp(-0.5 * r.width() * tau)
                                   : Complex{});
      s.errors.push_back(0.0);
    } else {
      const IntegralResult h = bw_halfline_amp(unit, r, tau, cfg, Strategy::auto_select);
      s.values.push_back(p.prefactor * std::polar(1.0, r.energy() * tau) * h.value);
      s.errors.push_back(std::abs(p.prefactor) * h.est_error);
    }
  }
  s.validate();
  return s;
}

CausalityReport taylor_causality(const TaylorParams& p, const QuadratureConfig& cfg) {
  std::vector<double> tau;
  for (double x : p.tau_grid.samples()) {
    if (x < 0.0) tau.push_back(x);
  }
  if (tau.empty()) fail(ErrorKind::validation, "causality scan needs tau < 0 samples");
  TaylorParams pre = p;
  pre.tau_grid = RetardedGrid::from_samples(tau);
  const AmplitudeSeries exact = taylor_profile(pre, CaseMode::exact, cfg);
  // No residue is collected for tau < 0, so all of it is lower-bound effect.
  return assemble(std::move(tau), exact.values, exact.values, exact.errors);
}

void ScullyParams::validate() const {
  require_finite(omega, "omega");
  require_finite(gamma, "Gamma");
  require_finite(delta_r, "delta_r");
  require_finite(c, "c");
  require_finite(prefactor, "Scully prefactor");
  if (omega <= 0.0) fail(ErrorKind::validation, "omega must be > 0");
  if (gamma <= 0.0) fail(ErrorKind::validation, "Gamma must be > 0");
  if (delta_r <= 0.0) fail(ErrorKind::validation, "delta_r must be > 0");
  if (c <= 0.0) fail(ErrorKind::validation, "c must be > 0");
}

ScullyAmplitude scully_g1(const ScullyParams& p, double t, const QuadratureConfig& cfg) {
  p.validate();
  require_finite(t, "t");
  if (t <= 0.0) fail(ErrorKind::domain, "scully_g1 requires t > 0", "scully_g1");
  const double mu_out = p.delta_r - p.c * t;
  const double mu_in = -(p.delta_r + p.c * t);
  if (mu_out == 0.0) {
    fail(ErrorKind::domain, "t = delta_r / c is the light-cone point and is not sampled", "scully_g1");
  }
  // (ck - omega) + i Gamma/2 = c (k - z),  so the weight is k^2 / c.
  const FormFactor weight = FormFactor::polynomial({0.0, 0.0, 1.0 / p.c});
  const Complex z = p.pole();
  const RotatedIntegral out = rotated_contour_background(weight, z, mu_out, cfg);
  const RotatedIntegral in = rotated_contour_background(weight, z, mu_in, cfg);
  for (const auto* part : {&out, &in}) {
    if (!part->background.converged) {
      fail(ErrorKind::quadrature_nonconvergence, "Scully background did not converge", "scully_g1");
    }
  }
  ScullyAmplitude a;
  a.exact = p.prefactor * (out.total() - in.total());
  a.est_error = std::abs(p.prefactor) * (out.background.est_error + in.background.est_error);
  a.outgoing_residue = p.prefactor * out.plan.residue_term;
  a.incoming_residue = -p.prefactor * in.plan.residue_term;
  const double tau = t - p.transit_time();
  if (tau > 0.0) {
    const Complex strength = p.prefactor * Complex{0.0, -2.0 * kPi} * eval_complex(weight, z);
    a.wwa = strength * std::exp(Complex{-0.5 * p.gamma * tau, -p.omega * tau});
  } else {
    a.wwa = Complex{};
  }
  return a;
}

CausalityReport causality_scan(const ScullyParams& p, const RetardedGrid& tau_grid,
                               const QuadratureConfig& cfg) {
  p.validate();
  std::vector<double> tau;
  std::vector<Complex> exact;
  std::vector<Complex> lower;
  std::vector<double> errors;
  for (double x : tau_grid.samples()) {
    if (x >= 0.0) continue;
    const double t = x + p.transit_time();
    if (t <= 0.0) fail(ErrorKind::domain, "precursor sample lies before emission (t <= 0)", "causality_scan");
    const ScullyAmplitude a = scully_g1(p, t, cfg);
    tau.push_back(x);
    exact.push_back(a.exact);
    lower.push_back(a.exact - a.incoming_residue - a.outgoing_residue);
    errors.push_back(a.est_error);
  }
  if (tau.empty()) fail(ErrorKind::validation, "causality scan needs tau < 0 samples");
  return assemble(std::move(tau), exact, lower, std::move(errors));
}

AmplitudeSeries scully_profile(const ScullyParams& p, const RetardedGrid& tau_grid, CaseMode mode,
                               const QuadratureConfig& cfg) {
  p.validate();
  AmplitudeSeries s{mode == CaseMode::exact ? Model::bw_halfline : Model::bw_fullline,
                    {tau_grid.samples().begin(), tau_grid.samples().end()}, {}, {}};
  for (double tau : tau_grid.samples()) {
    const ScullyAmplitude a = scully_g1(p, tau + p.transit_time(), cfg);
    if (mode == CaseMode::exact) {
      s.values.push_back(a.exact);
      s.errors.push_back(a.est_error);
    } else {
      s.values.push_back(a.wwa);
      s.errors.push_back(0.0);
    }
  }
  s.validate();
  return s;
}

}  // namespace resdecay
