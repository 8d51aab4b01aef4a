#pragma once

#include <functional>
#include <span>

#include "resdecay/core.hpp"
#include "resdecay/formfactor.hpp"

namespace resdecay {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_depth = 40;
  long max_evals = 1'000'000;

  void validate() const;
};

struct IntegralResult {
  Complex value;
  double est_error = 0.0;
  long evals = 0;
  bool converged = false;
};

using Integrand = std::function<Complex(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]. The error estimate
/// is the embedded Gauss-Kronrod difference summed over the final segments.
/// Segments are summed left to right, so the result is bitwise reproducible.
IntegralResult integrate_finite(const Integrand& g, double a, double b,
                                const QuadratureConfig& cfg);

/// Same as integrate_finite, starting from the given partition (strictly
/// increasing breakpoints, at least two).
IntegralResult integrate_partitioned(const Integrand& g, std::span<const double> breakpoints,
                                     const QuadratureConfig& cfg);

/// int_0^inf g(s) ds for g decaying like exp(-rho s), via u = 1 - exp(-rho s / 2).
IntegralResult integrate_semiinf_decaying(const Integrand& g, double rho,
                                          const QuadratureConfig& cfg);

struct PhaseTerm {
  Complex weight;
  double mu;  // integrand carries exp(i mu E)
};

/// Direct evaluation of  int_0^inf exp(i mu E) f(E) / (E - pole) dE  along
/// the real axis. [0, X] is split into pieces no longer than pi / (2|mu|)
/// and integrated adaptively; the tail beyond X comes from the endpoint
/// asymptotic expansion (repeated integration by parts), whose truncation
/// error is included in est_error. For non-decaying f this yields the
/// Abel-regularized value, the same one the rotated contour produces.
IntegralResult integrate_oscillatory_halfline(const FormFactor& f, Complex pole, double mu,
                                              const QuadratureConfig& cfg);

/// Sum of weighted phase terms sharing one f and one pole, integrated as a
/// single real-axis integrand.
IntegralResult integrate_oscillatory_halfline(const FormFactor& f, Complex pole,
                                              std::span<const PhaseTerm> terms,
                                              const QuadratureConfig& cfg);

struct RotationPlan {
  double mu;
  Rotation direction;  // upper for mu > 0, lower for mu < 0
  bool pole_swept;
  Complex residue_term;  // +-2 pi i f(pole) exp(i mu pole), zero if not swept
};

RotationPlan plan_rotation(const FormFactor& f, Complex pole, double mu);

struct RotatedIntegral {
  IntegralResult background;
  RotationPlan plan;

  /// residue_term + background: the full half-line integral.
  Complex total() const { return plan.residue_term + background.value; }
};

/// Rotates [0, inf) onto the imaginary ray E = +-i s. The half-line integral
/// equals plan.residue_term + background.value.
RotatedIntegral rotated_contour_background(const FormFactor& f, Complex pole, double mu,
                                           const QuadratureConfig& cfg);

}  // namespace resdecay
