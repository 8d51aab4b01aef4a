#pragma once

#include "resdecay/core.hpp"

namespace resdecay {

enum class E1Method { power_series, continued_fraction, asymptotic };

std::string_view to_string(E1Method m);

struct E1Result {
  Complex value;
  E1Method method;
  double est_error;  // heuristic, not a rigorous bound
};

// Below this modulus the power series is used; above it the continued
// fraction, except inside the near-cut wedge (see specfun.cpp).
inline constexpr double kE1SeriesRadius = 2.4;
// Beyond this modulus the asymptotic expansion is accurate to round-off.
inline constexpr double kE1AsymptoticRadius = 40.0;

/// Principal-branch exponential integral E1(w), cut along (-inf, 0].
E1Result exp_integral_e1(Complex w);

/// Same, with the evaluation method forced. Used to probe method seams.
/// Throws domain if the method cannot reach round-off accuracy at w.
E1Result exp_integral_e1(Complex w, E1Method method);

/// e^w * E1(w), evaluated without forming the two factors separately where
/// possible, so it stays finite when Re w is large and negative.
E1Result scaled_exp_integral_e1(Complex w);

/// Closed form of  int_0^inf exp(-iEt) / (E - z) dE  for z in the open fourth
/// quadrant and t > 0:
///
///   exp(w) E1(w) - 2 pi i exp(w),   w = -i z t.
///
/// The second term is the residue picked up when the path is rotated onto the
/// negative imaginary axis; the first is the leftover background.
Complex bw_halfline_kernel(Complex pole, double t);

}  // namespace resdecay
