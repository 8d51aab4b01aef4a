#pragma once

// Closed catalog of analytic weights f(E) on the scattering spectrum [0, inf).
// Every member continues analytically into the right half plane, which is
// what the contour rotation and the complex-delta evaluation rely on.

#include <vector>

#include "resdecay/core.hpp"

namespace resdecay {

enum class Rotation { lower, upper };

std::string_view to_string(Rotation r);

class FormFactor {
 public:
  enum class Kind { constant, polynomial, rational, power_law, exp_cutoff, product };

  static FormFactor constant(Complex value);
  /// Coefficients in ascending order: c0 + c1 E + c2 E^2 + ...
  static FormFactor polynomial(std::vector<Complex> coefficients);
  /// Denominator zeros are located at construction and must avoid [0, inf).
  static FormFactor rational(std::vector<Complex> numerator, std::vector<Complex> denominator);
  /// E^alpha on the principal branch, alpha > -1.
  static FormFactor power_law(double alpha);
  /// exp(-E / scale), scale > 0.
  static FormFactor exp_cutoff(double scale);
  static FormFactor product(std::vector<FormFactor> factors);

  Kind kind() const noexcept { return kind_; }
  const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }
  const std::vector<Complex>& denominator() const noexcept { return denom_; }
  /// Zeros of the denominator (rational kind only).
  const std::vector<Complex>& recorded_poles() const noexcept { return poles_; }
  double exponent() const noexcept { return param_; }
  double scale() const noexcept { return param_; }
  const std::vector<FormFactor>& factors() const noexcept { return factors_; }

  /// Rational poles of this form factor and all nested factors.
  std::vector<Complex> all_poles() const;
  /// True if any power_law factor has a negative exponent (singular at 0).
  bool singular_at_origin() const;

 private:
  FormFactor() = default;
  Kind kind_ = Kind::constant;
  std::vector<Complex> coeffs_;
  std::vector<Complex> denom_;
  std::vector<Complex> poles_;
  double param_ = 0.0;
  std::vector<FormFactor> factors_;
};

FormFactor operator*(const FormFactor& a, const FormFactor& b);

std::string_view to_string(FormFactor::Kind k);

/// f(E) for real E >= 0.
Complex eval_real(const FormFactor& f, double energy);

/// Analytic continuation of f to complex z.
Complex eval_complex(const FormFactor& f, Complex z);

/// Taylor coefficients c_0..c_order of f about a real point x > 0, so that
/// f(x + e) = sum_k c_k e^k.
std::vector<Complex> taylor_coefficients(const FormFactor& f, double x, int order);

struct Admissibility {
  bool admissible;
  Rotation direction;
  std::string reason;
};

/// Whether the real half-line may be rotated onto the imaginary ray in the
/// given direction: f must be analytic in the closed swept quadrant and
/// bounded there by a polynomial.
Admissibility admissibility(const FormFactor& f, Rotation direction);

}  // namespace resdecay
