#include "resdecay/specfun.hpp"

#include <cmath>
#include <limits>

namespace resdecay {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSeriesTerms = 1000;
constexpr int kMaxFractionTerms = 200000;
// |Im w| < kWedgeSlope * |Re w| with Re w < 0 marks the region next to the
// cut where the continued fraction converges slowly. The power series has no
// cancellation there, so it is used up to the asymptotic radius.
constexpr double kWedgeSlope = 0.5;

void check_off_cut(Complex w) {
  require_finite(w, "E1 argument");
  if (w.imag() == 0.0 && w.real() <= 0.0) {
    fail(ErrorKind::branch_cut_hit, "E1 argument lies on the branch cut (-inf, 0]",
         "exp_integral_e1");
  }
}

bool in_cut_wedge(Complex w) {
  return w.real() < 0.0 && std::abs(w.imag()) < kWedgeSlope * -w.real();
}

// E1(w) = -gamma - ln w - sum_{k>=1} (-w)^k / (k k!)
E1Result series(Complex w) {
  Complex term = 1.0;
  Complex sum = 0.0;
  double abs_sum = 0.0;
  int k = 1;
  const double r = std::abs(w);
  for (; k <= kMaxSeriesTerms; ++k) {
    term *= -w / static_cast<double>(k);
    const Complex contrib = term / static_cast<double>(k);
    sum += contrib;
    abs_sum += std::abs(contrib);
    if (k > r && std::abs(contrib) <= 0.25 * kEps * std::abs(sum)) break;
  }
  const Complex head = -kEulerGamma - std::log(w);
  const Complex value = head - sum;
  const double err = std::abs(term) / static_cast<double>(k) +
                     4.0 * kEps * (abs_sum + std::abs(head));
  return {value, E1Method::power_series, err};
}

// e^w E1(w) = 1/(w+1- 1/(w+3- 4/(w+5- ...))), modified Lentz.
E1Result scaled_fraction(Complex w) {
  constexpr double tiny = 1e-300;
  Complex b = w + 1.0;
  Complex c = 1.0 / tiny;
  Complex d = 1.0 / b;
  Complex h = d;
  double last = 1.0;
  int i = 1;
  for (; i <= kMaxFractionTerms; ++i) {
    const double an = -static_cast<double>(i) * static_cast<double>(i);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const Complex del = c * d;
    h *= del;
    last = std::abs(del - 1.0);
    if (last <= kEps) break;
  }
  if (i > kMaxFractionTerms) {
    fail(ErrorKind::domain, "E1 continued fraction did not converge", "exp_integral_e1");
  }
  const double err = std::abs(h) * (last + 8.0 * kEps * std::sqrt(static_cast<double>(i)));
  return {h, E1Method::continued_fraction, err};
}

// e^w E1(w) ~ (1/w) sum_k (-1)^k k! / w^k, truncated at its smallest term.
E1Result scaled_asymptotic(Complex w) {
  const Complex inv = 1.0 / w;
  Complex term = inv;
  Complex sum = term;
  double smallest = std::abs(term);
  for (int k = 1; k < 200; ++k) {
    const Complex next = -term * static_cast<double>(k) * inv;
    const double mag = std::abs(next);
    if (mag >= smallest) break;
    term = next;
    sum += term;
    smallest = mag;
    if (mag <= 0.25 * kEps * std::abs(sum)) break;
  }
  return {sum, E1Method::asymptotic, smallest + 2.0 * kEps * std::abs(sum)};
}

E1Method choose_method(Complex w) {
  const double r = std::abs(w);
  if (r >= kE1AsymptoticRadius) return E1Method::asymptotic;
  if (r < kE1SeriesRadius || in_cut_wedge(w)) return E1Method::power_series;
  return E1Method::continued_fraction;
}

E1Result unscale(E1Result scaled, Complex w) {
  const Complex factor = std::exp(-w);
  return {scaled.value * factor, scaled.method, scaled.est_error * std::abs(factor)};
}

}  // namespace

std::string_view to_string(E1Method m) {
  switch (m) {
    case E1Method::power_series: return "power_series";
    case E1Method::continued_fraction: return "continued_fraction";
    case E1Method::asymptotic: return "asymptotic";
  }
  return "unknown";
}

E1Result exp_integral_e1(Complex w, E1Method method) {
  check_off_cut(w);
  switch (method) {
    case E1Method::power_series:
      return series(w);
    case E1Method::continued_fraction:
      return unscale(scaled_fraction(w), w);
    case E1Method::asymptotic: {
      E1Result r = unscale(scaled_asymptotic(w), w);
      if (std::abs(w) < 10.0) {
        fail(ErrorKind::domain, "asymptotic E1 expansion needs |w| >= 10", "exp_integral_e1");
      }
      return r;
    }
  }
  fail(ErrorKind::validation, "unknown E1 method");
}

E1Result exp_integral_e1(Complex w) {
  check_off_cut(w);
  return exp_integral_e1(w, choose_method(w));
}

E1Result scaled_exp_integral_e1(Complex w) {
  check_off_cut(w);
  switch (choose_method(w)) {
    case E1Method::power_series: {
      const E1Result r = series(w);
      const Complex factor = std::exp(w);
      return {r.value * factor, r.method, r.est_error * std::abs(factor)};
    }
    case E1Method::continued_fraction:
      return scaled_fraction(w);
    case E1Method::asymptotic:
      return scaled_asymptotic(w);
  }
  fail(ErrorKind::validation, "unknown E1 method");
}

Complex bw_halfline_kernel(Complex pole, double t) {
  require_finite(pole, "pole");
  require_finite(t, "t");
  if (t <= 0.0) fail(ErrorKind::domain, "kernel requires t > 0", "bw_halfline_kernel");
  if (!(pole.real() > 0.0 && pole.imag() < 0.0)) {
    fail(ErrorKind::validation, "pole must lie in the open fourth quadrant", "bw_halfline_kernel");
  }
  // -i z t
  const Complex w{t * pole.imag(), -t * pole.real()};
  const Complex background = scaled_exp_integral_e1(w).value;
  const Complex residue = Complex{0.0, -2.0 * kPi} * std::exp(w);
  return background + residue;
}

}  // namespace resdecay
