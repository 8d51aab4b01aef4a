#include "resdecay/formfactor.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/Polynomials>

namespace resdecay {

namespace {

using Series = std::vector<Complex>;

double pole_tolerance(Complex p) { return 1e-12 * (1.0 + std::abs(p)); }

std::vector<Complex> checked_coefficients(std::vector<Complex> c, std::string_view what) {
  if (c.empty()) fail(ErrorKind::validation, std::string(what) + " needs at least one coefficient");
  for (const Complex& v : c) require_finite(v, what);
  while (c.size() > 1 && c.back() == Complex{}) c.pop_back();
  return c;
}

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex acc = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * z + c[i];
  return acc;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& c) {
  if (c.size() < 2) return {};
  Eigen::VectorXcd coeffs(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) coeffs[static_cast<Eigen::Index>(i)] = c[i];
  Eigen::PolynomialSolver<Complex, Eigen::Dynamic> solver(coeffs);
  std::vector<Complex> roots;
  for (Eigen::Index i = 0; i < solver.roots().size(); ++i) roots.push_back(solver.roots()[i]);
  return roots;
}

Series mul(const Series& a, const Series& b) {
  Series out(a.size(), Complex{});
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Series div(const Series& a, const Series& b) {
  Series out(a.size(), Complex{});
  for (std::size_t k = 0; k < a.size(); ++k) {
    Complex acc = a[k];
    for (std::size_t j = 1; j <= k; ++j) acc -= b[j] * out[k - j];
    out[k] = acc / b[0];
  }
  return out;
}

// Coefficients of p(x + e) in powers of e, truncated to n terms.
Series taylor_shift(std::vector<Complex> a, double x, std::size_t n) {
  const std::size_t deg = a.size() - 1;
  for (std::size_t i = 0; i < deg; ++i) {
    for (std::size_t j = deg; j-- > i;) a[j] += x * a[j + 1];
  }
  Series out(n, Complex{});
  for (std::size_t k = 0; k < n && k <= deg; ++k) out[k] = a[k];
  return out;
}

bool in_closed_quadrant(Complex p, Rotation direction) {
  const double tol = pole_tolerance(p);
  if (p.real() < -tol) return false;
  return direction == Rotation::lower ? p.imag() <= tol : p.imag() >= -tol;
}

}  // namespace

std::string_view to_string(Rotation r) { return r == Rotation::lower ? "lower" : "upper"; }

std::string_view to_string(FormFactor::Kind k) {
  switch (k) {
    case FormFactor::Kind::constant: return "constant";
    case FormFactor::Kind::polynomial: return "polynomial";
    case FormFactor::Kind::rational: return "rational";
    case FormFactor::Kind::power_law: return "power_law";
    case FormFactor::Kind::exp_cutoff: return "exp_cutoff";
    case FormFactor::Kind::product: return "product";
  }
  return "unknown";
}

FormFactor FormFactor::constant(Complex value) {
  FormFactor f;
  f.kind_ = Kind::constant;
  f.coeffs_ = {require_finite(value, "constant form factor")};
  return f;
}

FormFactor FormFactor::polynomial(std::vector<Complex> coefficients) {
  FormFactor f;
  f.kind_ = Kind::polynomial;
  f.coeffs_ = checked_coefficients(std::move(coefficients), "polynomial form factor");
  return f;
}

FormFactor FormFactor::rational(std::vector<Complex> numerator, std::vector<Complex> denominator) {
  FormFactor f;
  f.kind_ = Kind::rational;
  f.coeffs_ = checked_coefficients(std::move(numerator), "rational numerator");
  f.denom_ = checked_coefficients(std::move(denominator), "rational denominator");
  if (f.denom_.size() == 1 && f.denom_[0] == Complex{}) {
    fail(ErrorKind::validation, "rational denominator is identically zero");
  }
  f.poles_ = polynomial_roots(f.denom_);
  for (const Complex& p : f.poles_) {
    const double tol = pole_tolerance(p);
    if (std::abs(p.imag()) <= tol && p.real() >= -tol) {
      std::ostringstream os;
      os << "rational form factor has a pole on the scattering spectrum at " << p;
      fail(ErrorKind::validation, os.str(), "FormFactor::rational");
    }
  }
  return f;
}

FormFactor FormFactor::power_law(double alpha) {
  require_finite(alpha, "power-law exponent");
  if (alpha <= -1.0) fail(ErrorKind::validation, "power-law exponent must be > -1");
  FormFactor f;
  f.kind_ = Kind::power_law;
  f.param_ = alpha;
  return f;
}

FormFactor FormFactor::exp_cutoff(double scale) {
  require_finite(scale, "cutoff scale");
  if (scale <= 0.0) fail(ErrorKind::validation, "cutoff scale must be > 0");
  FormFactor f;
  f.kind_ = Kind::exp_cutoff;
  f.param_ = scale;
  return f;
}

FormFactor FormFactor::product(std::vector<FormFactor> factors) {
  if (factors.empty()) fail(ErrorKind::validation, "product form factor needs at least one factor");
  FormFactor f;
  f.kind_ = Kind::product;
  for (auto& g : factors) {
    if (g.kind_ == Kind::product) {
      f.factors_.insert(f.factors_.end(), g.factors_.begin(), g.factors_.end());
    } else {
      f.factors_.push_back(std::move(g));
    }
  }
  return f;
}

FormFactor operator*(const FormFactor& a, const FormFactor& b) {
  return FormFactor::product({a, b});
}

std::vector<Complex> FormFactor::all_poles() const {
  if (kind_ == Kind::rational) return poles_;
  std::vector<Complex> out;
  for (const auto& g : factors_) {
    auto p = g.all_poles();
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

bool FormFactor::singular_at_origin() const {
  if (kind_ == Kind::power_law) return param_ < 0.0;
  for (const auto& g : factors_) {
    if (g.singular_at_origin()) return true;
  }
  return false;
}

Complex eval_complex(const FormFactor& f, Complex z) {
  require_finite(z, "form factor argument");
  using Kind = FormFactor::Kind;
  switch (f.kind()) {
    case Kind::constant:
      return f.coefficients()[0];
    case Kind::polynomial:
      return horner(f.coefficients(), z);
    case Kind::rational: {
      for (const Complex& p : f.recorded_poles()) {
        if (std::abs(z - p) <= pole_tolerance(p)) {
          std::ostringstream os;
          os << "form factor evaluated at its pole " << p;
          fail(ErrorKind::domain, os.str(), "eval_complex");
        }
      }
      const Complex den = horner(f.denominator(), z);
      if (den == Complex{}) fail(ErrorKind::domain, "form factor denominator vanishes", "eval_complex");
      return horner(f.coefficients(), z) / den;
    }
    case Kind::power_law: {
      const double alpha = f.exponent();
      if (z == Complex{}) {
        if (alpha < 0.0) fail(ErrorKind::domain, "negative power evaluated at 0", "eval_complex");
        return alpha == 0.0 ? Complex{1.0} : Complex{};
      }
      if (z.imag() == 0.0 && z.real() < 0.0) {
        fail(ErrorKind::branch_cut_hit, "power law evaluated on its branch cut", "eval_complex");
      }
      return std::polar(std::pow(std::abs(z), alpha), alpha * std::arg(z));
    }
    case Kind::exp_cutoff:
      return std::exp(-z / f.scale());
    case Kind::product: {
      Complex acc = eval_complex(f.factors().front(), z);
      for (std::size_t i = 1; i < f.factors().size(); ++i) acc *= eval_complex(f.factors()[i], z);
      return acc;
    }
  }
  fail(ErrorKind::validation, "unknown form factor kind");
}

Complex eval_real(const FormFactor& f, double energy) {
  require_finite(energy, "energy");
  if (energy < 0.0) fail(ErrorKind::domain, "eval_real requires E >= 0", "eval_real");
  return eval_complex(f, Complex{energy, 0.0});
}

std::vector<Complex> taylor_coefficients(const FormFactor& f, double x, int order) {
  require_finite(x, "expansion point");
  if (x <= 0.0) fail(ErrorKind::domain, "expansion point must be > 0", "taylor_coefficients");
  if (order < 0) fail(ErrorKind::validation, "expansion order must be >= 0");
  const auto n = static_cast<std::size_t>(order) + 1;
  using Kind = FormFactor::Kind;
  switch (f.kind()) {
    case Kind::constant: {
      Series s(n, Complex{});
      s[0] = f.coefficients()[0];
      return s;
    }
    case Kind::polynomial:
      return taylor_shift(f.coefficients(), x, n);
    case Kind::rational:
      return div(taylor_shift(f.coefficients(), x, n), taylor_shift(f.denominator(), x, n));
    case Kind::power_law: {
      // x^alpha (1 + e/x)^alpha
      Series s(n);
      const double alpha = f.exponent();
      double binom = 1.0;
      double scale = std::pow(x, alpha);
      for (std::size_t k = 0; k < n; ++k) {
        s[k] = binom * scale;
        binom *= (alpha - static_cast<double>(k)) / static_cast<double>(k + 1);
        scale /= x;
      }
      return s;
    }
    case Kind::exp_cutoff: {
      Series s(n);
      double term = std::exp(-x / f.scale());
      for (std::size_t k = 0; k < n; ++k) {
        s[k] = term;
        term *= -1.0 / (f.scale() * static_cast<double>(k + 1));
      }
      return s;
    }
    case Kind::product: {
      Series acc = taylor_coefficients(f.factors().front(), x, order);
      for (std::size_t i = 1; i < f.factors().size(); ++i) {
        acc = mul(acc, taylor_coefficients(f.factors()[i], x, order));
      }
      return acc;
    }
  }
  fail(ErrorKind::validation, "unknown form factor kind");
}

Admissibility admissibility(const FormFactor& f, Rotation direction) {
  using Kind = FormFactor::Kind;
  const std::string quadrant =
      direction == Rotation::lower ? "closed fourth quadrant" : "closed first quadrant";
  switch (f.kind()) {
    case Kind::constant:
      return {true, direction, "constant"};
    case Kind::polynomial:
      return {true, direction, "polynomial growth is beaten by the exponential damping"};
    case Kind::rational: {
      for (const Complex& p : f.recorded_poles()) {
        if (in_closed_quadrant(p, direction)) {
          std::ostringstream os;
          os << "rational pole " << p << " lies in the " << quadrant;
          return {false, direction, os.str()};
        }
      }
      return {true, direction, "all rational poles lie outside the " + quadrant};
    }
    case Kind::power_law:
      return {true, direction, "principal branch cut lies outside the " + quadrant};
    case Kind::exp_cutoff:
      return {true, direction, "|exp(-E/scale)| <= 1 for Re E >= 0"};
    case Kind::product: {
      for (const auto& g : f.factors()) {
        Admissibility a = admissibility(g, direction);
        if (!a.admissible) return {false, direction, "factor " + std::string(to_string(g.kind())) + ": " + a.reason};
      }
      return {true, direction, "every factor is admissible"};
    }
  }
  return {false, direction, "unknown kind"};
}

}  // namespace resdecay
