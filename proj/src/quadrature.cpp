#include "resdecay/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace resdecay {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int kEvalsPerSegment = 15;
// Segments touching an outer end split geometrically toward it, which keeps
// integrable endpoint singularities within reach of max_depth.
constexpr double kGradedSplit = 0.125;

struct Segment {
  double a;
  double b;
  Complex value;
  double err;
  int depth;
};

// Max-heap on error; ties broken by position so the order never depends on
// anything but the inputs.
struct WorseFirst {
  bool operator()(const Segment& x, const Segment& y) const {
    if (x.err != y.err) return x.err < y.err;
    return x.a > y.a;
  }
};

Segment gauss_kronrod(const Integrand& g, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Complex fc = g(center);
  Complex resk = fc * kWgk[7];
  Complex resg = fc * kWg[3];
  for (int j = 0; j < 3; ++j) {
    const int jj = 2 * j + 1;
    const double dx = half * kXgk[jj];
    const Complex sum = g(center - dx) + g(center + dx);
    resg += kWg[j] * sum;
    resk += kWgk[jj] * sum;
  }
  for (int j = 0; j < 4; ++j) {
    const int jj = 2 * j;
    const double dx = half * kXgk[jj];
    resk += kWgk[jj] * (g(center - dx) + g(center + dx));
  }
  const Complex value = resk * half;
  const double err = std::abs((resk - resg) * half);
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()) || !std::isfinite(err)) {
    std::ostringstream os;
    os << "integrand is not finite on [" << a << ", " << b << "]";
    fail(ErrorKind::quadrature_nonconvergence, os.str(), "gauss_kronrod");
  }
  return {a, b, value, err, depth};
}

double tolerance(const QuadratureConfig& cfg, Complex value) {
  return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

IntegralResult adaptive(const Integrand& g, std::span<const double> breakpoints,
                        const QuadratureConfig& cfg) {
  std::vector<Segment> heap;
  std::vector<Segment> frozen;
  heap.reserve(breakpoints.size() * 2);
  long evals = 0;
  Complex total{};
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    Segment s = gauss_kronrod(g, breakpoints[i], breakpoints[i + 1], 0);
    evals += kEvalsPerSegment;
    total += s.value;
    total_err += s.err;
    heap.push_back(s);
  }
  std::make_heap(heap.begin(), heap.end(), WorseFirst{});

  auto exact_sums = [&] {
    total = Complex{};
    total_err = 0.0;
    for (const auto& s : heap) {
      total += s.value;
      total_err += s.err;
    }
    for (const auto& s : frozen) {
      total += s.value;
      total_err += s.err;
    }
  };

  long since_resum = 0;
  while (!heap.empty()) {
    if (total_err <= tolerance(cfg, total)) {
      exact_sums();
      if (total_err <= tolerance(cfg, total)) break;
    }
    if (evals + 2 * kEvalsPerSegment > cfg.max_evals) break;
    std::pop_heap(heap.begin(), heap.end(), WorseFirst{});
    Segment worst = heap.back();
    heap.pop_back();
    double mid = 0.5 * (worst.a + worst.b);
    if (worst.a == breakpoints.front()) {
      mid = worst.a + kGradedSplit * (worst.b - worst.a);
    } else if (worst.b == breakpoints.back()) {
      mid = worst.b - kGradedSplit * (worst.b - worst.a);
    }
    if (worst.depth >= cfg.max_depth || !(mid > worst.a && mid < worst.b)) {
      frozen.push_back(worst);
      // Nothing left can bring the total below this segment's own error.
      if (worst.err > tolerance(cfg, total)) break;
      continue;
    }
    const Segment left = gauss_kronrod(g, worst.a, mid, worst.depth + 1);
    const Segment right = gauss_kronrod(g, mid, worst.b, worst.depth + 1);
    evals += 2 * kEvalsPerSegment;
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), WorseFirst{});
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), WorseFirst{});
    if (++since_resum == 4096) {
      since_resum = 0;
      exact_sums();
    }
  }

  heap.insert(heap.end(), frozen.begin(), frozen.end());
  std::sort(heap.begin(), heap.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  IntegralResult out;
  for (const auto& s : heap) {
    out.value += s.value;
    out.est_error += s.err;
  }
  out.evals = evals;
  out.converged = out.est_error <= tolerance(cfg, out.value);
  return out;
}

Complex direction_unit(Rotation r) { return r == Rotation::upper ? Complex{0.0, 1.0} : Complex{0.0, -1.0}; }

// Tail of int_X^inf exp(i mu E) h(E) dE from repeated integration by parts:
//   -exp(i mu X) sum_k (-1)^k h^(k)(X) / (i mu)^(k+1),
// with h^(k)(X) = k! c_k. Truncated before the terms start to grow.
struct TailSum {
  Complex value;
  double err;
};

TailSum endpoint_tail(const std::vector<Complex>& jet, double mu, double x) {
  const Complex inv_imu = 1.0 / Complex{0.0, mu};
  Complex factor = inv_imu;  // (-1)^k k! / (i mu)^(k+1)
  Complex sum{};
  double prev = std::numeric_limits<double>::infinity();
  double last = 0.0;
  for (std::size_t k = 0; k < jet.size(); ++k) {
    if (k > 0) factor *= -static_cast<double>(k) * inv_imu;
    const Complex term = factor * jet[k];
    const double mag = std::abs(term);
    if (mag > prev) break;
    sum += term;
    last = mag;
    prev = mag;
    if (mag <= 0.25 * std::numeric_limits<double>::epsilon() * std::abs(sum)) break;
  }
  const Complex phase = std::exp(Complex{0.0, mu * x});
  return {-phase * sum, last + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(sum)};
}

constexpr int kTailOrder = 60;
constexpr double kTailConvergence = 40.0;  // |mu| * distance to nearest singularity at X

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) fail(ErrorKind::validation, "rel_tol must be > 0");
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) fail(ErrorKind::validation, "abs_tol must be > 0");
  if (max_depth <= 0) fail(ErrorKind::validation, "max_depth must be > 0");
  if (max_evals <= 0) fail(ErrorKind::validation, "max_evals must be > 0");
}

IntegralResult integrate_partitioned(const Integrand& g, std::span<const double> breakpoints,
                                     const QuadratureConfig& cfg) {
  cfg.validate();
  if (breakpoints.size() < 2) fail(ErrorKind::validation, "need at least two breakpoints");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    require_finite(breakpoints[i], "breakpoint");
    if (i > 0 && !(breakpoints[i] > breakpoints[i - 1])) {
      fail(ErrorKind::validation, "breakpoints must be strictly increasing");
    }
  }
  return adaptive(g, breakpoints, cfg);
}

IntegralResult integrate_finite(const Integrand& g, double a, double b, const QuadratureConfig& cfg) {
  const std::array<double, 2> ends{a, b};
  return integrate_partitioned(g, ends, cfg);
}

IntegralResult integrate_semiinf_decaying(const Integrand& g, double rho, const QuadratureConfig& cfg) {
  require_finite(rho, "rho");
  if (rho <= 0.0) fail(ErrorKind::validation, "decay rate must be > 0", "integrate_semiinf_decaying");
  const double rate = 0.5 * rho;
  // s = -log(1 - u) / rate,  ds = du / (rate (1 - u))
  auto mapped = [&](double u) -> Complex {
    const double rest = 1.0 - u;
    if (rest <= 0.0) return Complex{};
    const double s = -std::log1p(-u) / rate;
    return g(s) / (rate * rest);
  };
  return integrate_finite(mapped, 0.0, 1.0, cfg);
}

IntegralResult integrate_oscillatory_halfline(const FormFactor& f, Complex pole,
                                              std::span<const PhaseTerm> terms,
                                              const QuadratureConfig& cfg) {
  cfg.validate();
  require_finite(pole, "pole");
  if (terms.empty()) fail(ErrorKind::validation, "no phase terms given");
  if (pole.imag() == 0.0 && pole.real() >= 0.0) {
    fail(ErrorKind::validation, "pole lies on the integration path", "integrate_oscillatory_halfline");
  }
  double mu_min = std::numeric_limits<double>::infinity();
  double mu_max = 0.0;
  for (const auto& t : terms) {
    require_finite(t.weight, "phase weight");
    require_finite(t.mu, "phase coefficient");
    if (t.mu == 0.0) fail(ErrorKind::validation, "phase coefficient must be nonzero");
    mu_min = std::min(mu_min, std::abs(t.mu));
    mu_max = std::max(mu_max, std::abs(t.mu));
  }

  double reach = std::abs(pole);
  for (const Complex& q : f.all_poles()) reach = std::max(reach, std::abs(q));

  // Tail: h(E) = f(E) / (E - pole), expanded about X.
  auto tail_at = [&](double x) {
    std::vector<Complex> inv(kTailOrder + 1);
    const Complex d = Complex{x, 0.0} - pole;
    Complex p = 1.0 / d;
    for (int k = 0; k <= kTailOrder; ++k) {
      inv[static_cast<std::size_t>(k)] = p;
      p *= -1.0 / d;
    }
    const std::vector<Complex> fj = taylor_coefficients(f, x, kTailOrder);
    std::vector<Complex> jet(fj.size(), Complex{});
    for (std::size_t i = 0; i < jet.size(); ++i) {
      for (std::size_t j = 0; i + j < jet.size(); ++j) jet[i + j] += fj[i] * inv[j];
    }
    TailSum out{{}, 0.0};
    for (const auto& t : terms) {
      const TailSum s = endpoint_tail(jet, t.mu, x);
      out.value += t.weight * s.value;
      out.err += std::abs(t.weight) * s.err;
    }
    return out;
  };

  const double piece = 0.5 * kPi / mu_max;
  const double max_pieces = static_cast<double>(cfg.max_evals) / (4.0 * kEvalsPerSegment);
  const double x_cap = std::max(piece, max_pieces * piece);
  double x = 2.0 * reach + kTailConvergence / mu_min;
  TailSum tail = tail_at(x);
  while (tail.err > 0.1 * tolerance(cfg, tail.value) && 2.0 * x <= x_cap) {
    x *= 2.0;
    tail = tail_at(x);
  }

  // Integrate in x = E - center so that node rounding near the pole scales
  // with |x| rather than |E|; the phase error is |mu| times that rounding.
  const double center = std::clamp(pole.real(), 0.0, x);
  std::vector<double> breaks;
  auto add_span = [&](double lo, double hi) {
    if (!(hi > lo)) return;
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / piece)));
    for (std::size_t i = 0; i < n; ++i) {
      breaks.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n));
    }
  };
  add_span(-center, 0.0);
  add_span(0.0, x - center);
  breaks.push_back(x - center);

  const Complex offset{center - pole.real(), -pole.imag()};
  std::vector<PhaseTerm> shifted(terms.begin(), terms.end());
  for (auto& t : shifted) t.weight *= std::polar(1.0, t.mu * center);

  auto integrand = [&](double u) -> Complex {
    const double e = std::max(0.0, center + u);
    const Complex h = eval_real(f, e) / (Complex{u, 0.0} + offset);
    Complex acc{};
    for (const auto& t : shifted) acc += t.weight * std::polar(1.0, t.mu * u);
    return acc * h;
  };

  IntegralResult body = adaptive(integrand, breaks, cfg);
  Complex value = body.value + tail.value;
  double err = body.est_error + tail.err;
  long evals = body.evals;
  // The body's relative target is set by its own size, which can dwarf the
  // final value when it cancels against the tail; rerun with an absolute
  // target tied to the final value.
  if (err > tolerance(cfg, value)) {
    QuadratureConfig tight = cfg;
    tight.abs_tol = std::max(cfg.abs_tol, 0.5 * cfg.rel_tol * std::abs(value));
    tight.rel_tol = std::numeric_limits<double>::min();
    tight.max_evals = std::max(1L, cfg.max_evals - evals);
    IntegralResult again = adaptive(integrand, breaks, tight);
    evals += again.evals;
    if (again.est_error < body.est_error) {
      body = again;
      value = body.value + tail.value;
      err = body.est_error + tail.err;
    }
  }

  IntegralResult out;
  out.value = value;
  out.est_error = err;
  out.evals = evals;
  out.converged = err <= tolerance(cfg, value);
  return out;
}

IntegralResult integrate_oscillatory_halfline(const FormFactor& f, Complex pole, double mu,
                                              const QuadratureConfig& cfg) {
  const std::array<PhaseTerm, 1> single{PhaseTerm{Complex{1.0, 0.0}, mu}};
  return integrate_oscillatory_halfline(f, pole, single, cfg);
}

RotationPlan plan_rotation(const FormFactor& f, Complex pole, double mu) {
  require_finite(mu, "phase coefficient");
  require_finite(pole, "pole");
  if (mu == 0.0) fail(ErrorKind::validation, "phase coefficient must be nonzero", "plan_rotation");
  RotationPlan plan;
  plan.mu = mu;
  plan.direction = mu > 0.0 ? Rotation::upper : Rotation::lower;
  plan.pole_swept = pole.real() > 0.0 && (mu > 0.0 ? pole.imag() > 0.0 : pole.imag() < 0.0);
  plan.residue_term = Complex{};
  if (plan.pole_swept) {
    // Closing below runs clockwise (-2 pi i), above counterclockwise (+2 pi i).
    const Complex winding{0.0, mu > 0.0 ? 2.0 * kPi : -2.0 * kPi};
    const Complex phase = std::exp(Complex{-mu * pole.imag(), mu * pole.real()});
    plan.residue_term = winding * (eval_complex(f, pole) * phase);
  }
  return plan;
}

RotatedIntegral rotated_contour_background(const FormFactor& f, Complex pole, double mu,
                                           const QuadratureConfig& cfg) {
  cfg.validate();
  const RotationPlan plan = plan_rotation(f, pole, mu);
  const Admissibility adm = admissibility(f, plan.direction);
  if (!adm.admissible) {
    fail(ErrorKind::inadmissible_form_factor, adm.reason, "rotated_contour_background");
  }
  if (pole.imag() == 0.0 && pole.real() >= 0.0) {
    fail(ErrorKind::validation, "pole lies on the integration path", "rotated_contour_background");
  }
  const Complex dir = direction_unit(plan.direction);
  if (pole.real() == 0.0 && (pole.imag() > 0.0) == (plan.direction == Rotation::upper)) {
    fail(ErrorKind::validation, "pole lies on the rotated ray", "rotated_contour_background");
  }
  const double rho = std::abs(mu);
  // E = dir * s, dE = dir ds; the ray is run from 0 outward, and the
  // half-line integral equals residue + int_ray.
  auto g = [&](double s) -> Complex {
    const Complex e = dir * s;
    return dir * eval_complex(f, e) * std::exp(-rho * s) / (e - pole);
  };
  RotatedIntegral out{integrate_semiinf_decaying(g, rho, cfg), plan};
  return out;
}

}  // namespace resdecay
