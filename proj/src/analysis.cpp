#include "resdecay/analysis.hpp"

#include <cmath>

namespace resdecay {

namespace {

constexpr std::size_t kMinTailWindow = 8;
constexpr double kScanStart = 0.5;  // in units of 1 / Gamma
constexpr double kScanStop = 1e4;
constexpr int kScanPerDecade = 16;
constexpr double kLogTolerance = 1e-7;

// ln|B| - ln|P|
double log_gap(const FormFactor& f, const Resonance& r, double t, const QuadratureConfig& cfg) {
  const Decomposition d = decompose(f, r, t, cfg);
  const double b = std::abs(d.background);
  const double p = std::abs(d.pole_term);
  if (b == 0.0) return -INFINITY;
  if (p == 0.0) return INFINITY;
  return std::log(b) - std::log(p);
}

}  // namespace

double tail_exponent(std::span<const double> times, std::span<const double> magnitudes,
                     std::size_t first, std::size_t last) {
  if (times.size() != magnitudes.size()) fail(ErrorKind::validation, "times and magnitudes differ in length");
  if (last > times.size() || first >= last || last - first < kMinTailWindow) {
    fail(ErrorKind::validation, "tail window needs at least 8 points inside the series");
  }
  const double n = static_cast<double>(last - first);
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    if (!(times[i] > 0.0) || !(magnitudes[i] > 0.0) || !std::isfinite(magnitudes[i])) {
      fail(ErrorKind::validation, "tail fit needs positive times and magnitudes");
    }
    sx += std::log(times[i]);
    sy += std::log(magnitudes[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    const double dx = std::log(times[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(magnitudes[i]) - my);
  }
  if (!(sxx > 0.0)) fail(ErrorKind::validation, "tail window has no spread in t");
  return sxy / sxx;
}

double crossover_time(const FormFactor& f, const Resonance& r, const QuadratureConfig& cfg) {
  if (eval_complex(f, r.pole()) == Complex{}) {
    fail(ErrorKind::validation, "crossover needs f(z_R) != 0", "crossover_time");
  }
  const double g = r.width();
  const int steps = static_cast<int>(std::lround(std::log10(kScanStop / kScanStart) * kScanPerDecade));
  const double lo_log = std::log(kScanStart / g);
  const double hi_log = std::log(kScanStop / g);

  bool seen_pole_dominated = false;
  double prev_log_t = lo_log;
  double prev_gap = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double log_t = lo_log + (hi_log - lo_log) * i / steps;
    const double gap = log_gap(f, r, std::exp(log_t), cfg);
    if (gap < 0.0) {
      seen_pole_dominated = true;
    } else if (seen_pole_dominated) {
      double a = prev_log_t, b = log_t;
      double ga = prev_gap, gb = gap;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        const double gm = log_gap(f, r, std::exp(m), cfg);
        if (std::abs(gm) <= kLogTolerance) return std::exp(m);
        if (gm < 0.0) {
          a = m;
          ga = gm;
        } else {
          b = m;
          gb = gm;
        }
        if (b - a <= 1e-15 * std::abs(b)) break;
      }
      // The bracket has collapsed to adjacent doubles; take the better end.
      return std::exp(std::abs(ga) < std::abs(gb) ? a : b);
    }
    prev_log_t = log_t;
    prev_gap = gap;
  }
  fail(ErrorKind::validation, "no crossover between pole term and background in the scan range",
       "crossover_time");
}

DeviationReport deviation_report(const FormFactor& f, const Resonance& r, const TimeGrid& grid,
                                 const QuadratureConfig& cfg) {
  cfg.validate();
  DeviationReport rep{
      {grid.samples().begin(), grid.samples().end()},
      evaluate_series(f, r, grid.samples(), AmplitudeModel::halfline(Strategy::auto_select), cfg),
      evaluate_series(f, r, grid.samples(), AmplitudeModel::fullline(), cfg),
      evaluate_series(f, r, grid.samples(), AmplitudeModel::complex_delta(), cfg),
      {},
      {},
      std::nullopt,
      std::nullopt,
      {r.energy(), r.width(), f.kind(), cfg}};
  const Complex factor{0.0, -2.0 * kPi};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex h = rep.halfline.values[i];
    const Complex full = rep.fullline.values[i];
    rep.rel_dev.push_back(full == Complex{} ? INFINITY : std::abs(h - full) / std::abs(full));
    const Complex d = factor * rep.delta.values[i];
    rep.ratio_to_delta.push_back(d == Complex{} ? Complex{NAN, NAN} : h / d);
  }

  if (grid.spacing() == Spacing::logarithmic) {
    const double cut = grid.stop() / 10.0;
    std::size_t first = grid.size();
    while (first > 0 && grid[first - 1] >= cut) --first;
    if (grid.size() - first >= kMinTailWindow) {
      std::vector<double> mags;
      mags.reserve(grid.size());
      bool usable = true;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i < first) {
          mags.push_back(1.0);
          continue;
        }
        const double b = std::abs(decompose(f, r, grid[i], cfg).background);
        usable = usable && b > 0.0 && std::isfinite(b);
        mags.push_back(b);
      }
      if (usable) rep.tail_exponent = tail_exponent(grid.samples(), mags, first, grid.size());
    }
  }
  try {
    rep.crossover_time = crossover_time(f, r, cfg);
  } catch (const EngineError& e) {
    if (e.kind() != ErrorKind::validation) throw;
  }
  return rep;
}

}  // namespace resdecay
