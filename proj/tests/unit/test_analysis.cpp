#include "helpers.hpp"
#include "resdecay/analysis.hpp"

using namespace resdecay;

namespace {

const QuadratureConfig kCfg;

double rel_dev_at(double ratio, double gamma_t) {
  const Resonance r = make_resonance(ratio, 1.0);
  const TimeGrid g = make_time_grid(gamma_t, 2.0 * gamma_t, 2, Spacing::linear);
  return deviation_report(FormFactor::constant(1.0), r, g, kCfg).rel_dev[0];
}

}  // namespace

TEST_CASE("tail exponent on exact power laws") {
  std::vector<double> t, m;
  for (int i = 0; i < 20; ++i) {
    t.push_back(std::pow(10.0, 1.0 + 0.1 * i));
    m.push_back(4.2 * std::pow(t.back(), -3.0));
  }
  CHECK(std::abs(tail_exponent(t, m, 0, 20) + 3.0) <= 1e-10);
  CHECK(std::abs(tail_exponent(t, m, 5, 13) + 3.0) <= 1e-10);
  CHECK_THROWS_KIND(tail_exponent(t, m, 0, 7), ErrorKind::validation);
  m[3] = 0.0;
  CHECK_THROWS_KIND(tail_exponent(t, m, 0, 20), ErrorKind::validation);
}

TEST_CASE("background tail exponents") {
  const Resonance r = make_resonance(1.0, 0.1);
  const TimeGrid g = make_time_grid(500.0, 5000.0, 16, Spacing::logarithmic);
  for (auto [f, slope, tol] : {std::tuple{FormFactor::constant(1.0), -1.0, 0.05},
                               std::tuple{FormFactor::polynomial({0, 1}), -2.0, 0.1}}) {
    std::vector<double> m;
    for (double t : g.samples()) m.push_back(std::abs(decompose(f, r, t, kCfg).background));
    CHECK(std::abs(tail_exponent(g.samples(), m, 0, m.size()) - slope) <= tol);
  }
}

TEST_CASE("deviation report") {
  const Resonance r = make_resonance(1.0, 0.05);
  const TimeGrid g = make_time_grid(1.0, 4000.0, 40, Spacing::logarithmic);
  const DeviationReport rep = deviation_report(FormFactor::constant(1.0), r, g, kCfg);
  REQUIRE(rep.rel_dev.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(rep.rel_dev[i] >= 0.0);
    CHECK(std::isfinite(rep.ratio_to_delta[i].real()));
    // ratio_to_delta is halfline / fullline because fullline == -2 pi i delta
    const Complex via_full = rep.halfline.values[i] / rep.fullline.values[i];
    CHECK(std::abs(rep.ratio_to_delta[i] - via_full) <= 1e-15 * std::abs(via_full));
  }
  REQUIRE(rep.tail_exponent.has_value());
  CHECK(std::abs(*rep.tail_exponent + 1.0) < 0.05);
  REQUIRE(rep.crossover_time.has_value());
  CHECK(rep.params.energy == 1.0);

  const DeviationReport lin = deviation_report(FormFactor::constant(1.0), r, make_time_grid(1, 2, 3, Spacing::linear), kCfg);
  CHECK_FALSE(lin.tail_exponent.has_value());
}

TEST_CASE("deviation trends") {
  CHECK(rel_dev_at(200, 1) < rel_dev_at(2, 1));
  CHECK(rel_dev_at(10, 60) >= 1.0);
  const Resonance r = make_resonance(1000.0, 1.0);
  const DeviationReport rep = deviation_report(FormFactor::constant(1.0), r, make_time_grid(1, 2, 2, Spacing::linear), kCfg);
  CHECK(std::abs(rep.ratio_to_delta[0] - 1.0) < 1e-2);
}

TEST_CASE("crossover time") {
  const Resonance r = make_resonance(10.0, 1.0);
  const double tc = crossover_time(FormFactor::constant(1.0), r, kCfg);
  CHECK(std::abs(tc - 13.486176005328034) <= 1e-6 * tc);  // mpmath root
  const Decomposition d = decompose(FormFactor::constant(1.0), r, tc, kCfg);
  CHECK(std::abs(std::abs(d.background) - std::abs(d.pole_term)) / std::abs(d.pole_term) <= 1e-6);
  const Decomposition late = decompose(FormFactor::constant(1.0), r, 2 * tc, kCfg);
  const Decomposition early = decompose(FormFactor::constant(1.0), r, tc / 2, kCfg);
  CHECK(std::abs(late.background) > std::abs(late.pole_term));
  CHECK(std::abs(early.background) < std::abs(early.pole_term));

  double prev = 0.0;
  for (double ratio : {10.0, 100.0, 1000.0}) {
    const double t = crossover_time(FormFactor::constant(1.0), make_resonance(ratio, 1.0), kCfg);
    CHECK(t > prev);
    prev = t;
  }
  CHECK_THROWS_KIND(crossover_time(FormFactor::constant(0.0), r, kCfg), ErrorKind::validation);
}
