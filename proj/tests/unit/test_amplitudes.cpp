#include <random>

#include "helpers.hpp"
#include "resdecay/amplitudes.hpp"
#include "resdecay/specfun.hpp"

using namespace resdecay;
using testing::rel_diff;

namespace {

const QuadratureConfig kCfg;

double deviation(double ratio, double gamma_t) {
  const Resonance r = make_resonance(ratio, 1.0);
  const FormFactor one = FormFactor::constant(1.0);
  const Complex h = bw_halfline_amp(one, r, gamma_t, kCfg).value;
  return std::abs(h / bw_fullline_amp(one, r, gamma_t) - 1.0);
}

}  // namespace

TEST_CASE("complex delta") {
  const Complex v = complex_delta_amp(FormFactor::constant(1.0), make_resonance(1.0, 2.0), 1.0);
  CHECK(std::abs(v) == doctest::Approx(0.3678794412).epsilon(1e-10));
  CHECK(rel_diff(v, std::exp(Complex{-1.0, -1.0})) <= 1e-15);
  const Resonance r = make_resonance(3.0, 0.8);
  const Complex p = complex_delta_amp(FormFactor::polynomial({0, 0, 1}), r, 1.0) / std::exp(Complex{-0.4, -3.0});
  CHECK(rel_diff(p, {8.84, -2.4}) <= 1e-14);
  CHECK_THROWS_KIND(complex_delta_amp(FormFactor::constant(1.0), r, -1.0), ErrorKind::domain);
}

TEST_CASE("full line") {
  const Resonance r = make_resonance(1.0, 0.1);
  CHECK(std::abs(bw_fullline_amp(FormFactor::constant(1.0), r, 20.0)) == doctest::Approx(2 * kPi * std::exp(-1.0)));
  CHECK(std::abs(2 * kPi * std::exp(-1.0) - 2.3114) < 1e-4);
  CHECK_THROWS_KIND(bw_fullline_amp(FormFactor::constant(1.0), r, 0.0), ErrorKind::domain);
  CHECK_THROWS_KIND(bw_fullline_amp(FormFactor::rational({1}, {2, -2, 1}), r, 1.0),
                    ErrorKind::inadmissible_form_factor);
}

TEST_CASE("property: residue identity holds to the last bit") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.05, 10.0);
  const FormFactor forms[] = {FormFactor::constant({0.3, -2.0}), FormFactor::polynomial({1, {0, 2}, 3}),
                              FormFactor::power_law(0.7), FormFactor::exp_cutoff(2.0),
                              FormFactor::rational({1, 1}, {4, 1}) * FormFactor::power_law(-0.3)};
  for (int i = 0; i < 1000; ++i) {
    const FormFactor& f = forms[i % 5];
    const Resonance r = make_resonance(u(rng), u(rng));
    const double t = u(rng);
    const Complex ratio_target = Complex{0, -2 * kPi} * complex_delta_amp(f, r, t);
    REQUIRE(testing::same_bits(bw_fullline_amp(f, r, t), ratio_target));
  }
}

TEST_CASE("half line against references") {
  // mpmath values (tests/oracles/generate.py)
  const Resonance r = make_resonance(1.0, 0.05);
  const IntegralResult k = bw_halfline_amp(FormFactor::constant(1.0), r, 5.0, kCfg);
  CHECK(std::abs(k.value - bw_halfline_kernel(r.pole(), 5.0)) <= k.est_error + 1e-15);

  struct Case {
    FormFactor f;
    Resonance r;
    double t;
    Complex expected;
  };
  const Case cases[] = {
      {FormFactor::polynomial({0, 0, 1}), make_resonance(3.0, 0.8), 2.0, {0.44487202636081718, -25.928049389683576}},
      {FormFactor::power_law(0.5), make_resonance(2.0, 0.5), 3.0, {0.98761815143343715, -4.059768760657454}},
      {FormFactor::exp_cutoff(5.0), make_resonance(1.0, 0.1), 10.0, {1.6739123697194596, 2.7339639845193498}},
      {FormFactor::rational({1}, {1, 1}), make_resonance(1.0, 0.2), 4.0, {1.4991586133621788, 1.6839202232434138}},
      {FormFactor::constant(1.0), make_resonance(1.0, 0.1), -2.0, {0.1584561273838358, -0.38844359933323819}},
  };
  for (const auto& c : cases) {
    for (Strategy s : {Strategy::rotation, Strategy::direct_oracle}) {
      CAPTURE(to_string(s));
      CAPTURE(c.t);
      CHECK(rel_diff(bw_halfline_amp(c.f, c.r, c.t, kCfg, s).value, c.expected) <= 1e-9);
    }
  }
  CHECK_THROWS_KIND(bw_halfline_amp(FormFactor::constant(1.0), r, 0.0, kCfg), ErrorKind::domain);
}

TEST_CASE("strategy selection") {
  const FormFactor bad = FormFactor::rational({1}, {2, -2, 1});
  const Resonance r = make_resonance(3.0, 0.5);
  CHECK_THROWS_KIND(bw_halfline_amp(bad, r, 1.0, kCfg, Strategy::rotation), ErrorKind::inadmissible_form_factor);
  const IntegralResult a = bw_halfline_amp(bad, r, 1.0, kCfg, Strategy::auto_select);
  const IntegralResult d = bw_halfline_amp(bad, r, 1.0, kCfg, Strategy::direct_oracle);
  CHECK(testing::same_bits(a.value, d.value));
  CHECK(strategy_from_string("auto") == Strategy::auto_select);
  CHECK(strategy_from_string("direct") == Strategy::direct_oracle);
  CHECK_THROWS_KIND(strategy_from_string("levin"), ErrorKind::validation);
  CHECK_FALSE(AmplitudeModel::fullline().strategy().has_value());
  CHECK(AmplitudeModel::halfline(Strategy::rotation).strategy() == Strategy::rotation);
}

TEST_CASE("narrow resonances approach the full-line value") {
  const double d2 = deviation(2, 1), d20 = deviation(20, 1), d200 = deviation(200, 1);
  CHECK(d200 < d20);
  CHECK(d20 < d2);
  CHECK(deviation(1000, 1) <= 1e-2);
}

TEST_CASE("deep tail is a power law") {
  const Resonance r = make_resonance(1.0, 0.1);
  const double t = 600.0;
  const Complex h = bw_halfline_amp(FormFactor::constant(1.0), r, t, kCfg).value;
  const double lead = std::abs(Complex{0, 1} / (r.pole() * t));
  CHECK(std::abs(std::abs(h) / lead - 1.0) <= 0.05);
  CHECK(std::abs(h) > 1e6 * std::abs(bw_fullline_amp(FormFactor::constant(1.0), r, t)));
  const Complex b = decompose(FormFactor::constant(1.0), r, t, kCfg).background;
  CHECK(rel_diff(b, {-8.0367156434354217e-5, 0.0016627776546890731}) <= 1e-9);
}

TEST_CASE("decomposition") {
  const FormFactor f = FormFactor::power_law(0.5);
  const Resonance r = make_resonance(2.0, 0.5);
  const Decomposition d = decompose(f, r, 3.0, kCfg);
  CHECK(testing::same_bits(d.pole_term, bw_fullline_amp(f, r, 3.0)));
  CHECK(testing::same_bits(d.total, d.pole_term + d.background));
  const IntegralResult o = bw_halfline_amp(f, r, 3.0, kCfg, Strategy::direct_oracle);
  CHECK(std::abs(o.value - d.total) <= o.est_error + d.est_error);

  auto share = [](double gamma) {
    const Resonance rr = make_resonance(1.0, gamma);
    const Decomposition dd = decompose(FormFactor::constant(1.0), rr, 1.0 / gamma, kCfg);
    return std::abs(dd.background) / std::abs(dd.pole_term);
  };
  CHECK(share(0.001) < share(0.1));
}

TEST_CASE("background is smooth in t") {
  const Resonance r = make_resonance(1.0, 0.2);
  const TimeGrid g = make_time_grid(0.5, 200.0, 60, Spacing::logarithmic);
  std::vector<double> logb;
  for (double t : g.samples()) logb.push_back(std::log(std::abs(decompose(FormFactor::constant(1.0), r, t, kCfg).background)));
  const double h = std::log(g[1] / g[0]);
  for (std::size_t i = 1; i + 1 < logb.size(); ++i) {
    REQUIRE(std::abs(logb[i + 1] - 2 * logb[i] + logb[i - 1]) / (h * h) < 10.0);
  }
}

TEST_CASE("property: conjugation symmetry") {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(0.2, 5.0);
  for (int i = 0; i < 20; ++i) {
    const FormFactor f = FormFactor::polynomial({u(rng), u(rng)}) * FormFactor::exp_cutoff(u(rng));
    const Resonance r = make_resonance(u(rng), u(rng));
    const double t = u(rng);
    const IntegralResult a = bw_halfline_amp(f, r, t, kCfg);
    const IntegralResult b = integrate_oscillatory_halfline(f, std::conj(r.pole()), t, kCfg);
    REQUIRE(std::abs(std::conj(a.value) - b.value) <= a.est_error + b.est_error);
  }
}

TEST_CASE("series evaluation") {
  const TimeGrid g = make_time_grid(0.5, 5.0, 10, Spacing::linear);
  const Resonance r = make_resonance(2.0, 0.3);
  const FormFactor f = FormFactor::constant(1.0);
  const AmplitudeSeries h = evaluate_series(f, r, g.samples(), AmplitudeModel::halfline(Strategy::rotation), kCfg);
  const AmplitudeSeries full = evaluate_series(f, r, g.samples(), AmplitudeModel::fullline(), kCfg);
  const AmplitudeSeries delta = evaluate_series(f, r, g.samples(), AmplitudeModel::complex_delta(), kCfg);
  REQUIRE(h.values.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(rel_diff(h.values[i], bw_halfline_kernel(r.pole(), g[i])) <= 1e-10);
    CHECK(testing::same_bits(full.values[i], Complex{0, -2 * kPi} * delta.values[i]));
    CHECK(h.errors[i] >= 0.0);
  }
}
