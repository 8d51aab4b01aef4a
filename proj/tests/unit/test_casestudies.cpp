#include "helpers.hpp"
#include "resdecay/casestudies.hpp"

using namespace resdecay;
using testing::rel_diff;

namespace {

const QuadratureConfig kCfg;

}  // namespace

TEST_CASE("retarded grids") {
  const RetardedGrid g = RetardedGrid::make(-2.5, 2.5, 6);
  CHECK(g.size() == 6);
  CHECK(g.samples()[0] == -2.5);
  CHECK(g.samples()[5] == 2.5);
  CHECK_THROWS_KIND(RetardedGrid::make(-1.0, 1.0, 3), ErrorKind::validation);  // contains 0
  CHECK_THROWS_KIND(RetardedGrid::from_samples({1.0, 1.0}), ErrorKind::validation);
  CHECK_THROWS_KIND(RetardedGrid::from_samples({NAN}), ErrorKind::validation);
}

TEST_CASE("Taylor wavefront") {
  const TaylorParams p{make_resonance(1.0, 0.1), {2.0, 1.0}, RetardedGrid::from_samples({-5.0, -1.0, 3.0, 9.0})};
  const AmplitudeSeries wwa = taylor_profile(p, CaseMode::wwa, kCfg);
  CHECK(testing::bitwise_zero(wwa.values[0]));
  CHECK(testing::bitwise_zero(wwa.values[1]));
  const double ratio = std::norm(wwa.values[3]) / std::norm(wwa.values[2]);
  CHECK(std::abs(ratio / std::exp(-0.1 * 6.0) - 1.0) <= 1e-13);

  const AmplitudeSeries exact = taylor_profile(p, CaseMode::exact, kCfg);
  // tau = -0.5 / Gamma, mpmath reference times the prefactor
  CHECK(rel_diff(exact.values[0], Complex{2.0, 1.0} * Complex{0.18918817198230076, -0.011993957395449656}) <= 1e-9);
  CHECK(std::abs(exact.values[0]) > 0.0);
}

TEST_CASE("Scully correlation") {
  const ScullyParams p{1.0, 0.1, 5.0};
  const ScullyAmplitude before = scully_g1(p, 3.0, kCfg);
  CHECK(testing::bitwise_zero(before.wwa));
  CHECK(testing::bitwise_zero(before.outgoing_residue));  // mu1 > 0 sweeps the upper quadrant
  CHECK(rel_diff(before.exact, {3.990473334610171, -0.92782075811363745}) <= 1e-9);
  const ScullyAmplitude after = scully_g1(p, 8.0, kCfg);
  CHECK(rel_diff(after.exact, {1.4154926385456847, 8.2058387025770673}) <= 1e-9);
  CHECK(std::abs(after.wwa) > 0.0);
  CHECK_THROWS_KIND(scully_g1(p, 0.0, kCfg), ErrorKind::domain);
  CHECK_THROWS_KIND(scully_g1(p, 5.0, kCfg), ErrorKind::domain);
  CHECK_THROWS_KIND(scully_g1(ScullyParams{1.0, -0.1, 5.0}, 1.0, kCfg), ErrorKind::validation);
}

TEST_CASE("Scully split matches a single real-axis integral") {
  // k^2 is not integrable, so the split is checked on the convergent
  // piece z^2 / (k - z) of k^2 / (k - z) = k + z + z^2 / (k - z).
  const ScullyParams p{1.0, 0.2, 4.0};
  const Complex z = p.pole();
  for (double t : {2.0, 9.0}) {
    const double mu1 = p.delta_r - t, mu2 = -(p.delta_r + t);
    const PhaseTerm terms[] = {{{1, 0}, mu1}, {{-1, 0}, mu2}};
    const FormFactor one = FormFactor::constant(1.0);
    const IntegralResult whole = integrate_oscillatory_halfline(one, z, terms, kCfg);
    const RotatedIntegral a = rotated_contour_background(one, z, mu1, kCfg);
    const RotatedIntegral b = rotated_contour_background(one, z, mu2, kCfg);
    CHECK(std::abs(whole.value - (a.total() - b.total())) <=
          whole.est_error + a.background.est_error + b.background.est_error);
  }
}

TEST_CASE("whole-line profile decays exponentially") {
  const ScullyParams p{1.0, 0.01, 1000.0, 1.0, {0.0, 3.0}};
  const RetardedGrid g = RetardedGrid::from_samples({-10.0, 100.0, 300.0});
  const AmplitudeSeries w = scully_profile(p, g, CaseMode::wwa, kCfg);
  CHECK(testing::bitwise_zero(w.values[0]));
  CHECK(std::abs(std::norm(w.values[2]) / std::norm(w.values[1]) / std::exp(-0.01 * 200.0) - 1.0) <= 1e-12);
  const AmplitudeSeries e = scully_profile(p, g, CaseMode::exact, kCfg);
  for (std::size_t i = 1; i < 3; ++i) CHECK(std::abs(e.values[i] / w.values[i] - 1.0) <= 0.05);
}

TEST_CASE("causality scan") {
  const ScullyParams p{1.0, 0.01, 50.0};
  const RetardedGrid g = RetardedGrid::from_samples({-40.0, -20.0, -5.0, 10.0});
  const CausalityReport rep = causality_scan(p, g, kCfg);
  CHECK(rep.tau.size() == 3);
  CHECK(rep.wwa_precursor == 0.0);
  CHECK(rep.max_precursor > 0.0);
  CHECK(rep.hegerfeldt_flag);
  for (double v : rep.precursor_curve) CHECK(v >= 0.0);
  CHECK_THROWS_KIND(causality_scan(p, RetardedGrid::from_samples({1.0}), kCfg), ErrorKind::validation);
  CHECK_THROWS_KIND(causality_scan(p, RetardedGrid::from_samples({-60.0}), kCfg), ErrorKind::domain);
}

TEST_CASE("lower-bound precursor shrinks as the line narrows") {
  // fixed Gamma tau = -0.025 and delta_r omega / c = 50
  std::vector<double> peak;
  for (double ratio : {10.0, 100.0, 1000.0}) {
    const double gamma = 1.0 / ratio;
    const ScullyParams p{1.0, gamma, 50.0};
    const CausalityReport rep = causality_scan(p, RetardedGrid::from_samples({-0.025 / gamma}), kCfg);
    const double scale = std::norm(2 * kPi * p.pole() * p.pole());
    peak.push_back(rep.max_lower_bound / scale);
  }
  CHECK(peak[1] < peak[0]);
  CHECK(peak[2] < peak[1]);
}

TEST_CASE("Taylor causality report") {
  const TaylorParams p{make_resonance(1.0, 0.1), {1.0, 0.0}, RetardedGrid::from_samples({-5.0, -2.0, 4.0})};
  const CausalityReport rep = taylor_causality(p, kCfg);
  CHECK(rep.tau.size() == 2);
  CHECK(rep.hegerfeldt_flag);
  CHECK(rep.lower_bound_curve == rep.precursor_curve);
}
