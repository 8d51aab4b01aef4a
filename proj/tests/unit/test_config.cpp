#include "helpers.hpp"
#include "resdecay/config.hpp"

using namespace resdecay;

namespace {

Json base() {
  return Json::parse(R"({
    "resonance": {"E_R": 1.0, "Gamma": 0.1},
    "form_factor": {"kind": "product", "factors": [
      {"kind": "polynomial", "coefficients": [1, [0, 2]]},
      {"kind": "exp_cutoff", "scale": 5}]},
    "time_grid": {"start": 1, "stop": 8, "points": 4, "spacing": "logarithmic"},
    "models": [{"model": "bw_halfline", "strategy": "rotation"}, "bw_fullline"],
    "quadrature": {"rel_tol": 1e-9},
    "output": {"format": "json", "path": "out.json"}
  })");
}

}  // namespace

TEST_CASE("full config parses") {
  const RunConfig cfg = parse_run_config(base());
  REQUIRE(cfg.resonance.has_value());
  CHECK(cfg.resonance->pole() == Complex{1.0, -0.05});
  CHECK(cfg.form_factor.kind() == FormFactor::Kind::product);
  CHECK(cfg.time_grid->size() == 4);
  REQUIRE(cfg.models.size() == 2);
  CHECK(cfg.models[0].strategy() == Strategy::rotation);
  CHECK(cfg.quadrature.rel_tol == 1e-9);
  CHECK(cfg.quadrature.abs_tol == 1e-14);
  CHECK(cfg.output.format == OutputFormat::json);
  CHECK(*cfg.output.path == "out.json");
}

TEST_CASE("defaults") {
  const RunConfig cfg = parse_run_config(Json::object());
  CHECK_FALSE(cfg.resonance.has_value());
  CHECK(cfg.models.size() == 3);
  CHECK(cfg.form_factor.kind() == FormFactor::Kind::constant);
}

TEST_CASE("invalid configs are rejected") {
  auto rejects = [](const char* pointer, const Json& value) {
    Json j = base();
    j[Json::json_pointer(pointer)] = value;
    CHECK_THROWS_KIND(parse_run_config(j), ErrorKind::validation);
  };
  rejects("/resonance/Gamma", 0.0);
  rejects("/resonance/width", 1.0);
  rejects("/extra", 1);
  rejects("/time_grid/points", 1);
  rejects("/time_grid/points", 2.5);
  rejects("/time_grid/start", 0.0);
  rejects("/models/0/model", "gamow");
  rejects("/models/1", Json{{"model", "bw_fullline"}, {"strategy", "rotation"}});
  rejects("/form_factor/kind", "gaussian");
  rejects("/form_factor/factors/0/coefficients", Json::array());
  rejects("/quadrature/rel_tol", -1.0);
  rejects("/output/format", "xml");
  rejects("/resonance/E_R", "one");
}

TEST_CASE("form factor JSON round trip") {
  const FormFactor f = form_factor_from_json(base()["form_factor"]);
  const Json back = form_factor_to_json(f);
  const FormFactor g = form_factor_from_json(back);
  for (double e : {0.0, 0.5, 3.0}) CHECK(eval_real(f, e) == eval_real(g, e));
  const FormFactor r = form_factor_from_json(Json::parse(R"({"kind":"rational","numerator":[1],"denominator":[1,1]})"));
  CHECK(eval_real(r, 1.0) == Complex{0.5, 0.0});
  CHECK(eval_real(form_factor_from_json(Json::parse(R"({"kind":"power_law","alpha":0.5})")), 4.0) == Complex{2, 0});
}

TEST_CASE("case-study sections") {
  const RunConfig cfg = parse_run_config(Json::parse(R"({
    "scully": {"omega": 1, "Gamma": 0.01, "delta_r": 50, "prefactor": [0, 1]},
    "taylor": {},
    "tau_grid": [-3, -1, 2],
    "scan": {"param": "Gamma", "values": [0.1, 0.2]}
  })"));
  CHECK(cfg.scully->prefactor == Complex{0, 1});
  CHECK(cfg.scully->c == 1.0);
  CHECK(*cfg.taylor_prefactor == Complex{1, 0});
  CHECK(cfg.tau_grid->size() == 3);
  CHECK(cfg.scan->values.size() == 2);
  CHECK_THROWS_KIND(parse_run_config(Json::parse(R"({"tau_grid": [-1, 0, 1]})")), ErrorKind::validation);
  CHECK_THROWS_KIND(parse_run_config(Json::parse(R"({"scan": {"param": "c", "values": [1]}})")), ErrorKind::validation);
}

TEST_CASE("shortest round-trip numbers") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-300) == "-2.5e-300");
  const double x = 0.1 + 0.2;
  CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("series CSV layout") {
  const AmplitudeSeries a{Model::bw_halfline, {1.0, 2.0}, {{1, 2}, {3, 4}}, {0.5, 0.25}};
  const AmplitudeSeries b{Model::complex_delta, {1.0, 2.0}, {{0, 1}, {1, 0}}, {}};
  const AmplitudeSeries both[] = {a, b};
  CHECK(series_csv(both) ==
        "t,model,re,im,abs2,est_error\n"
        "1,bw_halfline,1,2,5,0.5\n"
        "1,complex_delta,0,1,1,0\n"
        "2,bw_halfline,3,4,25,0.25\n"
        "2,complex_delta,1,0,1,0\n");
}
