#include "resdecay/config.hpp"

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace resdecay {

namespace {

void reject_unknown(const Json& obj, std::string_view where, std::initializer_list<std::string_view> known) {
  if (!obj.is_object()) fail(ErrorKind::validation, std::string(where) + " must be a JSON object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || item.key() == k;
    if (!ok) fail(ErrorKind::validation, "unknown key '" + item.key() + "' in " + std::string(where));
  }
}

const Json& required(const Json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key)) fail(ErrorKind::validation, std::string(where) + " is missing '" + key + "'");
  return obj.at(key);
}

double number(const Json& j, std::string_view what) {
  if (!j.is_number()) fail(ErrorKind::validation, std::string(what) + " must be a number");
  return require_finite(j.get<double>(), what);
}

long integer(const Json& j, std::string_view what) {
  if (!j.is_number_integer()) fail(ErrorKind::validation, std::string(what) + " must be an integer");
  return j.get<long>();
}

std::string text(const Json& j, std::string_view what) {
  if (!j.is_string()) fail(ErrorKind::validation, std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<Complex> complex_list(const Json& j, std::string_view what) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::validation, std::string(what) + " must be a non-empty array");
  std::vector<Complex> out;
  for (const auto& x : j) out.push_back(complex_from_json(x, what));
  return out;
}

Json complex_to_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return Json::array({z.real(), z.imag()});
}

Json complex_list_to_json(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (Complex z : v) out.push_back(complex_to_json(z));
  return out;
}

AmplitudeModel model_from_json(const Json& j) {
  if (j.is_string()) {
    switch (model_from_string(j.get<std::string>())) {
      case Model::bw_halfline: return AmplitudeModel::halfline(Strategy::auto_select);
      case Model::bw_fullline: return AmplitudeModel::fullline();
      case Model::complex_delta: return AmplitudeModel::complex_delta();
      case Model::background: break;
    }
    fail(ErrorKind::validation, "model 'background' is not a series model; use compare");
  }
  reject_unknown(j, "models[]", {"model", "strategy"});
  const Model tag = model_from_string(text(required(j, "model", "models[]"), "models[].model"));
  if (tag != Model::bw_halfline) {
    if (j.contains("strategy")) fail(ErrorKind::validation, "strategy is only meaningful for bw_halfline");
    return model_from_json(j.at("model"));
  }
  const Strategy s = j.contains("strategy") ? strategy_from_string(text(j.at("strategy"), "strategy"))
                                            : Strategy::auto_select;
  return AmplitudeModel::halfline(s);
}

std::string json_path(const std::string& key) { return "'" + key + "'"; }

void put_row(std::ostringstream& os, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) os << ',';
    os << c;
    first = false;
  }
  os << '\n';
}

Json series_columns(const AmplitudeSeries& s) {
  Json re = Json::array(), im = Json::array(), abs2 = Json::array(), err = Json::array();
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    re.push_back(s.values[i].real());
    im.push_back(s.values[i].imag());
    abs2.push_back(std::norm(s.values[i]));
    err.push_back(s.errors.empty() ? 0.0 : s.errors[i]);
  }
  return {{"model", std::string(to_string(s.model))}, {"t", s.times}, {"re", re}, {"im", im}, {"abs2", abs2},
          {"est_error", err}};
}

}  // namespace

OutputFormat output_format_from_string(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  fail(ErrorKind::validation, "unknown output format '" + std::string(name) + "' (csv or json)");
}

Complex complex_from_json(const Json& j, std::string_view what) {
  if (j.is_number()) return {number(j, what), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], what), number(j[1], what)};
  fail(ErrorKind::validation, std::string(what) + " must be a number or [re, im]");
}

FormFactor form_factor_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::validation, "form_factor must be a JSON object");
  const std::string kind = text(required(j, "kind", "form_factor"), "form_factor.kind");
  if (kind == "constant") {
    reject_unknown(j, "form_factor", {"kind", "value"});
    return FormFactor::constant(complex_from_json(required(j, "value", "form_factor"), "form_factor.value"));
  }
  if (kind == "polynomial") {
    reject_unknown(j, "form_factor", {"kind", "coefficients"});
    return FormFactor::polynomial(complex_list(required(j, "coefficients", "form_factor"), "coefficients"));
  }
  if (kind == "rational") {
    reject_unknown(j, "form_factor", {"kind", "numerator", "denominator"});
    return FormFactor::rational(complex_list(required(j, "numerator", "form_factor"), "numerator"),
                                complex_list(required(j, "denominator", "form_factor"), "denominator"));
  }
  if (kind == "power_law") {
    reject_unknown(j, "form_factor", {"kind", "alpha"});
    return FormFactor::power_law(number(required(j, "alpha", "form_factor"), "alpha"));
  }
  if (kind == "exp_cutoff") {
    reject_unknown(j, "form_factor", {"kind", "scale"});
    return FormFactor::exp_cutoff(number(required(j, "scale", "form_factor"), "scale"));
  }
  if (kind == "product") {
    reject_unknown(j, "form_factor", {"kind", "factors"});
    const Json& fs = required(j, "factors", "form_factor");
    if (!fs.is_array() || fs.empty()) fail(ErrorKind::validation, "factors must be a non-empty array");
    std::vector<FormFactor> factors;
    for (const auto& x : fs) factors.push_back(form_factor_from_json(x));
    return FormFactor::product(std::move(factors));
  }
  fail(ErrorKind::validation, "unknown form factor kind '" + kind + "'");
}

Json form_factor_to_json(const FormFactor& f) {
  switch (f.kind()) {
    case FormFactor::Kind::constant:
      return {{"kind", "constant"}, {"value", complex_to_json(f.coefficients().at(0))}};
    case FormFactor::Kind::polynomial:
      return {{"kind", "polynomial"}, {"coefficients", complex_list_to_json(f.coefficients())}};
    case FormFactor::Kind::rational:
      return {{"kind", "rational"},
              {"numerator", complex_list_to_json(f.coefficients())},
              {"denominator", complex_list_to_json(f.denominator())}};
    case FormFactor::Kind::power_law: return {{"kind", "power_law"}, {"alpha", f.exponent()}};
    case FormFactor::Kind::exp_cutoff: return {{"kind", "exp_cutoff"}, {"scale", f.scale()}};
    case FormFactor::Kind::product: {
      Json fs = Json::array();
      for (const auto& g : f.factors()) fs.push_back(form_factor_to_json(g));
      return {{"kind", "product"}, {"factors", fs}};
    }
  }
  return {};
}

RunConfig parse_run_config(const Json& doc) {
  reject_unknown(doc, "config",
                 {"resonance", "form_factor", "time_grid", "models", "quadrature", "output", "taylor", "scully",
                  "tau_grid", "scan"});
  RunConfig cfg;
  if (doc.contains("resonance")) {
    const Json& r = doc.at("resonance");
    reject_unknown(r, "resonance", {"E_R", "Gamma"});
    cfg.resonance = Resonance::make(number(required(r, "E_R", "resonance"), "E_R"),
                                    number(required(r, "Gamma", "resonance"), "Gamma"));
  }
  if (doc.contains("form_factor")) cfg.form_factor = form_factor_from_json(doc.at("form_factor"));
  if (doc.contains("time_grid")) {
    const Json& g = doc.at("time_grid");
    reject_unknown(g, "time_grid", {"start", "stop", "points", "spacing"});
    const long points = integer(required(g, "points", "time_grid"), "time_grid.points");
    if (points < 2) fail(ErrorKind::validation, "time_grid.points must be >= 2");
    const Spacing spacing =
        g.contains("spacing") ? spacing_from_string(text(g.at("spacing"), "spacing")) : Spacing::linear;
    cfg.time_grid = TimeGrid::make(number(required(g, "start", "time_grid"), "time_grid.start"),
                                   number(required(g, "stop", "time_grid"), "time_grid.stop"),
                                   static_cast<std::size_t>(points), spacing);
  }
  if (doc.contains("models")) {
    const Json& m = doc.at("models");
    if (!m.is_array() || m.empty()) fail(ErrorKind::validation, "models must be a non-empty array");
    for (const auto& x : m) cfg.models.push_back(model_from_json(x));
  } else {
    cfg.models = {AmplitudeModel::halfline(Strategy::auto_select), AmplitudeModel::fullline(),
                  AmplitudeModel::complex_delta()};
  }
  if (doc.contains("quadrature")) {
    const Json& q = doc.at("quadrature");
    reject_unknown(q, "quadrature", {"rel_tol", "abs_tol", "max_depth", "max_evals"});
    if (q.contains("rel_tol")) cfg.quadrature.rel_tol = number(q.at("rel_tol"), "rel_tol");
    if (q.contains("abs_tol")) cfg.quadrature.abs_tol = number(q.at("abs_tol"), "abs_tol");
    if (q.contains("max_depth")) cfg.quadrature.max_depth = static_cast<int>(integer(q.at("max_depth"), "max_depth"));
    if (q.contains("max_evals")) cfg.quadrature.max_evals = integer(q.at("max_evals"), "max_evals");
  }
  cfg.quadrature.validate();
  if (doc.contains("output")) {
    const Json& o = doc.at("output");
    reject_unknown(o, "output", {"format", "path"});
    if (o.contains("format")) cfg.output.format = output_format_from_string(text(o.at("format"), "output.format"));
    if (o.contains("path") && !o.at("path").is_null()) cfg.output.path = text(o.at("path"), "output.path");
  }
  if (doc.contains("taylor")) {
    const Json& t = doc.at("taylor");
    reject_unknown(t, "taylor", {"prefactor"});
    cfg.taylor_prefactor = t.contains("prefactor") ? complex_from_json(t.at("prefactor"), "taylor.prefactor")
                                                   : Complex{1.0, 0.0};
  }
  if (doc.contains("scully")) {
    const Json& s = doc.at("scully");
    reject_unknown(s, "scully", {"omega", "Gamma", "delta_r", "c", "prefactor"});
    ScullyParams p{number(required(s, "omega", "scully"), "omega"), number(required(s, "Gamma", "scully"), "Gamma"),
                   number(required(s, "delta_r", "scully"), "delta_r")};
    if (s.contains("c")) p.c = number(s.at("c"), "c");
    if (s.contains("prefactor")) p.prefactor = complex_from_json(s.at("prefactor"), "scully.prefactor");
    p.validate();
    cfg.scully = p;
  }
  if (doc.contains("tau_grid")) {
    const Json& g = doc.at("tau_grid");
    if (g.is_array()) {
      std::vector<double> s;
      for (const auto& x : g) s.push_back(number(x, "tau_grid[]"));
      cfg.tau_grid = RetardedGrid::from_samples(std::move(s));
    } else {
      reject_unknown(g, "tau_grid", {"start", "stop", "points"});
      const long points = integer(required(g, "points", "tau_grid"), "tau_grid.points");
      if (points < 2) fail(ErrorKind::validation, "tau_grid.points must be >= 2");
      cfg.tau_grid = RetardedGrid::make(number(required(g, "start", "tau_grid"), "tau_grid.start"),
                                        number(required(g, "stop", "tau_grid"), "tau_grid.stop"),
                                        static_cast<std::size_t>(points));
    }
  }
  if (doc.contains("scan")) {
    const Json& s = doc.at("scan");
    reject_unknown(s, "scan", {"param", "values"});
    ScanSpec spec{text(required(s, "param", "scan"), "scan.param"), {}};
    if (spec.param != "E_R" && spec.param != "Gamma") {
      fail(ErrorKind::validation, "scan.param must be E_R or Gamma");
    }
    const Json& v = required(s, "values", "scan");
    if (!v.is_array() || v.empty()) fail(ErrorKind::validation, "scan.values must be a non-empty array");
    for (const auto& x : v) {
      const double value = number(x, "scan.values[]");
      if (value <= 0.0) fail(ErrorKind::validation, "scan values must be > 0");
      spec.values.push_back(value);
    }
    cfg.scan = std::move(spec);
  }
  return cfg;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::validation, "cannot read config file " + json_path(path));
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::validation, std::string("malformed JSON: ") + e.what(), path);
  }
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string series_csv(std::span<const AmplitudeSeries> series) {
  std::ostringstream os;
  os << "t,model,re,im,abs2,est_error\n";
  if (series.empty()) return os.str();
  const std::size_t n = series.front().times.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& s : series) {
      put_row(os, {format_double(s.times[i]), std::string(to_string(s.model)), format_double(s.values[i].real()),
                   format_double(s.values[i].imag()), format_double(std::norm(s.values[i])),
                   format_double(s.errors.empty() ? 0.0 : s.errors[i])});
    }
  }
  return os.str();
}

Json series_json(std::span<const AmplitudeSeries> series) {
  Json out = Json::array();
  for (const auto& s : series) out.push_back(series_columns(s));
  return {{"series", out}};
}

std::string deviation_csv(const DeviationReport& rep) {
  std::ostringstream os;
  os << "t,model,re,im,abs2,est_error,rel_dev,ratio_re,ratio_im\n";
  const AmplitudeSeries& h = rep.halfline;
  for (std::size_t i = 0; i < rep.times.size(); ++i) {
    put_row(os, {format_double(rep.times[i]), std::string(to_string(h.model)), format_double(h.values[i].real()),
                 format_double(h.values[i].imag()), format_double(std::norm(h.values[i])),
                 format_double(h.errors[i]), format_double(rep.rel_dev[i]),
                 format_double(rep.ratio_to_delta[i].real()), format_double(rep.ratio_to_delta[i].imag())});
  }
  return os.str();
}

Json deviation_json(const DeviationReport& rep) {
  Json ratio_re = Json::array(), ratio_im = Json::array();
  for (Complex z : rep.ratio_to_delta) {
    ratio_re.push_back(z.real());
    ratio_im.push_back(z.imag());
  }
  const Json q = {{"rel_tol", rep.params.quadrature.rel_tol},
                   {"abs_tol", rep.params.quadrature.abs_tol},
                   {"max_depth", rep.params.quadrature.max_depth},
                   {"max_evals", rep.params.quadrature.max_evals}};
  Json out = {{"params",
               {{"E_R", rep.params.energy},
                {"Gamma", rep.params.width},
                {"form_factor", std::string(to_string(rep.params.form_factor))},
                {"quadrature", q}}},
              {"t", rep.times},
              {"halfline", series_columns(rep.halfline)},
              {"fullline", series_columns(rep.fullline)},
              {"complex_delta", series_columns(rep.delta)},
              {"rel_dev", rep.rel_dev},
              {"ratio_to_delta", {{"re", ratio_re}, {"im", ratio_im}}},
              {"tail_exponent", nullptr},
              {"crossover_time", nullptr}};
  if (rep.tail_exponent) out["tail_exponent"] = *rep.tail_exponent;
  if (rep.crossover_time) out["crossover_time"] = *rep.crossover_time;
  return out;
}

Json causality_json(const CausalityReport& rep) {
  return {{"tau", rep.tau},
          {"precursor_curve", rep.precursor_curve},
          {"lower_bound_curve", rep.lower_bound_curve},
          {"est_error", rep.est_error},
          {"max_precursor", rep.max_precursor},
          {"max_lower_bound", rep.max_lower_bound},
          {"wwa_precursor", rep.wwa_precursor},
          {"threshold", rep.threshold},
          {"hegerfeldt_flag", rep.hegerfeldt_flag}};
}

}  // namespace resdecay
