#include "resdecay/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "resdecay/acceptance.hpp"
#include "resdecay/config.hpp"
#include "resdecay/parallel.hpp"

namespace resdecay::cli {

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string format;
  unsigned threads = 1;
  std::optional<double> er;
  std::optional<double> gamma;
  std::optional<double> tmin;
  std::optional<double> tmax;
  std::optional<long> points;
  std::string which;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "JSON run configuration");
  sub->add_option("--out", o.out, "Write results to this file instead of stdout");
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--threads", o.threads, "Worker threads for scan (0 = all cores)");
  sub->add_option("--er", o.er, "Override resonance energy E_R (omega for scully)");
  sub->add_option("--gamma", o.gamma, "Override width Gamma");
  sub->add_option("--tmin", o.tmin, "Override first grid time");
  sub->add_option("--tmax", o.tmax, "Override last grid time");
  sub->add_option("--points", o.points, "Override number of grid points");
}

Json load_document(const Options& o, bool retarded, bool scully) {
  Json doc = o.config.empty() ? Json::object() : load_json_file(o.config);
  if (!doc.is_object()) fail(ErrorKind::validation, "config must be a JSON object");
  const char* section = scully ? "scully" : "resonance";
  if (o.er) doc[section][scully ? "omega" : "E_R"] = *o.er;
  if (o.gamma) doc[section]["Gamma"] = *o.gamma;
  const char* grid = retarded ? "tau_grid" : "time_grid";
  if (o.tmin) doc[grid]["start"] = *o.tmin;
  if (o.tmax) doc[grid]["stop"] = *o.tmax;
  if (o.points) doc[grid]["points"] = *o.points;
  return doc;
}

template <class T>
const T& need(const std::optional<T>& v, const char* what) {
  if (!v) fail(ErrorKind::validation, std::string("configuration needs '") + what + "'");
  return *v;
}

OutputFormat pick_format(const Options& o, const RunConfig& cfg, OutputFormat fallback) {
  if (!o.format.empty()) return output_format_from_string(o.format);
  return cfg.output.format.value_or(fallback);
}

std::optional<std::string> pick_path(const Options& o, const RunConfig& cfg) {
  if (!o.out.empty()) return o.out;
  return cfg.output.path;
}

std::vector<AmplitudeSeries> all_series(const RunConfig& cfg, const Resonance& r, const TimeGrid& grid) {
  std::vector<AmplitudeSeries> out;
  for (const auto& m : cfg.models) out.push_back(evaluate_series(cfg.form_factor, r, grid.samples(), m, cfg.quadrature));
  return out;
}

std::string profile_csv(const AmplitudeSeries& exact, const AmplitudeSeries& wwa) {
  std::ostringstream os;
  os << "tau,mode,re,im,abs2,est_error\n";
  for (std::size_t i = 0; i < exact.times.size(); ++i) {
    for (const auto* s : {&exact, &wwa}) {
      os << format_double(s->times[i]) << ',' << (s == &exact ? "exact" : "wwa") << ','
         << format_double(s->values[i].real()) << ',' << format_double(s->values[i].imag()) << ','
         << format_double(std::norm(s->values[i])) << ',' << format_double(s->errors[i]) << '\n';
    }
  }
  return os.str();
}

Json profile_json(const char* name, const AmplitudeSeries& exact, const AmplitudeSeries& wwa,
                  const std::optional<CausalityReport>& rep) {
  auto columns = [](const AmplitudeSeries& s) {
    Json re = Json::array(), im = Json::array(), abs2 = Json::array();
    for (Complex z : s.values) {
      re.push_back(z.real());
      im.push_back(z.imag());
      abs2.push_back(std::norm(z));
    }
    return Json{{"re", re}, {"im", im}, {"abs2", abs2}, {"est_error", s.errors}};
  };
  return {{"case", name},
          {"tau", exact.times},
          {"exact", columns(exact)},
          {"wwa", columns(wwa)},
          {"causality", rep ? causality_json(*rep) : Json(nullptr)}};
}

struct Rendered {
  std::string text;
  std::optional<std::string> path;
};

bool has_negative(const RetardedGrid& g) { return g.samples().front() < 0.0; }

Rendered cmd_amp(const Options& o) {
  const RunConfig cfg = parse_run_config(load_document(o, false, false));
  const auto series = all_series(cfg, need(cfg.resonance, "resonance"), need(cfg.time_grid, "time_grid"));
  if (pick_format(o, cfg, OutputFormat::csv) == OutputFormat::json) {
    return {series_json(series).dump(2) + "\n", pick_path(o, cfg)};
  }
  return {series_csv(series), pick_path(o, cfg)};
}

Rendered cmd_compare(const Options& o) {
  const RunConfig cfg = parse_run_config(load_document(o, false, false));
  const DeviationReport rep = deviation_report(cfg.form_factor, need(cfg.resonance, "resonance"),
                                               need(cfg.time_grid, "time_grid"), cfg.quadrature);
  if (pick_format(o, cfg, OutputFormat::csv) == OutputFormat::json) {
    return {deviation_json(rep).dump(2) + "\n", pick_path(o, cfg)};
  }
  return {deviation_csv(rep), pick_path(o, cfg)};
}

Rendered cmd_casestudy(const Options& o) {
  const bool scully = o.which == "scully";
  const RunConfig cfg = parse_run_config(load_document(o, true, scully));
  const RetardedGrid& grid = need(cfg.tau_grid, "tau_grid");
  AmplitudeSeries exact, wwa;
  std::optional<CausalityReport> rep;
  if (scully) {
    const ScullyParams& p = need(cfg.scully, "scully");
    exact = scully_profile(p, grid, CaseMode::exact, cfg.quadrature);
    wwa = scully_profile(p, grid, CaseMode::wwa, cfg.quadrature);
    if (has_negative(grid)) rep = causality_scan(p, grid, cfg.quadrature);
  } else {
    const TaylorParams p{need(cfg.resonance, "resonance"), cfg.taylor_prefactor.value_or(Complex{1.0, 0.0}), grid};
    exact = taylor_profile(p, CaseMode::exact, cfg.quadrature);
    wwa = taylor_profile(p, CaseMode::wwa, cfg.quadrature);
    if (has_negative(grid)) rep = taylor_causality(p, cfg.quadrature);
  }
  if (pick_format(o, cfg, OutputFormat::json) == OutputFormat::csv) return {profile_csv(exact, wwa), pick_path(o, cfg)};
  return {profile_json(scully ? "scully" : "taylor", exact, wwa, rep).dump(2) + "\n", pick_path(o, cfg)};
}

Rendered cmd_scan(const Options& o) {
  const RunConfig cfg = parse_run_config(load_document(o, false, false));
  const ScanSpec& scan = need(cfg.scan, "scan");
  const Resonance& base = need(cfg.resonance, "resonance");
  const TimeGrid& grid = need(cfg.time_grid, "time_grid");
  std::vector<std::vector<AmplitudeSeries>> runs(scan.values.size());
  const unsigned threads = o.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.threads;
  parallel_for(scan.values.size(), threads, [&](std::size_t i) {
    const double v = scan.values[i];
    const Resonance r = scan.param == "E_R" ? Resonance::make(v, base.width()) : Resonance::make(base.energy(), v);
    runs[i] = all_series(cfg, r, grid);
  });
  if (pick_format(o, cfg, OutputFormat::csv) == OutputFormat::json) {
    Json list = Json::array();
    for (std::size_t i = 0; i < runs.size(); ++i) {
      list.push_back({{"value", scan.values[i]}, {"series", series_json(runs[i])["series"]}});
    }
    return {Json{{"param", scan.param}, {"runs", list}}.dump(2) + "\n", pick_path(o, cfg)};
  }
  std::ostringstream os;
  os << "param,value,t,model,re,im,abs2,est_error\n";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const std::string body = series_csv(runs[i]);
    std::istringstream lines(body);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) os << scan.param << ',' << format_double(scan.values[i]) << ',' << line << '\n';
  }
  return {os.str(), pick_path(o, cfg)};
}

void emit(const std::string& text, const std::optional<std::string>& path, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) fail(ErrorKind::validation, "cannot open output file '" + *path + "'");
  f << text;
  if (!f.flush()) fail(ErrorKind::validation, "failed writing output file '" + *path + "'");
}

void report_error(std::ostream& err, std::string_view kind, const std::string& message, const std::string& context) {
  err << Json{{"error", kind}, {"message", message}, {"context", context}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resonance decay amplitudes on the half-line and the whole line", "resdecay"};
  app.require_subcommand(1);
  Options o;
  auto* amp = app.add_subcommand("amp", "Amplitude series for each requested model");
  auto* compare = app.add_subcommand("compare", "Deviation of the half-line amplitude from the other models");
  auto* casestudy = app.add_subcommand("casestudy", "Wavefront (taylor) or correlation (scully) profiles");
  casestudy->add_option("which", o.which, "taylor or scully")->required()->check(CLI::IsMember({"taylor", "scully"}));
  auto* scan = app.add_subcommand("scan", "Sweep E_R or Gamma and emit a long-format table");
  auto* selftest = app.add_subcommand("selftest", "Run the built-in acceptance checks");
  for (auto* sub : {amp, compare, casestudy, scan}) add_common(sub, o);
  selftest->add_option("--threads", o.threads, "Worker threads for the determinism check");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "validation", e.what(), "arguments");
    return kExitInvalid;
  }

  try {
    if (*selftest) {
      const unsigned threads = o.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.threads;
      bool all = true;
      for (int id = 1; id <= kEngineCriteria; ++id) {
        const CriterionResult r = run_criterion(id, std::max(threads, 2u));
        out << summary_line(r) << '\n' << std::flush;
        all = all && r.passed;
      }
      out << (all ? "selftest PASS" : "selftest FAIL") << '\n';
      return all ? kExitOk : kExitNumerical;
    }
    Rendered r;
    if (*amp) r = cmd_amp(o);
    if (*compare) r = cmd_compare(o);
    if (*casestudy) r = cmd_casestudy(o);
    if (*scan) r = cmd_scan(o);
    emit(r.text, r.path, out);
    return kExitOk;
  } catch (const EngineError& e) {
    report_error(err, to_string(e.kind()), e.what(), e.context());
    return e.kind() == ErrorKind::quadrature_nonconvergence ? kExitNumerical : kExitInvalid;
  } catch (const Json::exception& e) {
    report_error(err, "validation", e.what(), "config");
    return kExitInvalid;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what(), "");
    return kExitNumerical;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace resdecay::cli
