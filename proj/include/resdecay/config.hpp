#pragma once

// Run configuration as read from JSON, plus the serializers the CLI uses.
// Every object rejects keys it does not know.

#include <optional>
#include <string>

#include "json.hpp"

#include "resdecay/analysis.hpp"
#include "resdecay/casestudies.hpp"

namespace resdecay {

using Json = nlohmann::json;

enum class OutputFormat { csv, json };

OutputFormat output_format_from_string(std::string_view name);

struct OutputSpec {
  std::optional<OutputFormat> format;  // subcommand default when absent
  std::optional<std::string> path;     // stdout when absent
};

struct ScanSpec {
  std::string param;  // "E_R" or "Gamma"
  std::vector<double> values;
};

struct RunConfig {
  std::optional<Resonance> resonance;
  FormFactor form_factor = FormFactor::constant(1.0);
  std::optional<TimeGrid> time_grid;
  std::vector<AmplitudeModel> models;
  QuadratureConfig quadrature;
  OutputSpec output;
  std::optional<Complex> taylor_prefactor;
  std::optional<ScullyParams> scully;
  std::optional<RetardedGrid> tau_grid;
  std::optional<ScanSpec> scan;
};

/// Validates the whole document before returning. Any problem raises a
/// validation error naming the offending key.
RunConfig parse_run_config(const Json& doc);

/// Reads and parses a JSON file; unreadable or malformed input is a
/// validation error.
Json load_json_file(const std::string& path);

FormFactor form_factor_from_json(const Json& j);
Json form_factor_to_json(const FormFactor& f);

/// Number or [re, im].
Complex complex_from_json(const Json& j, std::string_view what);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double x);

std::string series_csv(std::span<const AmplitudeSeries> series);
Json series_json(std::span<const AmplitudeSeries> series);

std::string deviation_csv(const DeviationReport& rep);
Json deviation_json(const DeviationReport& rep);

Json causality_json(const CausalityReport& rep);

}  // namespace resdecay
